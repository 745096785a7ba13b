#pragma once
// t-SVD, tubal rank, (weighted) tensor nuclear norm and the (weighted)
// tensor singular value thresholding operators.

#include <cstddef>

#include <Eigen/Dense>

#include "tvb/tensor.hpp"

namespace tvb {

// Per-Fourier-slice factors. Column k of svals holds the singular values of
// Fourier slice k in nonincreasing order; u_hat is n1 x r x n3 and v_hat is
// n2 x r x n3, both complex.
struct TSvdFactors {
    CTensor3 u_hat;
    Eigen::MatrixXd svals;
    CTensor3 v_hat;
    std::size_t r = 0;
    std::size_t n1 = 0, n2 = 0, n3 = 0;
};

// Nonnegative min(n1,n2) x n3 weights, nondecreasing down each column.
struct WeightMatrix {
    Eigen::MatrixXd w;
};

void validate_weights(const WeightMatrix& w, std::size_t n1, std::size_t n2, std::size_t n3);
WeightMatrix ones_weights(std::size_t n1, std::size_t n2, std::size_t n3);
WeightMatrix pstnn_weights(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t k_trunc);

TSvdFactors t_svd(const Tensor3& a);
// idft of u_hat * diag(svals) * v_hat^H, slice by slice.
Tensor3 reconstruct(const TSvdFactors& f);

std::size_t tubal_rank(const Tensor3& a, double tol);
double tnn(const Tensor3& a);
double weighted_tnn(const Tensor3& a, const WeightMatrix& w);
// (1/n3) sum_jk w_jk svals_jk over all n3 slices; w may be null (all ones).
double tnn_from_svals(const Eigen::MatrixXd& svals, const WeightMatrix* w);

struct SvtResult {
    Tensor3 l;
    TSvdFactors factors;
};

SvtResult t_svt(const Tensor3& a, double tau);
SvtResult weighted_t_svt(const Tensor3& a, double tau, const WeightMatrix& w);

}  // namespace tvb
