#pragma once
// Dense third-order tensors and the t-product algebra.
//
// Storage is column-major within each frontal slice (i fastest, then j) and
// slices are contiguous (k slowest). Indices are 0-based in code.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tvb/errors.hpp"

namespace tvb {

using cdouble = std::complex<double>;
using MatMap = Eigen::Map<Eigen::MatrixXd>;
using ConstMatMap = Eigen::Map<const Eigen::MatrixXd>;
using CMatMap = Eigen::Map<Eigen::MatrixXcd>;
using ConstCMatMap = Eigen::Map<const Eigen::MatrixXcd>;

template <typename T>
class BasicTensor3 {
public:
    BasicTensor3() = default;
    BasicTensor3(std::size_t n1, std::size_t n2, std::size_t n3)
        : n1_(n1), n2_(n2), n3_(n3), v_(n1 * n2 * n3, T(0)) {}

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t n3() const { return n3_; }
    std::size_t size() const { return v_.size(); }
    bool same_dims(const BasicTensor3& o) const {
        return n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_;
    }

    T& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return v_[i + n1_ * (j + n2_ * k)];
    }
    const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return v_[i + n1_ * (j + n2_ * k)];
    }

    T* data() { return v_.data(); }
    const T* data() const { return v_.data(); }
    std::vector<T>& values() { return v_; }
    const std::vector<T>& values() const { return v_; }

    T* slice_ptr(std::size_t k) { return v_.data() + n1_ * n2_ * k; }
    const T* slice_ptr(std::size_t k) const { return v_.data() + n1_ * n2_ * k; }

    auto slice(std::size_t k) {
        return Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>>(
            slice_ptr(k), Eigen::Index(n1_), Eigen::Index(n2_));
    }
    auto slice(std::size_t k) const {
        return Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>>(
            slice_ptr(k), Eigen::Index(n1_), Eigen::Index(n2_));
    }

    bool operator==(const BasicTensor3& o) const { return same_dims(o) && v_ == o.v_; }

private:
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<T> v_;
};

using Tensor3 = BasicTensor3<double>;
using CTensor3 = BasicTensor3<cdouble>;

// Builds a tensor from external values; rejects non-finite entries.
Tensor3 tensor_from_values(std::size_t n1, std::size_t n2, std::size_t n3,
                           std::vector<double> values);

void require_same_dims(const Tensor3& a, const Tensor3& b, const char* what);

Tensor3 operator+(const Tensor3& a, const Tensor3& b);
Tensor3 operator-(const Tensor3& a, const Tensor3& b);
Tensor3 operator*(double s, const Tensor3& a);

double fro_norm(const Tensor3& t);
double l1_norm(const Tensor3& t);
double inner(const Tensor3& a, const Tensor3& b);
double fro_norm(const CTensor3& t);

// Mode-3 discrete Fourier transform: unnormalized forward, 1/n3 inverse.
CTensor3 dft_mode3(const Tensor3& t);
// Throws SymmetryViolation when the input is not the image of a real tensor.
Tensor3 idft_mode3(const CTensor3& c, double sym_tol = 1e-8);
bool is_hermitian_mode3(const CTensor3& c, double tol);

Tensor3 t_product(const Tensor3& a, const Tensor3& b);
Tensor3 conj_transpose(const Tensor3& a);
Tensor3 identity_tensor(std::size_t n, std::size_t n3);

}  // namespace tvb
