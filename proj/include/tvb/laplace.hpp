#pragma once
// Laplace approximations for the absolute value and the nuclear norm:
// posterior means, variance surrogates and expectation identities consumed
// by the hyperparameter updates.

#include <Eigen/Dense>

namespace tvb {

struct ScalarPosterior {
    double mean = 0.0;
    double variance = 0.0;
};

// How the variance of an absolute-value posterior is scaled.
//   Derivation: |m| / (alpha |m| + beta)
//   Algorithm1: alpha |m| / (alpha |m| + beta)
enum class SigmaSConvention { Derivation, Algorithm1 };

// argmin_x (alpha/2)(x - b)^2 + beta |x|
double soft_threshold(double b, double alpha, double beta);

ScalarPosterior abs_posterior(double b, double alpha, double beta,
                              SigmaSConvention conv = SigmaSConvention::Derivation);

// Variance of the posterior with mean m; 0 when m == 0.
double abs_variance(double mean, double alpha, double beta,
                    SigmaSConvention conv = SigmaSConvention::Derivation);

// E|x| = |m| + 1 / (2 (alpha |m| + beta)); equals 1/(2 beta) at m = 0.
double expected_abs(const ScalarPosterior& p, double alpha, double beta);

struct NuclearTraces {
    double cov_trace = 0.0;       // sum_i d_i / (alpha d_i + beta w_i)
    double inv_prec_trace = 0.0;  // sum_i 1 / (alpha d_i + beta w_i)
};

// Sums run over the nonzero entries of svals_col. w_col has the same length
// (all ones for the unweighted norm).
NuclearTraces nuclear_posterior_trace_terms(const Eigen::VectorXd& svals_col, double alpha,
                                            double beta, const Eigen::VectorXd& w_col);

}  // namespace tvb
