#pragma once
// Variational Bayesian tensor robust PCA: coordinate ascent over q(S), q(L)
// and the Gamma posteriors of the three precisions theta = (theta1, theta2,
// theta3) for noise, sparsity and low-rankness.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tvb/errors.hpp"
#include "tvb/laplace.hpp"
#include "tvb/tensor.hpp"
#include "tvb/tsvd.hpp"

namespace tvb {

enum class Method { Tnn, Weighted };

// Scale of the low-rank covariance trace in the theta1 update.
//   Fourier: the trace of the Fourier-domain covariance is mapped back with
//            Parseval, giving (n2 / 2) * sum_k cov_trace_k.
//   Literal: (n2 / (2 n3)) * sum_k cov_trace_k.
enum class TraceScale { Fourier, Literal };

struct SolverConfig {
    Method method = Method::Tnn;
    // Explicit weights for Method::Weighted; takes precedence over pstnn_k.
    std::optional<WeightMatrix> weights;
    // Partial-sum preset for Method::Weighted: zero weight on the K largest
    // singular values of every Fourier slice.
    std::optional<std::size_t> pstnn_k;
    std::array<double, 3> theta_init{1.0, 1.0, 1.0};
    int max_iters = 50;
    double rmse_tol = 1e-4;
    SigmaSConvention sigma_s_convention = SigmaSConvention::Derivation;
    TraceScale trace_scale = TraceScale::Fourier;
    bool trace_enabled = true;
};

void validate_config(const SolverConfig& cfg);
// Weight matrix used by the run, or nullopt for the plain norm.
std::optional<WeightMatrix> resolve_weights(const SolverConfig& cfg, std::size_t n1,
                                            std::size_t n2, std::size_t n3);

struct PosteriorState {
    Tensor3 e_l;
    Tensor3 e_s;
    Tensor3 sigma_s;
    TSvdFactors l_factors;
    std::array<double, 3> e_theta{};
    std::array<double, 3> a_theta{};
    std::array<double, 3> b_theta{};
    int iter = 0;
};

struct TraceRecord {
    int iter = 0;
    double objective = 0.0;
    double rmse_l = 0.0;
    double rmse_s = 0.0;
    std::array<double, 3> theta{};
    // Weighted norm when the run uses weights.
    double tnn_of_l = 0.0;
    double l1_of_s = 0.0;
    double residual_fro = 0.0;
};

class DegenerateScale : public Error {
public:
    explicit DegenerateScale(const std::string& what) : Error("DegenerateScale: " + what) {}
    std::vector<TraceRecord> trace;
};

struct RunResult {
    Tensor3 l;
    Tensor3 s;
    std::vector<TraceRecord> trace;
    PosteriorState state;
    int iterations = 0;
    bool converged = false;
};

std::array<double, 3> shape_parameters(std::size_t n);

PosteriorState init(const Tensor3& x, const SolverConfig& cfg);
void update_s(PosteriorState& st, const Tensor3& x, const SolverConfig& cfg);
void update_l(PosteriorState& st, const Tensor3& x, const SolverConfig& cfg);
// Throws DegenerateScale if a scale parameter is not positive and finite.
void update_theta(PosteriorState& st, const Tensor3& x, const SolverConfig& cfg);
double objective(const PosteriorState& st, const Tensor3& x, const SolverConfig& cfg);
// Objective from the stored trace fields and the tensor size.
double objective_from_record(const TraceRecord& r, std::size_t n);

RunResult run(const Tensor3& x, const SolverConfig& cfg);

}  // namespace tvb
