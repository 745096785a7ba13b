#include "tvb/solver.hpp"

#include <algorithm>
#include <cmath>

#include "tvb/kernels.hpp"
#include "tvb/metrics.hpp"

namespace tvb {
namespace {

const WeightMatrix* weights_ptr(const std::optional<WeightMatrix>& w) {
    return w ? &*w : nullptr;
}

std::string fmt_triple(const std::array<double, 3>& v) {
    return "(" + std::to_string(v[0]) + ", " + std::to_string(v[1]) + ", " +
           std::to_string(v[2]) + ")";
}

}  // namespace

void validate_config(const SolverConfig& cfg) {
    for (double t : cfg.theta_init) {
        if (!(t > 0.0) || !std::isfinite(t)) throw BadConfig("theta_init entries must be > 0");
    }
    if (cfg.max_iters < 1) throw BadConfig("max_iters must be >= 1");
    if (!(cfg.rmse_tol > 0.0)) throw BadConfig("rmse_tol must be > 0");
    if (cfg.method == Method::Weighted && !cfg.weights && !cfg.pstnn_k) {
        throw BadConfig("weighted method needs weights or a truncation K");
    }
}

std::optional<WeightMatrix> resolve_weights(const SolverConfig& cfg, std::size_t n1,
                                            std::size_t n2, std::size_t n3) {
    if (cfg.method == Method::Tnn) return std::nullopt;
    WeightMatrix w = cfg.weights ? *cfg.weights : pstnn_weights(n1, n2, n3, *cfg.pstnn_k);
    validate_weights(w, n1, n2, n3);
    return w;
}

std::array<double, 3> shape_parameters(std::size_t n) {
    const double nd = double(n);
    return {nd / 2.0 + 1.0, nd + 1.0, nd + 1.0};
}

PosteriorState init(const Tensor3& x, const SolverConfig& cfg) {
    validate_config(cfg);
    PosteriorState st;
    st.e_l = x;
    st.e_s = Tensor3(x.n1(), x.n2(), x.n3());
    st.sigma_s = Tensor3(x.n1(), x.n2(), x.n3());
    st.l_factors = t_svd(x);
    st.a_theta = shape_parameters(x.size());
    st.e_theta = cfg.theta_init;
    for (int i = 0; i < 3; ++i) st.b_theta[i] = st.a_theta[i] / st.e_theta[i];
    st.iter = 0;
    return st;
}

void update_s(PosteriorState& st, const Tensor3& x, const SolverConfig& cfg) {
    const double alpha = st.e_theta[0];
    const double beta = st.e_theta[1];
    const Tensor3 r = x - st.e_l;
    kernels::soft_threshold(r.data(), beta / alpha, st.e_s.data(), r.size());
    double* sig = st.sigma_s.data();
    const double* m = st.e_s.data();
    for (std::size_t i = 0; i < r.size(); ++i) {
        sig[i] = abs_variance(m[i], alpha, beta, cfg.sigma_s_convention);
    }
}

void update_l(PosteriorState& st, const Tensor3& x, const SolverConfig& cfg) {
    const double tau = st.e_theta[2] / st.e_theta[0];
    const std::optional<WeightMatrix> w = resolve_weights(cfg, x.n1(), x.n2(), x.n3());
    SvtResult res = w ? weighted_t_svt(x - st.e_s, tau, *w) : t_svt(x - st.e_s, tau);
    st.e_l = std::move(res.l);
    st.l_factors = std::move(res.factors);
}

void update_theta(PosteriorState& st, const Tensor3& x, const SolverConfig& cfg) {
    const std::size_t n2 = x.n2(), n3 = x.n3();
    const double t1 = st.e_theta[0], t2 = st.e_theta[1], t3 = st.e_theta[2];
    const std::optional<WeightMatrix> w = resolve_weights(cfg, x.n1(), n2, n3);
    const WeightMatrix ones = ones_weights(x.n1(), n2, n3);
    const WeightMatrix& wm = w ? *w : ones;

    double cov_sum = 0.0, inv_sum = 0.0;
    const TSvdFactors& f = st.l_factors;
    for (std::size_t k = 0; k < n3 && f.r > 0; ++k) {
        const Eigen::VectorXd d = f.svals.col(Eigen::Index(k));
        const Eigen::VectorXd wc = wm.w.col(Eigen::Index(k)).head(Eigen::Index(f.r));
        const NuclearTraces tr = nuclear_posterior_trace_terms(d, t1, t3, wc);
        cov_sum += tr.cov_trace;
        inv_sum += tr.inv_prec_trace;
    }
    const double cov_scale = cfg.trace_scale == TraceScale::Fourier
                                 ? double(n2) / 2.0
                                 : double(n2) / (2.0 * double(n3));

    double sigma_sum = 0.0, zero_term = 0.0;
    const double* es = st.e_s.data();
    const double* sg = st.sigma_s.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        sigma_sum += sg[i];
        zero_term += 1.0 / (t1 * std::fabs(es[i]) + t2);
    }

    const Tensor3 resid = x - st.e_l - st.e_s;
    const double b1 = 0.5 * fro_norm(resid) * fro_norm(resid) + cov_scale * cov_sum +
                      0.5 * sigma_sum;
    const double b2 = l1_norm(st.e_s) + 0.5 * zero_term;
    const double b3 = tnn_from_svals(f.svals, &wm) + double(n2) / 2.0 * inv_sum;

    const std::array<double, 3> b{b1, b2, b3};
    for (int i = 0; i < 3; ++i) {
        if (!(b[i] > 0.0) || !std::isfinite(b[i])) {
            throw DegenerateScale("scale parameters " + fmt_triple(b) +
                                  " are not all positive and finite");
        }
    }
    st.b_theta = b;
    for (int i = 0; i < 3; ++i) st.e_theta[i] = st.a_theta[i] / st.b_theta[i];
}

double objective_from_record(const TraceRecord& r, std::size_t n) {
    const double nd = double(n);
    return r.theta[0] / 2.0 * r.residual_fro * r.residual_fro + r.theta[1] * r.l1_of_s +
           r.theta[2] * r.tnn_of_l - nd / 2.0 * std::log(r.theta[0]) -
           nd * std::log(r.theta[1]) - nd * std::log(r.theta[2]);
}

static TraceRecord make_record(const PosteriorState& st, const Tensor3& x,
                               const SolverConfig& cfg) {
    const std::optional<WeightMatrix> w = resolve_weights(cfg, x.n1(), x.n2(), x.n3());
    TraceRecord r;
    r.iter = st.iter;
    r.theta = st.e_theta;
    r.tnn_of_l = tnn_from_svals(st.l_factors.svals, weights_ptr(w));
    r.l1_of_s = l1_norm(st.e_s);
    r.residual_fro = fro_norm(x - st.e_l - st.e_s);
    r.objective = objective_from_record(r, x.size());
    return r;
}

double objective(const PosteriorState& st, const Tensor3& x, const SolverConfig& cfg) {
    return make_record(st, x, cfg).objective;
}

RunResult run(const Tensor3& x, const SolverConfig& cfg) {
    validate_config(cfg);
    RunResult out;
    out.state = init(x, cfg);
    if (fro_norm(x) == 0.0) {
        out.l = out.state.e_l;
        out.s = out.state.e_s;
        out.converged = true;
        return out;
    }
    PosteriorState& st = out.state;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        const Tensor3 prev_l = st.e_l;
        const Tensor3 prev_s = st.e_s;
        update_s(st, x, cfg);
        update_l(st, x, cfg);
        try {
            update_theta(st, x, cfg);
        } catch (DegenerateScale& e) {
            e.trace = out.trace;
            throw;
        }
        st.iter = it;
        TraceRecord rec = make_record(st, x, cfg);
        rec.rmse_l = rmse_step(prev_l, st.e_l);
        rec.rmse_s = rmse_step(prev_s, st.e_s);
        out.iterations = it;
        if (cfg.trace_enabled) out.trace.push_back(rec);
        if (std::max(rec.rmse_l, rec.rmse_s) < cfg.rmse_tol) {
            out.converged = true;
            break;
        }
    }
    out.l = st.e_l;
    out.s = st.e_s;
    return out;
}

}  // namespace tvb
