#include "tvb/laplace.hpp"

#include <cmath>

#include "tvb/errors.hpp"

namespace tvb {

static void require_precision(double alpha, double beta) {
    if (!(alpha > 0.0)) throw BadPrecision("alpha must be > 0");
    if (!(beta >= 0.0)) throw BadPrecision("beta must be >= 0");
}

double soft_threshold(double b, double alpha, double beta) {
    require_precision(alpha, beta);
    const double m = std::fabs(b) - beta / alpha;
    return m > 0.0 ? std::copysign(m, b) : 0.0;
}

double abs_variance(double mean, double alpha, double beta, SigmaSConvention conv) {
    if (mean == 0.0) return 0.0;
    const double a = std::fabs(mean);
    const double num = conv == SigmaSConvention::Derivation ? a : alpha * a;
    return num / (alpha * a + beta);
}

ScalarPosterior abs_posterior(double b, double alpha, double beta, SigmaSConvention conv) {
    ScalarPosterior p;
    p.mean = soft_threshold(b, alpha, beta);
    p.variance = abs_variance(p.mean, alpha, beta, conv);
    return p;
}

double expected_abs(const ScalarPosterior& p, double alpha, double beta) {
    const double a = std::fabs(p.mean);
    return a + 1.0 / (2.0 * (alpha * a + beta));
}

NuclearTraces nuclear_posterior_trace_terms(const Eigen::VectorXd& svals_col, double alpha,
                                            double beta, const Eigen::VectorXd& w_col) {
    if (svals_col.size() != w_col.size()) {
        throw DimMismatch("singular values and weights differ in length");
    }
    NuclearTraces t;
    for (Eigen::Index i = 0; i < svals_col.size(); ++i) {
        const double d = svals_col[i];
        if (d == 0.0) continue;
        const double prec = alpha * d + beta * w_col[i];
        t.cov_trace += d / prec;
        t.inv_prec_trace += 1.0 / prec;
    }
    return t;
}

}  // namespace tvb
