#include "tvb/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "tvb/metrics.hpp"
#include "tvb/rng.hpp"

namespace tvb {

void validate_spec(const SynthSpec& s) {
    if (s.n1 == 0 || s.n2 == 0 || s.n3 == 0) throw BadSpec("dimensions must be positive");
    if (s.r > std::min(s.n1, s.n2)) throw BadSpec("rank exceeds min(n1, n2)");
    if (!(s.rho >= 0.0) || 2.0 * s.rho > 1.0) throw BadSpec("rho must lie in [0, 0.5]");
    if (!(s.sigma >= 0.0) || !std::isfinite(s.sigma)) throw BadSpec("sigma must be >= 0");
}

Instance make_instance(const SynthSpec& s) {
    validate_spec(s);
    Instance out;
    Tensor3 p(s.n1, s.r, s.n3), q(s.r, s.n2, s.n3);
    Rng rp(s.seed, Stream::FactorP), rq(s.seed, Stream::FactorQ);
    const double sp = 1.0 / std::sqrt(double(s.n1));
    const double sq = 1.0 / std::sqrt(double(s.n2));
    for (double& v : p.values()) v = sp * rp.normal();
    for (double& v : q.values()) v = sq * rq.normal();
    out.l0 = s.r == 0 ? Tensor3(s.n1, s.n2, s.n3) : t_product(p, q);

    out.s0 = Tensor3(s.n1, s.n2, s.n3);
    Rng rsup(s.seed, Stream::SparseSupport), rsgn(s.seed, Stream::SparseSign);
    for (double& v : out.s0.values()) {
        const double u = rsup.uniform();
        const double sign = rsgn.uniform() < 0.5 ? 1.0 : -1.0;
        v = u < 2.0 * s.rho ? sign : 0.0;
    }

    out.e0 = Tensor3(s.n1, s.n2, s.n3);
    Rng re(s.seed, Stream::Noise);
    for (double& v : out.e0.values()) v = s.sigma * re.normal();

    out.x = out.l0 + out.s0 + out.e0;
    return out;
}

RelErrors rel_errors(const Tensor3& l_hat, const Tensor3& s_hat, const Tensor3& l0,
                     const Tensor3& s0) {
    return RelErrors{rel_error(l_hat, l0), rel_error(s_hat, s0)};
}

Tensor3 make_lowrank_image(std::size_t h, std::size_t w, std::size_t rank, std::uint64_t seed) {
    if (h == 0 || w == 0 || rank == 0) throw BadSpec("image dims and rank must be positive");
    Rng rng(seed, Stream::ImageShape);
    Tensor3 img(h, w, 3);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t q = 0; q < rank; ++q) {
        const double fi = rng.uniform(0.5, 3.0), pi_ = rng.uniform(0.0, two_pi);
        const double fj = rng.uniform(0.5, 3.0), pj = rng.uniform(0.0, two_pi);
        const double amp = 1.0 / double(q + 1);
        double cw[3];
        for (double& c : cw) c = rng.uniform(0.5, 1.5);
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t j = 0; j < w; ++j) {
                const double bj = std::sin(two_pi * fj * double(j) / double(w) + pj);
                for (std::size_t i = 0; i < h; ++i) {
                    const double ai = std::sin(two_pi * fi * double(i) / double(h) + pi_);
                    img(i, j, k) += amp * cw[k] * ai * bj;
                }
            }
        }
    }
    const auto [mn, mx] = std::minmax_element(img.values().begin(), img.values().end());
    const double lo = *mn, span = std::max(*mx - *mn, 1e-12);
    for (double& v : img.values()) v = std::round(16.0 + 223.0 * (v - lo) / span);
    return img;
}

Tensor3 corrupt_sparse(const Tensor3& img, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0) || fraction > 1.0) throw BadSpec("fraction must lie in [0, 1]");
    const std::size_t pixels = img.n1() * img.n2();
    const std::size_t count = std::size_t(std::llround(fraction * double(pixels)));
    std::vector<std::size_t> idx(pixels);
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    Rng rs(seed, Stream::CorruptSupport), rv(seed, Stream::CorruptValue);
    for (std::size_t t = 0; t < count; ++t) {
        const std::size_t pick = t + std::size_t(rs.below(pixels - t));
        std::swap(idx[t], idx[pick]);
    }
    Tensor3 out = img;
    const std::size_t plane = pixels;
    for (std::size_t t = 0; t < count; ++t) {
        for (std::size_t k = 0; k < img.n3(); ++k) {
            out.data()[idx[t] + plane * k] = double(rv.below(256));
        }
    }
    return out;
}

Tensor3 corrupt_gaussian(const Tensor3& img, double variance, std::uint64_t seed) {
    if (!(variance >= 0.0)) throw BadSpec("variance must be >= 0");
    Rng rn(seed, Stream::CorruptNoise);
    const double sd = 255.0 * std::sqrt(variance);
    Tensor3 out = img;
    for (double& v : out.values()) v += sd * rn.normal();
    return out;
}

}  // namespace tvb
