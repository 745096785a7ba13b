#include "tvb/metrics.hpp"

#include <cmath>
#include <vector>

#include "tvb/kernels.hpp"

namespace tvb {
namespace {

constexpr int kWin = 11;
constexpr double kWinSigma = 1.5;

std::vector<double> gaussian_window() {
    std::vector<double> g(kWin * kWin);
    const int c = kWin / 2;
    double total = 0.0;
    for (int j = 0; j < kWin; ++j) {
        for (int i = 0; i < kWin; ++i) {
            const double d2 = double((i - c) * (i - c) + (j - c) * (j - c));
            g[std::size_t(i + kWin * j)] = std::exp(-d2 / (2.0 * kWinSigma * kWinSigma));
            total += g[std::size_t(i + kWin * j)];
        }
    }
    for (double& v : g) v /= total;
    return g;
}

double ssim_plane(const double* a, const double* b, std::size_t h, std::size_t w, double c1,
                  double c2, const std::vector<double>& g) {
    const std::size_t oh = h - kWin + 1, ow = w - kWin + 1;
    double total = 0.0;
    for (std::size_t oj = 0; oj < ow; ++oj) {
        for (std::size_t oi = 0; oi < oh; ++oi) {
            double ma = 0.0, mb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
            for (int j = 0; j < kWin; ++j) {
                for (int i = 0; i < kWin; ++i) {
                    const double wt = g[std::size_t(i + kWin * j)];
                    const std::size_t idx = (oi + std::size_t(i)) + h * (oj + std::size_t(j));
                    const double x = a[idx], y = b[idx];
                    ma += wt * x;
                    mb += wt * y;
                    saa += wt * x * x;
                    sbb += wt * y * y;
                    sab += wt * x * y;
                }
            }
            const double va = saa - ma * ma;
            const double vb = sbb - mb * mb;
            const double cov = sab - ma * mb;
            total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
                     ((ma * ma + mb * mb + c1) * (va + vb + c2));
        }
    }
    return total / double(oh * ow);
}

}  // namespace

double psnr(const Tensor3& ref, const Tensor3& test, double peak) {
    require_same_dims(ref, test, "psnr");
    if (!(peak > 0.0)) throw BadConfig("psnr peak must be > 0");
    const double err = kernels::sum_sq_diff(ref.data(), test.data(), ref.size());
    if (err == 0.0) return kPsnrIdentical;
    return 10.0 * std::log10(peak * peak * double(ref.size()) / err);
}

double ssim(const Tensor3& ref, const Tensor3& test, double dynamic_range) {
    require_same_dims(ref, test, "ssim");
    if (ref.n1() < std::size_t(kWin) || ref.n2() < std::size_t(kWin)) {
        throw TooSmall("ssim needs planes of at least 11x11");
    }
    const double c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
    const double c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
    const std::vector<double> g = gaussian_window();
    double total = 0.0;
    for (std::size_t k = 0; k < ref.n3(); ++k) {
        total += ssim_plane(ref.slice_ptr(k), test.slice_ptr(k), ref.n1(), ref.n2(), c1, c2, g);
    }
    return total / double(ref.n3());
}

double rmse_step(const Tensor3& prev, const Tensor3& curr) {
    require_same_dims(prev, curr, "rmse_step");
    const double den = fro_norm(curr);
    if (den < 1e-15) return 0.0;
    return std::sqrt(kernels::sum_sq_diff(curr.data(), prev.data(), curr.size())) / den;
}

double rel_error(const Tensor3& test, const Tensor3& ref) {
    require_same_dims(test, ref, "rel_error");
    const double den = fro_norm(ref);
    if (den == 0.0) throw ZeroGroundTruth("reference tensor is zero");
    return std::sqrt(kernels::sum_sq_diff(test.data(), ref.data(), ref.size())) / den;
}

}  // namespace tvb
