#pragma once
// Image and recovery quality metrics.

#include <limits>

#include "tvb/tensor.hpp"

namespace tvb {

// Returned by psnr for identical inputs.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

// 10 log10(peak^2 n / ||ref - test||_F^2).
double psnr(const Tensor3& ref, const Tensor3& test, double peak);

// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
// C1 = (0.01 R)^2 and C2 = (0.03 R)^2, over fully contained windows. Each
// frontal slice is one channel; the result is the mean over channels.
double ssim(const Tensor3& ref, const Tensor3& test, double dynamic_range);

// ||curr - prev||_F / ||curr||_F, or 0 when ||curr||_F < 1e-15.
double rmse_step(const Tensor3& prev, const Tensor3& curr);

// ||test - ref||_F / ||ref||_F; throws ZeroGroundTruth when ref is zero.
double rel_error(const Tensor3& test, const Tensor3& ref);

}  // namespace tvb
