// NEON kernels (AArch64, where Advanced SIMD is part of the base ISA).

#include <arm_neon.h>

#include <cmath>

#include "tvb/kernels.hpp"

namespace tvb::kernels::neon {
namespace {

void sub(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void soft_threshold(const double* r, double thr, double* out, std::size_t n) {
    const float64x2_t t = vdupq_n_f64(thr);
    const float64x2_t zero = vdupq_n_f64(0.0);
    const uint64x2_t sign = vdupq_n_u64(0x8000000000000000ULL);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(r + i);
        const float64x2_t m = vsubq_f64(vabsq_f64(x), t);
        const uint64x2_t keep = vcgtq_f64(m, zero);
        const uint64x2_t signed_m = vorrq_u64(vreinterpretq_u64_f64(m),
                                              vandq_u64(vreinterpretq_u64_f64(x), sign));
        vst1q_f64(out + i, vreinterpretq_f64_u64(vandq_u64(signed_m, keep)));
    }
    for (; i < n; ++i) {
        const double m = std::fabs(r[i]) - thr;
        out[i] = m > 0.0 ? std::copysign(m, r[i]) : 0.0;
    }
}

double sum_sq(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(a + i);
        acc = vaddq_f64(acc, vmulq_f64(x, x));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sum_abs(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(a + i)));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += std::fabs(a[i]);
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vaddq_f64(acc, vmulq_f64(d, d));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

const Table& table() {
    static const Table t{Isa::Neon, sub, soft_threshold, sum_sq, sum_abs, dot, sum_sq_diff};
    return t;
}

}  // namespace tvb::kernels::neon
