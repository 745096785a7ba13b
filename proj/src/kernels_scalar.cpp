// Scalar reference kernels.

#include <cmath>

#include "tvb/kernels.hpp"

namespace tvb::kernels::scalar {
namespace {

void sub(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void soft_threshold(const double* r, double thr, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::fabs(r[i]) - thr;
        out[i] = m > 0.0 ? std::copysign(m, r[i]) : 0.0;
    }
}

double sum_sq(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sum_abs(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i]);
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

const Table& table() {
    static const Table t{Isa::Scalar, sub, soft_threshold, sum_sq, sum_abs, dot, sum_sq_diff};
    return t;
}

}  // namespace tvb::kernels::scalar
