#pragma once
// Elementwise and reduction kernels over contiguous double arrays.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (AArch64) variant. The variant is
// selected once at startup from the CPU features; the TVB_ISA environment
// variable (scalar | avx2 | neon) overrides the choice.
//
// Elementwise kernels are bit-identical across variants. Reductions use a
// different summation order per variant and agree to rounding.

#include <cstddef>
#include <string>
#include <vector>

namespace tvb::kernels {

enum class Isa { Scalar, Avx2, Neon };

struct Table {
    Isa isa;
    // out[i] = a[i] - b[i]
    void (*sub)(const double* a, const double* b, double* out, std::size_t n);
    // out[i] = sign(r[i]) * max(|r[i]| - thr, 0), with +0 for shrunk entries
    void (*soft_threshold)(const double* r, double thr, double* out, std::size_t n);
    double (*sum_sq)(const double* a, std::size_t n);
    double (*sum_abs)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum (a[i] - b[i])^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
};

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
std::vector<Isa> supported_isas();
// Table for a specific variant; throws if the variant is unavailable.
const Table& table(Isa isa);
// Table used by the library.
const Table& active();
// Replaces the active variant (tests and benchmarks).
void set_active(Isa isa);

inline void sub(const double* a, const double* b, double* out, std::size_t n) {
    active().sub(a, b, out, n);
}
inline void soft_threshold(const double* r, double thr, double* out, std::size_t n) {
    active().soft_threshold(r, thr, out, n);
}
inline double sum_sq(const double* a, std::size_t n) { return active().sum_sq(a, n); }
inline double sum_abs(const double* a, std::size_t n) { return active().sum_abs(a, n); }
inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return active().sum_sq_diff(a, b, n);
}

namespace scalar {
const Table& table();
}
#if defined(TVB_HAVE_AVX2)
namespace avx2 {
const Table& table();
}
#endif
#if defined(TVB_HAVE_NEON)
namespace neon {
const Table& table();
}
#endif

}  // namespace tvb::kernels
