#include "tvb/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tvb/fourier.hpp"
#include "tvb/kernels.hpp"

namespace tvb {

static std::string dims_str(const Tensor3& t) {
    return std::to_string(t.n1()) + "x" + std::to_string(t.n2()) + "x" + std::to_string(t.n3());
}

Tensor3 tensor_from_values(std::size_t n1, std::size_t n2, std::size_t n3,
                           std::vector<double> values) {
    if (values.size() != n1 * n2 * n3) {
        throw DimMismatch("value count " + std::to_string(values.size()) +
                          " does not match dims");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw NonFinite("tensor entry is NaN or infinite");
    }
    Tensor3 t(n1, n2, n3);
    t.values() = std::move(values);
    return t;
}

void require_same_dims(const Tensor3& a, const Tensor3& b, const char* what) {
    if (!a.same_dims(b)) {
        throw DimMismatch(std::string(what) + ": " + dims_str(a) + " vs " + dims_str(b));
    }
}

Tensor3 operator+(const Tensor3& a, const Tensor3& b) {
    require_same_dims(a, b, "operator+");
    Tensor3 out(a.n1(), a.n2(), a.n3());
    for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    require_same_dims(a, b, "operator-");
    Tensor3 out(a.n1(), a.n2(), a.n3());
    kernels::sub(a.data(), b.data(), out.data(), a.size());
    return out;
}

Tensor3 operator*(double s, const Tensor3& a) {
    Tensor3 out(a.n1(), a.n2(), a.n3());
    for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = s * a.data()[i];
    return out;
}

double fro_norm(const Tensor3& t) { return std::sqrt(kernels::sum_sq(t.data(), t.size())); }

double l1_norm(const Tensor3& t) { return kernels::sum_abs(t.data(), t.size()); }

double inner(const Tensor3& a, const Tensor3& b) {
    require_same_dims(a, b, "inner");
    return kernels::dot(a.data(), b.data(), a.size());
}

double fro_norm(const CTensor3& t) {
    double s = 0.0;
    for (const cdouble& z : t.values()) s += std::norm(z);
    return std::sqrt(s);
}

CTensor3 dft_mode3(const Tensor3& t) { return expand_half(forward_half(t)); }

bool is_hermitian_mode3(const CTensor3& c, double tol) {
    const std::size_t n3 = c.n3();
    const std::size_t m = c.n1() * c.n2();
    for (std::size_t k = 0; k < n3; ++k) {
        const std::size_t mk = (n3 - k) % n3;
        if (mk < k) continue;
        const cdouble* a = c.slice_ptr(k);
        const cdouble* b = c.slice_ptr(mk);
        double scale = 0.0, diff = 0.0;
        for (std::size_t e = 0; e < m; ++e) {
            scale = std::max(scale, std::max(std::abs(a[e]), std::abs(b[e])));
            diff = std::max(diff, std::abs(a[e] - std::conj(b[e])));
        }
        if (diff > tol * scale) return false;
    }
    return true;
}

Tensor3 idft_mode3(const CTensor3& c, double sym_tol) {
    if (!is_hermitian_mode3(c, sym_tol)) {
        throw SymmetryViolation("spectrum is not conjugate-symmetric along mode 3");
    }
    return inverse_half(restrict_half(c));
}

Tensor3 t_product(const Tensor3& a, const Tensor3& b) {
    if (a.n2() != b.n1() || a.n3() != b.n3()) {
        throw DimMismatch("t_product: " + dims_str(a) + " * " + dims_str(b));
    }
    const HalfSpectrum fa = forward_half(a);
    const HalfSpectrum fb = forward_half(b);
    HalfSpectrum fc(a.n1(), b.n2(), a.n3());
    for (std::size_t k = 0; k < fc.half(); ++k) {
        fc.slice(k).noalias() = fa.slice(k) * fb.slice(k);
    }
    return inverse_half(fc);
}

Tensor3 conj_transpose(const Tensor3& a) {
    Tensor3 out(a.n2(), a.n1(), a.n3());
    const std::size_t n3 = a.n3();
    for (std::size_t k = 0; k < n3; ++k) {
        const std::size_t src = (n3 - k) % n3;
        out.slice(k) = a.slice(src).transpose();
    }
    return out;
}

Tensor3 identity_tensor(std::size_t n, std::size_t n3) {
    if (n == 0 || n3 == 0) throw DimMismatch("identity_tensor needs n, n3 >= 1");
    Tensor3 out(n, n, n3);
    for (std::size_t i = 0; i < n; ++i) out(i, i, 0) = 1.0;
    return out;
}

}  // namespace tvb
