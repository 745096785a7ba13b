#include "tvb/fourier.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <fftw3.h>

namespace tvb {
namespace {

// Plans are cached per (tube count, n3, direction) and created under a lock.
// Execution always runs on fftw_malloc'd buffers.
struct Buffer {
    void* p = nullptr;
    explicit Buffer(std::size_t bytes) : p(fftw_malloc(bytes == 0 ? 1 : bytes)) {
        if (!p) throw std::bad_alloc();
    }
    ~Buffer() { fftw_free(p); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
};

using PlanKey = std::tuple<std::size_t, std::size_t, bool>;

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }
    fftw_plan get(std::size_t tubes, std::size_t n3, bool forward) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = PlanKey{tubes, n3, forward};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        const std::size_t h = n3 / 2 + 1;
        Buffer re(sizeof(double) * tubes * n3);
        Buffer cx(sizeof(fftw_complex) * tubes * h);
        int n = int(n3);
        int stride = int(tubes);
        fftw_plan p;
        if (forward) {
            p = fftw_plan_many_dft_r2c(1, &n, int(tubes), static_cast<double*>(re.p), nullptr,
                                       stride, 1, static_cast<fftw_complex*>(cx.p), nullptr,
                                       stride, 1, FFTW_ESTIMATE);
        } else {
            p = fftw_plan_many_dft_c2r(1, &n, int(tubes), static_cast<fftw_complex*>(cx.p),
                                       nullptr, stride, 1, static_cast<double*>(re.p), nullptr,
                                       stride, 1, FFTW_ESTIMATE);
        }
        if (!p) throw NumericalFailure("FFTW could not create a plan");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

HalfSpectrum forward_half(const Tensor3& t) {
    const std::size_t tubes = t.n1() * t.n2();
    HalfSpectrum out(t.n1(), t.n2(), t.n3());
    if (t.size() == 0) return out;
    const std::size_t h = out.half();
    Buffer re(sizeof(double) * t.size());
    Buffer cx(sizeof(fftw_complex) * tubes * h);
    std::memcpy(re.p, t.data(), sizeof(double) * t.size());
    fftw_plan p = plan_cache().get(tubes, t.n3(), true);
    fftw_execute_dft_r2c(p, static_cast<double*>(re.p), static_cast<fftw_complex*>(cx.p));
    std::memcpy(out.values().data(), cx.p, sizeof(fftw_complex) * tubes * h);
    return out;
}

Tensor3 inverse_half(const HalfSpectrum& hs) {
    const std::size_t tubes = hs.n1() * hs.n2();
    Tensor3 out(hs.n1(), hs.n2(), hs.n3());
    if (out.size() == 0) return out;
    const std::size_t h = hs.half();
    Buffer re(sizeof(double) * out.size());
    Buffer cx(sizeof(fftw_complex) * tubes * h);
    std::memcpy(cx.p, hs.values().data(), sizeof(fftw_complex) * tubes * h);
    fftw_plan p = plan_cache().get(tubes, hs.n3(), false);
    fftw_execute_dft_c2r(p, static_cast<fftw_complex*>(cx.p), static_cast<double*>(re.p));
    const double scale = 1.0 / double(hs.n3());
    const double* src = static_cast<const double*>(re.p);
    double* dst = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) dst[i] = src[i] * scale;
    return out;
}

CTensor3 expand_half(const HalfSpectrum& hs) {
    CTensor3 out(hs.n1(), hs.n2(), hs.n3());
    const std::size_t m = hs.n1() * hs.n2();
    for (std::size_t k = 0; k < hs.half(); ++k) {
        std::memcpy(static_cast<void*>(out.slice_ptr(k)), hs.slice_ptr(k), sizeof(cdouble) * m);
    }
    for (std::size_t k = hs.half(); k < hs.n3(); ++k) {
        const cdouble* src = hs.slice_ptr(hs.n3() - k);
        cdouble* dst = out.slice_ptr(k);
        for (std::size_t e = 0; e < m; ++e) dst[e] = std::conj(src[e]);
    }
    return out;
}

HalfSpectrum restrict_half(const CTensor3& c) {
    HalfSpectrum out(c.n1(), c.n2(), c.n3());
    const std::size_t m = c.n1() * c.n2();
    for (std::size_t k = 0; k < out.half(); ++k) {
        std::memcpy(static_cast<void*>(out.slice_ptr(k)), c.slice_ptr(k), sizeof(cdouble) * m);
    }
    return out;
}

}  // namespace tvb
