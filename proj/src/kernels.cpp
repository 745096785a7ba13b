#include "tvb/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace tvb::kernels {

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(TVB_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(TVB_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Isa> supported_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (isa_supported(isa)) out.push_back(isa);
    }
    return out;
}

const Table& table(Isa isa) {
    if (!isa_supported(isa)) {
        throw std::runtime_error(std::string("kernel variant not available: ") + isa_name(isa));
    }
    switch (isa) {
#if defined(TVB_HAVE_AVX2)
        case Isa::Avx2: return avx2::table();
#endif
#if defined(TVB_HAVE_NEON)
        case Isa::Neon: return neon::table();
#endif
        default: return scalar::table();
    }
}

namespace {

Isa detect() {
    if (const char* env = std::getenv("TVB_ISA")) {
        for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
            if (std::strcmp(env, isa_name(isa)) == 0 && isa_supported(isa)) return isa;
        }
    }
    if (isa_supported(Isa::Avx2)) return Isa::Avx2;
    if (isa_supported(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

std::atomic<const Table*>& slot() {
    static std::atomic<const Table*> s{&table(detect())};
    return s;
}

}  // namespace

const Table& active() { return *slot().load(std::memory_order_acquire); }

void set_active(Isa isa) { slot().store(&table(isa), std::memory_order_release); }

}  // namespace tvb::kernels
