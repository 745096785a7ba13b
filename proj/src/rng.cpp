#include "tvb/rng.hpp"

#include <cmath>
#include <numbers>

namespace tvb {

Rng::Rng(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32), stream,
                      0x74766275u};
    eng_.seed(seq);
}

Rng::Rng(std::uint64_t seed, Stream stream) : Rng(seed, static_cast<std::uint32_t>(stream)) {}

double Rng::uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    // Multiply-shift mapping of a single 64-bit draw.
    const unsigned __int128 prod = static_cast<unsigned __int128>(eng_()) * n;
    return std::uint64_t(prod >> 64);
}

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace tvb
