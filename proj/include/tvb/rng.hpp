#pragma once
// Seeded random streams with a platform-independent output sequence.
//
// Each (seed, stream id) pair drives its own std::mt19937_64, initialized
// through std::seed_seq; both are fully specified by the C++ standard.
// Uniforms take the top 53 bits of a draw. Normals use the Box-Muller cosine
// branch, consuming exactly two draws each.

#include <cstdint>
#include <random>

namespace tvb {

enum class Stream : std::uint32_t {
    FactorP = 1,
    FactorQ = 2,
    SparseSupport = 3,
    SparseSign = 4,
    Noise = 5,
    ImageShape = 6,
    CorruptSupport = 7,
    CorruptValue = 8,
    CorruptNoise = 9,
    Perturbation = 10,
};

class Rng {
public:
    Rng(std::uint64_t seed, Stream stream);
    Rng(std::uint64_t seed, std::uint32_t stream);

    std::uint64_t next_u64() { return eng_(); }
    // Uniform on [0, 1).
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n);
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace tvb
