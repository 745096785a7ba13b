#pragma once
// Seeded synthetic benchmarks: low-tubal-rank ground truth with Bernoulli
// sparse corruption and Gaussian noise, plus low-rank test imagery and the
// image corruption models used for denoising.

#include <cstddef>
#include <cstdint>

#include "tvb/tensor.hpp"

namespace tvb {

struct SynthSpec {
    std::size_t n1 = 40, n2 = 40, n3 = 30;
    std::size_t r = 3;
    double rho = 0.1;
    double sigma = 0.01;
    std::uint64_t seed = 1;
};

void validate_spec(const SynthSpec& s);

struct Instance {
    Tensor3 x, l0, s0, e0;
};

// l0 = P * Q with P ~ N(0, 1/n1) (n1 x r x n3) and Q ~ N(0, 1/n2)
// (r x n2 x n3); s0 entries are +1 or -1 with probability rho each;
// e0 ~ N(0, sigma^2); x = l0 + s0 + e0.
Instance make_instance(const SynthSpec& s);

struct RelErrors {
    double err_l = 0.0;
    double err_s = 0.0;
};

RelErrors rel_errors(const Tensor3& l_hat, const Tensor3& s_hat, const Tensor3& l0,
                     const Tensor3& s0);

// h x w x 3 image in [16, 239] whose three channel planes are combinations of
// `rank` separable smooth patterns, rounded to integers.
Tensor3 make_lowrank_image(std::size_t h, std::size_t w, std::size_t rank, std::uint64_t seed);

// Replaces round(fraction * h * w) distinct pixels (all channels) by integers
// drawn uniformly from [0, 255].
Tensor3 corrupt_sparse(const Tensor3& img, double fraction, std::uint64_t seed);

// Adds N(0, variance) noise on the [0, 1] scale, i.e. 255 * N(0, variance).
Tensor3 corrupt_gaussian(const Tensor3& img, double variance, std::uint64_t seed);

}  // namespace tvb
