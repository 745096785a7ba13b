#pragma once
// Half-spectrum representation of the mode-3 DFT of a real tensor.
//
// Only slices 0..n3/2 are stored; slice n3-k is the complex conjugate of
// slice k. Forward and inverse transforms are backed by FFTW real-to-complex
// and complex-to-real plans.

#include <cstddef>
#include <vector>

#include "tvb/tensor.hpp"

namespace tvb {

class HalfSpectrum {
public:
    HalfSpectrum() = default;
    HalfSpectrum(std::size_t n1, std::size_t n2, std::size_t n3)
        : n1_(n1), n2_(n2), n3_(n3), h_(n3 / 2 + 1), v_(n1 * n2 * (n3 / 2 + 1)) {}

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t n3() const { return n3_; }
    // Number of stored slices.
    std::size_t half() const { return h_; }
    // Multiplicity of stored slice k in the full spectrum (1 or 2).
    std::size_t multiplicity(std::size_t k) const {
        return (k == 0 || 2 * k == n3_) ? 1 : 2;
    }

    cdouble* slice_ptr(std::size_t k) { return v_.data() + n1_ * n2_ * k; }
    const cdouble* slice_ptr(std::size_t k) const { return v_.data() + n1_ * n2_ * k; }
    CMatMap slice(std::size_t k) {
        return CMatMap(slice_ptr(k), Eigen::Index(n1_), Eigen::Index(n2_));
    }
    ConstCMatMap slice(std::size_t k) const {
        return ConstCMatMap(slice_ptr(k), Eigen::Index(n1_), Eigen::Index(n2_));
    }
    std::vector<cdouble>& values() { return v_; }
    const std::vector<cdouble>& values() const { return v_; }

private:
    std::size_t n1_ = 0, n2_ = 0, n3_ = 0, h_ = 0;
    std::vector<cdouble> v_;
};

HalfSpectrum forward_half(const Tensor3& t);
Tensor3 inverse_half(const HalfSpectrum& h);

// Expands to the full conjugate-symmetric spectrum and back.
CTensor3 expand_half(const HalfSpectrum& h);
HalfSpectrum restrict_half(const CTensor3& c);

}  // namespace tvb
