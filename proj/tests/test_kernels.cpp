#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "tvb/kernels.hpp"
#include "tvb/rng.hpp"

using namespace tvb;
using namespace tvb::kernels;

namespace {

std::vector<double> sample(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) {
        const double u = rng.uniform();
        if (u < 0.05) {
            x = 0.0;
        } else if (u < 0.1) {
            x = -0.0;
        } else if (u < 0.15) {
            x = rng.uniform() < 0.5 ? 0.5 : -0.5;  // exactly at the test threshold
        } else {
            x = rng.normal() * std::pow(10.0, rng.uniform(-3.0, 3.0));
        }
    }
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double abs_sum(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] * b[i]);
    return s;
}

}  // namespace

TEST_CASE("scalar soft_threshold matches the closed form and yields +0") {
    const Table& t = table(Isa::Scalar);
    const std::vector<double> r{3.0, -3.0, 0.5, -0.5, 0.2, -0.0, 0.0};
    std::vector<double> out(r.size());
    t.soft_threshold(r.data(), 0.5, out.data(), r.size());
    CHECK(out[0] == 2.5);
    CHECK(out[1] == -2.5);
    for (std::size_t i = 2; i < r.size(); ++i) {
        CHECK(out[i] == 0.0);
        CHECK_FALSE(std::signbit(out[i]));
    }
}

TEST_CASE("every available variant agrees with the scalar reference") {
    const Table& ref = table(Isa::Scalar);
    Rng rng(21, Stream::Perturbation);
    for (Isa isa : supported_isas()) {
        CAPTURE(isa_name(isa));
        const Table& t = table(isa);
        CHECK(t.isa == isa);
        for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 67, 1000}) {
            CAPTURE(n);
            const std::vector<double> a = sample(rng, n), b = sample(rng, n);
            std::vector<double> o1(n), o2(n);

            ref.sub(a.data(), b.data(), o1.data(), n);
            t.sub(a.data(), b.data(), o2.data(), n);
            CHECK(bit_equal(o1, o2));

            for (double thr : {0.0, 0.5, 2.0}) {
                ref.soft_threshold(a.data(), thr, o1.data(), n);
                t.soft_threshold(a.data(), thr, o2.data(), n);
                CHECK(bit_equal(o1, o2));
            }

            const double tol = 1e-14;
            CHECK(std::fabs(ref.sum_sq(a.data(), n) - t.sum_sq(a.data(), n)) <=
                  tol * abs_sum(a, a));
            std::vector<double> ones(n, 1.0);
            CHECK(std::fabs(ref.sum_abs(a.data(), n) - t.sum_abs(a.data(), n)) <=
                  tol * abs_sum(a, ones));
            CHECK(std::fabs(ref.dot(a.data(), b.data(), n) - t.dot(a.data(), b.data(), n)) <=
                  tol * abs_sum(a, b));
            std::vector<double> d(n);
            ref.sub(a.data(), b.data(), d.data(), n);
            CHECK(std::fabs(ref.sum_sq_diff(a.data(), b.data(), n) -
                            t.sum_sq_diff(a.data(), b.data(), n)) <= tol * abs_sum(d, d));
        }
    }
}

TEST_CASE("reductions of small integers are exact in every variant") {
    std::vector<double> a(37), b(37);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = double(i) - 18.0;
        b[i] = double(i % 5);
    }
    double sq = 0, ab = 0, dt = 0, sd = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sq += a[i] * a[i];
        ab += std::fabs(a[i]);
        dt += a[i] * b[i];
        sd += (a[i] - b[i]) * (a[i] - b[i]);
    }
    for (Isa isa : supported_isas()) {
        const Table& t = table(isa);
        CHECK(t.sum_sq(a.data(), a.size()) == sq);
        CHECK(t.sum_abs(a.data(), a.size()) == ab);
        CHECK(t.dot(a.data(), b.data(), a.size()) == dt);
        CHECK(t.sum_sq_diff(a.data(), b.data(), a.size()) == sd);
    }
}

TEST_CASE("set_active switches the dispatch target") {
    const Isa before = active().isa;
    for (Isa isa : supported_isas()) {
        set_active(isa);
        CHECK(active().isa == isa);
    }
    set_active(before);
    CHECK(active().isa == before);
}

TEST_CASE("unavailable variants are reported") {
    for (Isa isa : {Isa::Avx2, Isa::Neon}) {
        if (!isa_supported(isa)) CHECK_THROWS(table(isa));
    }
}
