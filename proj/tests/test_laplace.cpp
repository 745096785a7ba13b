#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tvb/errors.hpp"
#include "tvb/laplace.hpp"

using namespace tvb;

TEST_CASE("soft_threshold matches a grid minimization") {
    Rng rng(41, Stream::Perturbation);
    for (int t = 0; t < 500; ++t) {
        const double b = rng.uniform(-3.0, 3.0);
        const double alpha = rng.uniform(0.1, 10.0);
        const double beta = rng.uniform(0.0, 5.0);
        CHECK(std::fabs(soft_threshold(b, alpha, beta) -
                        oracle::grid_soft_threshold(b, alpha, beta, 1e-6)) < 1e-5);
    }
}

TEST_CASE("soft_threshold hand cases and precondition errors") {
    CHECK(soft_threshold(3.0, 2.0, 2.0) == 2.0);
    CHECK(soft_threshold(-3.0, 2.0, 2.0) == -2.0);
    CHECK(soft_threshold(1.0, 2.0, 2.0) == 0.0);
    CHECK(soft_threshold(0.5, 1.0, 0.0) == 0.5);
    CHECK_THROWS_AS(soft_threshold(1.0, 0.0, 1.0), BadPrecision);
    CHECK_THROWS_AS(soft_threshold(1.0, 1.0, -1.0), BadPrecision);
}

TEST_CASE("absolute-value posterior variance under both conventions") {
    const ScalarPosterior d = abs_posterior(3.0, 2.0, 2.0, SigmaSConvention::Derivation);
    CHECK(d.mean == 2.0);
    CHECK(d.variance == doctest::Approx(2.0 / (2.0 * 2.0 + 2.0)));
    const ScalarPosterior a = abs_posterior(3.0, 2.0, 2.0, SigmaSConvention::Algorithm1);
    CHECK(a.variance == doctest::Approx(4.0 / 6.0));
    CHECK(abs_posterior(0.1, 2.0, 2.0).variance == 0.0);
}

TEST_CASE("expected_abs identity") {
    const ScalarPosterior p{-1.5, 0.0};
    CHECK(expected_abs(p, 2.0, 1.0) == doctest::Approx(1.5 + 1.0 / (2.0 * 4.0)));
    const ScalarPosterior z{0.0, 0.0};
    CHECK(expected_abs(z, 2.0, 4.0) == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("nuclear trace terms skip zero singular values") {
    Eigen::VectorXd d(3), w(3);
    d << 4.0, 1.0, 0.0;
    w << 1.0, 0.0, 1.0;
    const NuclearTraces t = nuclear_posterior_trace_terms(d, 2.0, 3.0, w);
    // slot 0: precision 2*4 + 3*1 = 11; slot 1: precision 2*1 + 0 = 2.
    CHECK(t.cov_trace == doctest::Approx(4.0 / 11.0 + 1.0 / 2.0));
    CHECK(t.inv_prec_trace == doctest::Approx(1.0 / 11.0 + 1.0 / 2.0));
    CHECK_THROWS_AS(nuclear_posterior_trace_terms(d, 1.0, 1.0, Eigen::VectorXd::Ones(2)),
                    DimMismatch);
}
