#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "tvb/metrics.hpp"
#include "tvb/solver.hpp"
#include "tvb/synth.hpp"

using namespace tvb;

namespace {

SolverConfig config(std::array<double, 3> theta) {
    SolverConfig cfg;
    cfg.theta_init = theta;
    return cfg;
}

bool traces_bit_equal(const std::vector<TraceRecord>& a, const std::vector<TraceRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double va[] = {a[i].objective, a[i].rmse_l,  a[i].rmse_s,  a[i].theta[0],
                             a[i].theta[1],  a[i].theta[2], a[i].tnn_of_l, a[i].l1_of_s,
                             a[i].residual_fro};
        const double vb[] = {b[i].objective, b[i].rmse_l,  b[i].rmse_s,  b[i].theta[0],
                             b[i].theta[1],  b[i].theta[2], b[i].tnn_of_l, b[i].l1_of_s,
                             b[i].residual_fro};
        if (a[i].iter != b[i].iter || std::memcmp(va, vb, sizeof va) != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("shape parameters") {
    const auto a = shape_parameters(24000);
    CHECK(a[0] == 12001.0);
    CHECK(a[1] == 24001.0);
    CHECK(a[2] == 24001.0);
    // 40 x 40 x 30 holds 48000 entries.
    const auto b = shape_parameters(40 * 40 * 30);
    CHECK(b[0] == 24001.0);
    CHECK(b[1] == 48001.0);
    CHECK(b[2] == 48001.0);
}

TEST_CASE("init sets the documented starting state") {
    Rng rng(51, Stream::Perturbation);
    const Tensor3 x = oracle::random_tensor(rng, 3, 4, 2);
    const PosteriorState st = init(x, config({100, 1, 1}));
    CHECK(st.e_l == x);
    CHECK(oracle::max_abs(st.e_s) == 0.0);
    CHECK(oracle::max_abs(st.sigma_s) == 0.0);
    CHECK(st.e_theta == std::array<double, 3>{100, 1, 1});
    for (int i = 0; i < 3; ++i) CHECK(st.b_theta[i] * st.e_theta[i] == doctest::Approx(st.a_theta[i]));
    CHECK_THROWS_AS(init(x, config({0, 1, 1})), BadConfig);
    SolverConfig w;
    w.method = Method::Weighted;
    CHECK_THROWS_AS(init(x, w), BadConfig);
}

TEST_CASE("objective at the zero state with unit precisions is zero") {
    const Tensor3 x(3, 3, 2);
    const SolverConfig cfg = config({1, 1, 1});
    const PosteriorState st = init(x, cfg);
    CHECK(objective(st, x, cfg) == 0.0);
}

TEST_CASE("update_s: closed-form case and grid oracle") {
    Tensor3 x(1, 1, 1);
    x(0, 0, 0) = 5.0;
    SolverConfig cfg = config({1, 2, 1});
    PosteriorState st = init(x, cfg);
    st.e_l = Tensor3(1, 1, 1);
    update_s(st, x, cfg);
    CHECK(st.e_s(0, 0, 0) == 3.0);
    CHECK(st.sigma_s(0, 0, 0) == doctest::Approx(3.0 / (3.0 + 2.0)));

    Rng rng(52, Stream::Perturbation);
    const Tensor3 x2 = oracle::random_tensor(rng, 4, 4, 3);
    cfg = config({1.5, 0.8, 1});
    st = init(x2, cfg);
    st.e_l = oracle::random_tensor(rng, 4, 4, 3);
    update_s(st, x2, cfg);
    const Tensor3 r = x2 - st.e_l;
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(std::fabs(st.e_s.values()[i] -
                        oracle::grid_soft_threshold(r.values()[i], 1.5, 0.8, 1e-6)) < 1e-5);
    }

    st.e_l = x2;
    update_s(st, x2, cfg);
    CHECK(oracle::max_abs(st.e_s) == 0.0);
    CHECK(oracle::max_abs(st.sigma_s) == 0.0);
}

TEST_CASE("update_l shrinks a constructed spectrum") {
    // A single nonzero entry in the first frontal slice has Fourier value 5
    // in every slice.
    Tensor3 x(3, 3, 4);
    x(0, 0, 0) = 5.0;
    const SolverConfig cfg = config({1, 1, 2});
    PosteriorState st = init(x, cfg);
    update_l(st, x, cfg);
    REQUIRE(st.l_factors.r == 1);
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(st.l_factors.svals(0, k) == doctest::Approx(3.0));
    CHECK(st.e_l(0, 0, 0) == doctest::Approx(3.0));

    st.e_theta = {1, 1, 10};
    update_l(st, x, cfg);
    CHECK(oracle::max_abs(st.e_l) == 0.0);
}

TEST_CASE("update_theta on a hand-built 2x2x1 state") {
    // e_s = [[1,0],[0,0]], sigma_s = [[0.25,0],[0,0]], residual 0.1
    // everywhere, rank-1 factor with singular value 2, theta = (2, 3, 4).
    Tensor3 e_l(2, 2, 1);
    e_l(0, 0, 0) = 2.0;
    Tensor3 e_s(2, 2, 1);
    e_s(0, 0, 0) = 1.0;
    Tensor3 resid(2, 2, 1);
    for (double& v : resid.values()) v = 0.1;
    const Tensor3 x = e_l + e_s + resid;

    for (TraceScale scale : {TraceScale::Fourier, TraceScale::Literal}) {
        SolverConfig cfg = config({2, 3, 4});
        cfg.trace_scale = scale;
        PosteriorState st = init(x, cfg);
        st.e_l = e_l;
        st.e_s = e_s;
        st.sigma_s = Tensor3(2, 2, 1);
        st.sigma_s(0, 0, 0) = 0.25;
        st.l_factors = t_svd(e_l);
        st.l_factors.r = 1;
        st.l_factors.svals = Eigen::MatrixXd::Constant(1, 1, 2.0);
        update_theta(st, x, cfg);

        // precision of the retained direction: 2*2 + 4*1 = 8
        const double b1 = 0.5 * 4 * 0.01 + (2.0 / 2.0) * (2.0 / 8.0) + 0.5 * 0.25;
        const double b2 = 1.0 + 0.5 * (1.0 / (2.0 * 1.0 + 3.0) + 3.0 * (1.0 / 3.0));
        const double b3 = 2.0 + (2.0 / 2.0) * (1.0 / 8.0);
        CHECK(std::fabs(st.b_theta[0] - b1) < 1e-12);
        CHECK(std::fabs(st.b_theta[1] - b2) < 1e-12);
        CHECK(std::fabs(st.b_theta[2] - b3) < 1e-12);
        CHECK(st.e_theta[0] == st.a_theta[0] / b1);
        for (int i = 0; i < 3; ++i) {
            CHECK(st.e_theta[i] * st.b_theta[i] == doctest::Approx(st.a_theta[i]).epsilon(1e-15));
        }
    }
}

TEST_CASE("update_theta uses the n3 covariance scale only in literal mode") {
    Rng rng(53, Stream::Perturbation);
    const Tensor3 x = oracle::random_tensor(rng, 3, 3, 4);
    SolverConfig f = config({1, 1, 1});
    SolverConfig l = f;
    l.trace_scale = TraceScale::Literal;
    PosteriorState a = init(x, f), b = init(x, l);
    update_s(a, x, f);
    update_l(a, x, f);
    update_s(b, x, l);
    update_l(b, x, l);
    update_theta(a, x, f);
    update_theta(b, x, l);
    CHECK(a.b_theta[1] == b.b_theta[1]);
    CHECK(a.b_theta[2] == b.b_theta[2]);
    CHECK(a.b_theta[0] > b.b_theta[0]);
}

TEST_CASE("update_theta signals a degenerate fit") {
    Rng rng(54, Stream::Perturbation);
    const Tensor3 x = oracle::random_tensor(rng, 3, 3, 2);
    const SolverConfig cfg = config({1, 1, 1});
    PosteriorState st = init(x, cfg);
    st.l_factors.r = 0;
    st.l_factors.svals = Eigen::MatrixXd(0, 2);
    CHECK_THROWS_AS(update_theta(st, x, cfg), DegenerateScale);
}

TEST_CASE("objective identity for doubling theta2") {
    Rng rng(55, Stream::Perturbation);
    const Tensor3 x = oracle::random_tensor(rng, 4, 3, 3);
    const SolverConfig cfg = config({2, 0.5, 1});
    PosteriorState st = init(x, cfg);
    update_s(st, x, cfg);
    update_l(st, x, cfg);
    const double f0 = objective(st, x, cfg);
    st.e_theta[1] *= 2.0;
    const double f1 = objective(st, x, cfg);
    CHECK(f1 - f0 == doctest::Approx(0.5 * l1_norm(st.e_s) - 36.0 * std::log(2.0)));
}

TEST_CASE("trace objective recomputes from its stored fields") {
    SynthSpec spec{20, 20, 8, 2, 0.05, 0.01, 3};
    const Instance inst = make_instance(spec);
    SolverConfig cfg = config({100, 1, 1});
    cfg.max_iters = 10;
    const RunResult r = run(inst.x, cfg);
    REQUIRE_FALSE(r.trace.empty());
    for (const TraceRecord& rec : r.trace) {
        CHECK(std::fabs(objective_from_record(rec, inst.x.size()) - rec.objective) <=
              1e-10 * std::max(1.0, std::fabs(rec.objective)));
    }
}

TEST_CASE("run on the zero tensor returns zeros") {
    const Tensor3 x(5, 4, 3);
    const RunResult r = run(x, config({1, 1, 1}));
    CHECK(oracle::max_abs(r.l) == 0.0);
    CHECK(oracle::max_abs(r.s) == 0.0);
    CHECK(r.converged);
}

TEST_CASE("property: a sweep leaves a fixed point of the two proxes unchanged") {
    Rng rng(56, Stream::Perturbation);
    const Tensor3 x = oracle::random_tensor(rng, 4, 4, 3);
    const SolverConfig cfg = config({1, 0.7, 0.9});
    PosteriorState st = init(x, cfg);
    // Alternate the two exact proxes with frozen precisions until they settle.
    for (int i = 0; i < 20000; ++i) {
        const Tensor3 prev = st.e_l;
        update_s(st, x, cfg);
        update_l(st, x, cfg);
        if (oracle::max_abs_diff(prev, st.e_l) < 1e-15) break;
    }
    const Tensor3 l_star = st.e_l, s_star = st.e_s;
    CHECK(oracle::max_abs_diff(t_svt(x - s_star, 0.9).l, l_star) < 1e-10);
    update_s(st, x, cfg);
    update_l(st, x, cfg);
    CHECK(oracle::max_abs_diff(st.e_l, l_star) < 1e-10);
    CHECK(oracle::max_abs_diff(st.e_s, s_star) < 1e-10);
}

TEST_CASE("property: runs are deterministic") {
    SynthSpec spec{15, 12, 6, 2, 0.05, 0.01, 9};
    const Instance inst = make_instance(spec);
    SolverConfig cfg = config({1, 1, 1});
    cfg.max_iters = 15;
    RunResult a, b;
    bool degenerate_a = false, degenerate_b = false;
    try { a = run(inst.x, cfg); } catch (const DegenerateScale& e) { degenerate_a = true; a.trace = e.trace; }
    try { b = run(inst.x, cfg); } catch (const DegenerateScale& e) { degenerate_b = true; b.trace = e.trace; }
    CHECK(degenerate_a == degenerate_b);
    CHECK(traces_bit_equal(a.trace, b.trace));
    CHECK(a.l == b.l);
    CHECK(a.s == b.s);
}

TEST_CASE("property: weighted method with all-ones weights equals tnn") {
    SynthSpec spec{16, 14, 6, 2, 0.05, 0.01, 4};
    const Instance inst = make_instance(spec);
    SolverConfig t = config({100, 1, 1});
    t.max_iters = 12;
    SolverConfig w = t;
    w.method = Method::Weighted;
    w.weights = ones_weights(16, 14, 6);
    const RunResult a = run(inst.x, t);
    const RunResult b = run(inst.x, w);
    CHECK(oracle::max_abs_diff(a.l, b.l) <= 1e-12);
    CHECK(oracle::max_abs_diff(a.s, b.s) <= 1e-12);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("noiseless low-rank input is recovered from theta (100, 1, 1)") {
    SynthSpec spec{20, 20, 10, 2, 0.0, 0.0, 5};
    const Instance inst = make_instance(spec);
    const RunResult r = run(inst.x, config({100, 1, 1}));
    CHECK(rel_error(r.l, inst.l0) < 0.01);
}

TEST_CASE("degenerate runs carry the partial trace") {
    SynthSpec spec{40, 40, 30, 3, 0.1, 0.01, 1};
    const Instance inst = make_instance(spec);
    try {
        const RunResult r = run(inst.x, config({1, 1, 1}));
        CHECK(r.iterations > 0);
    } catch (const DegenerateScale& e) {
        CHECK(e.trace.size() < 50);
        for (std::size_t i = 0; i < e.trace.size(); ++i) CHECK(e.trace[i].iter == int(i + 1));
    }
}
