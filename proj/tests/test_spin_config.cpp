#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcmc/cgf.hpp"
#include "bcmc/spin_config.hpp"

using namespace bcmc;

TEST_CASE("configuration caches") {
    SpinConfiguration c({-1, 0, 1, 1, 0});
    CHECK(c.n() == 5);
    CHECK(c.total_spin() == 1);
    CHECK(c.count(-1) == 1);
    CHECK(c.count(0) == 2);
    CHECK(c.count(+1) == 2);
    c.set_spin(0, +1);
    CHECK(c.total_spin() == 3);
    CHECK(c.count(-1) == 0);
    CHECK(c.count(+1) == 3);

    CHECK_THROWS_AS(SpinConfiguration({2, 0}), std::domain_error);
    CHECK_THROWS_AS(SpinConfiguration(std::vector<std::int8_t>{}), std::domain_error);

    RngStream rng(5, 0);
    auto fc = SpinConfiguration::from_counts(3, 4, 5, rng);
    CHECK(fc.n() == 12);
    CHECK(fc.count(-1) == 3);
    CHECK(fc.count(0) == 4);
    CHECK(fc.count(+1) == 5);
    CHECK(fc.total_spin() == 2);
}

TEST_CASE("update distribution laws") {
    ModelParams params(100, 1.0, 1.0);

    SUBCASE("zero neighbor field is symmetric") {
        auto p = update_probs(params, 0);
        double expected = 1.0 / (2.0 + std::exp(params.beta - params.beta * params.k / 100));
        CHECK(p.p_plus == doctest::Approx(expected).epsilon(1e-14));
        CHECK(p.p_minus == doctest::Approx(expected).epsilon(1e-14));
    }

    SUBCASE("global flip reverses the weights") {
        for (long s = -99; s <= 99; s += 7) {
            auto p = update_probs(params, s);
            auto q = update_probs(params, -s);
            CHECK(p.p_plus == doctest::Approx(q.p_minus).epsilon(1e-14));
            CHECK(p.p_zero == doctest::Approx(q.p_zero).epsilon(1e-14));
        }
    }

    SUBCASE("full monotone sweep") {
        auto prev = update_probs(params, -99);
        CHECK(std::fabs(prev.p_minus + prev.p_zero + prev.p_plus - 1.0) <= 1e-14);
        for (long s = -98; s <= 99; ++s) {
            auto p = update_probs(params, s);
            CHECK(std::fabs(p.p_minus + p.p_zero + p.p_plus - 1.0) <= 1e-14);
            CHECK(p.p_plus > prev.p_plus);
            CHECK(p.p_minus < prev.p_minus);
            // coupling thresholds move together: both cut points decrease
            CHECK(p.p_minus + p.p_zero < prev.p_minus + prev.p_zero);
            prev = p;
        }
    }

    CHECK_THROWS_AS(update_probs(params, 100), std::domain_error);
}

TEST_CASE("single-site empirical law over 1e6 steps") {
    // at n = 1 the neighbor sum is always zero, so steps are iid
    ModelParams params(1, 1.3, 0.7);
    auto p = update_probs(params, 0);
    SpinConfiguration c({0});
    RngStream rng(2024, 0);
    long counts[3] = {0, 0, 0};
    const long m = 1'000'000;
    for (long i = 0; i < m; ++i) {
        glauber_step(params, c, rng);
        ++counts[c.spin(0) + 1];
    }
    const double expected[3] = {p.p_minus, p.p_zero, p.p_plus};
    for (int v = 0; v < 3; ++v) {
        double mean = m * expected[v];
        double sd = std::sqrt(mean * (1.0 - expected[v]));
        CHECK(std::fabs(counts[v] - mean) <= 3.0 * sd);
    }
}

TEST_CASE("one step moves the total spin by at most 2") {
    ModelParams params(50, 1.0, 0.8);
    RngStream rng(1, 4);
    auto c = SpinConfiguration::from_counts(10, 20, 20, rng);
    for (int i = 0; i < 5000; ++i) {
        long before = c.total_spin();
        glauber_step(params, c, rng);
        CHECK(std::labs(c.total_spin() - before) <= 2);
    }
}

TEST_CASE("coupled step") {
    ModelParams params(30, 1.0, 0.9);

    SUBCASE("equal chains stay equal") {
        RngStream rng(9, 0);
        auto x = SpinConfiguration::from_counts(10, 10, 10, rng);
        auto y = x;
        for (int i = 0; i < 2000; ++i) {
            auto d = coupled_step(params, x, y, rng);
            CHECK(d.drho == 0);
            CHECK(x == y);
        }
    }

    SUBCASE("one-step law from a neighboring pair") {
        // from rho = 1 a single step yields rho in {0, 1, 2}, and picking
        // the defect site always coalesces
        auto sigma = SpinConfiguration::constant(30, 0);
        auto tau = sigma;
        tau.set_spin(7, +1);  // sigma < tau at site 7
        RngStream master(10, 0);
        int hit_defect = 0;
        for (int trial = 0; trial < 5000; ++trial) {
            RngStream rng = master.substream(trial);
            auto x = sigma, y = tau;
            auto d = coupled_step(params, x, y, rng);
            long rho = 1 + d.drho;
            CHECK((rho == 0 || rho == 1 || rho == 2));
            CHECK(std::labs(x.total_spin() - y.total_spin()) <= 2 * rho);
            if (d.site == 7) {
                ++hit_defect;
                CHECK(rho == 0);
                CHECK(x == y);
            }
        }
        CHECK(hit_defect > 0);
    }

    SUBCASE("coordinatewise order is preserved") {
        ModelParams p200(200, 2.0, 0.5);
        RngStream master(77, 0);
        int violations = 0;
        for (int trial = 0; trial < 10'000; ++trial) {
            RngStream rng = master.substream(trial);
            // random ordered pair: y raises a random subset of x
            std::vector<std::int8_t> xs(200), ys(200);
            for (int i = 0; i < 200; ++i) {
                int v = static_cast<int>(rng.next_index(3)) - 1;
                xs[i] = static_cast<std::int8_t>(v);
                int up = v + static_cast<int>(rng.next_index(static_cast<std::uint64_t>(2 - v)));
                ys[i] = static_cast<std::int8_t>(up);
            }
            SpinConfiguration x(xs), y(ys);
            coupled_step(p200, x, y, rng);
            for (int i = 0; i < 200; ++i)
                if (x.spin(i) > y.spin(i)) ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("phi kernel") {
    ModelParams params(200, 1.0, 0.8);
    CHECK(phi_fn(params, 0) == 0.0);
    for (long x : {1L, 17L, 60L, 200L})
        CHECK(phi_fn(params, -x) == doctest::Approx(-phi_fn(params, x)).epsilon(1e-14));
    CHECK_THROWS_AS(phi_fn(params, 201), std::domain_error);

    // phi tracks c' at matching argument to O(1/n)
    for (auto [beta, k] : {std::pair{1.0, 0.8}, {2.0, 0.6}}) {
        ModelParams p(200, beta, k);
        double worst = 0.0;
        for (long x = -200; x <= 200; ++x) {
            double arg = 2.0 * beta * k * x / 200.0;
            worst = std::max(worst, std::fabs(phi_fn(p, x) - cgf_derivs(beta, arg).first));
        }
        CHECK(worst <= 1.0 / 200.0);
    }
}

TEST_CASE("identical streams reproduce identical trajectories") {
    ModelParams params(64, 1.0, 0.9);
    auto run = [&](std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        auto c = SpinConfiguration::constant(64, 0);
        std::vector<long> trace;
        for (int i = 0; i < 3000; ++i) {
            glauber_step(params, c, rng);
            trace.push_back(c.total_spin());
        }
        return trace;
    };
    CHECK(run(42, 7) == run(42, 7));
    CHECK(run(42, 7) != run(42, 8));
    CHECK(run(42, 7) != run(43, 7));
}
