#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcmc/lumped.hpp"
#include "bcmc/rng.hpp"
#include "support/brute_force.hpp"

using namespace bcmc;

TEST_CASE("state enumeration is canonical and bijective") {
    LumpedStateSpace one(1);
    REQUIRE(one.size() == 3);
    CHECK(one.state(0) == LumpedState{0, 0});
    CHECK(one.state(1) == LumpedState{0, 1});
    CHECK(one.state(2) == LumpedState{1, 0});

    CHECK(LumpedStateSpace(2).size() == 6);
    CHECK(LumpedStateSpace(200).size() == 20301);

    RngStream rng(11, 0);
    for (int n : {1, 2, 7, 33, 200}) {
        LumpedStateSpace space(n);
        CHECK(space.size() == static_cast<std::int64_t>(n + 1) * (n + 2) / 2);
        for (std::int64_t i = 0; i < space.size(); ++i)
            CHECK(space.index(space.state(i)) == i);
    }
}

TEST_CASE("state space rejects out-of-range sizes") {
    CHECK_THROWS_AS(LumpedStateSpace(0), std::length_error);
    CHECK_THROWS_AS(LumpedStateSpace(2001), std::length_error);
    LumpedStateSpace space(4);
    CHECK_THROWS_AS(space.index({3, 2}), std::out_of_range);
}

TEST_CASE("gibbs distribution basics") {
    for (auto [beta, k] : {std::pair{0.7, 0.4}, {1.0, 0.8}, {2.0, 1.2}}) {
        ModelParams params(40, beta, k);
        auto dist = gibbs_stationary(params);
        LumpedStateSpace space(params.n);

        double total = 0.0;
        for (double p : dist.probs) {
            CHECK(p >= 0.0);
            total += p;
        }
        CHECK(std::fabs(total - 1.0) <= 1e-12);

        // spin-flip symmetry
        for (std::int64_t i = 0; i < space.size(); ++i) {
            auto s = space.state(i);
            auto j = space.index({s.n_plus, s.n_minus});
            CHECK(std::fabs(dist.probs[i] - dist.probs[j]) <= 1e-12);
        }
    }
}

TEST_CASE("single-site chain weights match the Hamiltonian by hand") {
    // pi(0,0)/pi(0,1) = e^{beta (1 - K)} at n = 1
    for (auto [beta, k] : {std::pair{1.0, 0.5}, {2.0, 1.5}}) {
        ModelParams params(1, beta, k);
        auto dist = gibbs_stationary(params);
        CHECK(dist.probs[0] / dist.probs[1] ==
              doctest::Approx(std::exp(beta * (1.0 - k))).epsilon(1e-12));
    }
}

TEST_CASE("gibbs matches brute force over all 27 configurations") {
    ModelParams params(3, 1.0, 1.0);
    auto dist = gibbs_stationary(params);
    auto expected = testing::lumped_pushforward_gibbs(params);
    REQUIRE(dist.probs.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(std::fabs(dist.probs[i] - expected[i]) <= 1e-14);
}

TEST_CASE("mass near zero magnetization") {
    // deep in the rapid region most stationary mass sits near S = 0
    ModelParams params(100, 1.0, 0.5);
    double mass = gibbs_mass_near_zero(params, 0.5);
    CHECK(mass > 0.999);
}
