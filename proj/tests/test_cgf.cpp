#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcmc/cgf.hpp"
#include "bcmc/params.hpp"
#include "bcmc/rng.hpp"

using namespace bcmc;

namespace {
const double kBetas[] = {0.5, 1.0, beta_critical, 2.0, 3.0};
}

TEST_CASE("cgf vanishes at t = 0 and is even") {
    for (double beta : kBetas) {
        CHECK(cgf(beta, 0.0) == 0.0);
        RngStream rng(7, 0);
        for (int i = 0; i < 200; ++i) {
            double t = (rng.next_double() - 0.5) * 40.0;
            CHECK(cgf(beta, t) == doctest::Approx(cgf(beta, -t)).epsilon(1e-14));
        }
    }
}

TEST_CASE("cgf spot value") {
    // closed form at (log 4, 1), evaluated with 50-digit arithmetic
    CHECK(cgf(beta_critical, 1.0) ==
          doctest::Approx(0.16638429586543058).epsilon(1e-14));
}

TEST_CASE("cgf stays finite and tracks its asymptote at |t| = 700") {
    for (double beta : {1.0, 2.0}) {
        double v = cgf(beta, 700.0);
        CHECK(std::isfinite(v));
        // c(t) -> t - beta - log(1 + 2 e^-beta) for large t
        double asym = 700.0 - beta - std::log1p(2.0 * std::exp(-beta));
        CHECK(v == doctest::Approx(asym).epsilon(1e-12));
        CHECK(cgf(beta, -700.0) == doctest::Approx(v).epsilon(1e-14));
    }
}

TEST_CASE("cgf rejects bad input") {
    CHECK_THROWS_AS(cgf(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(cgf(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(cgf(1.0, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(cgf(1.0, INFINITY), std::domain_error);
}

TEST_CASE("derivatives match central finite differences") {
    // c' against differences of cgf; c'' against differences of c' (a
    // second difference of cgf in doubles carries ~1e-5 roundoff, far above
    // the 1e-6 relative target).
    const double h = 1e-5;
    for (double beta : kBetas) {
        for (int i = 0; i <= 200; ++i) {
            double t = -10.0 + 0.1 * i;
            auto [c1, c2] = cgf_derivs(beta, t);
            double fd1 = (cgf(beta, t + h) - cgf(beta, t - h)) / (2.0 * h);
            double fd2 = (cgf_derivs(beta, t + h).first - cgf_derivs(beta, t - h).first) /
                         (2.0 * h);
            CHECK(c1 == doctest::Approx(fd1).epsilon(1e-6).scale(1e-4));
            CHECK(c2 == doctest::Approx(fd2).epsilon(1e-6).scale(1e-4));
        }
    }
}

TEST_CASE("first derivative is odd and strictly increasing; second positive") {
    for (double beta : kBetas) {
        double prev = -2.0;
        for (int i = 0; i <= 400; ++i) {
            double t = -20.0 + 0.1 * i;
            auto [c1, c2] = cgf_derivs(beta, t);
            CHECK(c2 > 0.0);
            CHECK(c1 > prev);
            CHECK(c1 == doctest::Approx(-cgf_derivs(beta, -t).first).epsilon(1e-14));
            prev = c1;
        }
        CHECK(cgf_derivs(beta, 0.0).first == 0.0);
    }
}

TEST_CASE("second derivative spot value at the tricritical temperature") {
    // c''(0) = 2 e^-beta / (1 + 2 e^-beta) = 1/3 at beta = log 4
    CHECK(cgf_derivs(beta_critical, 0.0).second ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("third derivative matches finite differences of c''") {
    const double h = 1e-5;
    for (double beta : {1.0, 2.0}) {
        for (double t : {-3.0, -0.7, 0.4, 1.9, 5.0}) {
            double fd = (cgf_derivs(beta, t + h).second - cgf_derivs(beta, t - h).second) /
                        (2.0 * h);
            CHECK(cgf_third(beta, t) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
        }
    }
}

TEST_CASE("legendre transform basics") {
    for (double beta : kBetas) {
        CHECK(legendre(beta, 0.0) == 0.0);
        for (double z : {0.1, 0.5, 0.9, 0.999}) {
            CHECK(legendre(beta, z) == doctest::Approx(legendre(beta, -z)).epsilon(1e-13));
            CHECK(legendre(beta, z) >= 0.0);
        }
    }
    CHECK_THROWS_AS(legendre(1.0, 1.0001), std::domain_error);
    CHECK_THROWS_AS(legendre(1.0, -2.0), std::domain_error);
}

TEST_CASE("legendre boundary value at z = 1") {
    // analytic limit of t - c(t); 50-digit value for beta = 2
    CHECK(legendre(2.0, 1.0) == doctest::Approx(2.2395447662218845).epsilon(1e-13));
    // grid supremum over t in [0, 60], step 1e-4, as an independent oracle
    double best = 0.0;
    for (std::int64_t i = 0; i <= 600000; ++i) {
        double t = i * 1e-4;
        best = std::max(best, t - cgf(2.0, t));
    }
    CHECK(legendre(2.0, 1.0) == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("legendre agrees with a grid supremum in the interior") {
    for (double z : {0.2, 0.6}) {
        double best = 0.0;
        for (std::int64_t i = 0; i <= 200000; ++i) {
            double t = i * 1e-4;
            best = std::max(best, t * z - cgf(1.0, t));
        }
        CHECK(legendre(1.0, z) == doctest::Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("legendre duality: J' is the inverse of c'") {
    const double h = 1e-6;
    for (double beta : kBetas) {
        for (int i = 1; i < 40; ++i) {
            double z = -0.98 + 0.05 * i;
            if (std::fabs(z) < 0.01) continue;
            double fd = (legendre(beta, z + h) - legendre(beta, z - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(inv_cgf_deriv(beta, z)).epsilon(1e-6));
        }
    }
}

TEST_CASE("inv_cgf_deriv inverts the first derivative") {
    for (double beta : kBetas) {
        for (double z : {-0.9, -0.3, 0.0, 0.45, 0.99}) {
            double t = inv_cgf_deriv(beta, z);
            CHECK(cgf_derivs(beta, t).first == doctest::Approx(z).epsilon(1e-12));
        }
    }
}
