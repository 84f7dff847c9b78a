#include <doctest.h>

#include <cmath>

#include "fracreg/fracops.hpp"
#include "fracreg/gamma.hpp"

using namespace fracreg;

namespace {

SampledFunction monomial(double mu, double a = 0.0) {
    return SampledFunction{[mu](double t) { return std::pow(t, mu); }, a};
}

}  // namespace

TEST_CASE("frac_power_coeff examples") {
    CHECK(frac_power_coeff(2.0, 0.0) == 1.0);
    CHECK(frac_power_coeff(2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(frac_power_coeff(1.0, 0.5) ==
          doctest::Approx(1.1283791670955126).epsilon(1e-12));
    CHECK_THROWS_AS(frac_power_coeff(-1.0, 0.5), DomainError);
    CHECK_THROWS_AS(frac_power_coeff(-1.5, 0.5), DomainError);
    // mu - alpha + 1 on a non-positive integer: Gamma pole.
    CHECK_THROWS_AS(frac_power_coeff(1.0, 2.0), PoleError);
}

TEST_CASE("apply_power_rule examples and identity") {
    const PowerTerm d = apply_power_rule({1.0, 2.0}, 1.0);
    CHECK(d.coeff == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(d.mu == doctest::Approx(1.0));

    const PowerTerm id = apply_power_rule({3.0, 1.0}, 0.0);
    CHECK(id.coeff == 3.0);
    CHECK(id.mu == 1.0);

    const PowerTerm half = apply_power_rule({1.0, 1.0}, 0.5);
    CHECK(half.coeff == doctest::Approx(1.1283791670955126).epsilon(1e-12));
    CHECK(half.mu == doctest::Approx(0.5));
}

TEST_CASE("identity is exact for arbitrary terms") {
    for (double mu : {-0.5, 0.0, 0.7, 1.0, 2.5, 4.0}) {
        for (double coeff : {-3.25, 0.1, 1.0, 17.0}) {
            const PowerTerm t{coeff, mu};
            const PowerTerm out = apply_power_rule(t, 0.0);
            CHECK(out.coeff == coeff);
            CHECK(out.mu == mu);
        }
    }
}

TEST_CASE("classical limit alpha -> 1") {
    for (int mu = 1; mu <= 5; ++mu) {
        const double c = frac_power_coeff(static_cast<double>(mu), 1.0 - 1e-6);
        CHECK(std::abs(c - mu) <= 1e-4 * mu);
    }
}

TEST_CASE("power rule composes like a semigroup on monomials") {
    const double alphas[] = {-0.5, -0.25, -0.1, 0.1, 0.25, 0.5};
    for (double mu : {0.5, 1.0, 2.0, 3.5}) {
        for (double a : alphas) {
            for (double b : alphas) {
                if (!(mu - b > -1.0)) continue;
                const PowerTerm once =
                    apply_power_rule(apply_power_rule({1.0, mu}, b), a);
                const PowerTerm direct = apply_power_rule({1.0, mu}, a + b);
                CHECK(std::abs(once.coeff - direct.coeff) <=
                      1e-10 * std::abs(direct.coeff));
                CHECK(once.mu == doctest::Approx(direct.mu).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("rl_integral_quad on elementary cases") {
    SampledFunction one{[](double) { return 1.0; }, 0.0};
    CHECK(rl_integral_quad(one, 1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-10));

    CHECK(rl_integral_quad(monomial(1.0), 1.0, 2.0) ==
          doctest::Approx(2.0).epsilon(1e-10));

    // Gamma(2)/Gamma(2.5) * x^{1.5} at x=1.
    CHECK(rl_integral_quad(monomial(1.0), 0.5, 1.0) ==
          doctest::Approx(0.7522527780636751).epsilon(1e-8));
}

TEST_CASE("rl_integral_quad converges as n_points grows") {
    const double want = gamma_ratio(2.0, 3.3) * std::pow(2.0, 2.3);
    double prev_err = 1e9;
    for (int n : {64, 256, 1024, 4096}) {
        const double got = rl_integral_quad(monomial(1.0), 1.3, 2.0, n);
        const double err = std::abs(got - want);
        CHECK(err <= prev_err + 1e-14);
        prev_err = err;
    }
    CHECK(prev_err <= 1e-9);
}

TEST_CASE("rl_integral_quad argument checks") {
    CHECK_THROWS_AS(rl_integral_quad(monomial(1.0), -0.5, 1.0), DomainError);
    CHECK_THROWS_AS(rl_integral_quad(monomial(1.0), 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(rl_integral_quad(monomial(1.0), 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(rl_integral_quad(monomial(1.0), 0.5, 1.0, 32), DomainError);
}

TEST_CASE("rl_derivative_quad against the closed form") {
    CHECK(rl_derivative_quad(monomial(1.0), 0.5, 1.0) ==
          doctest::Approx(1.1283791671).epsilon(1e-4));
    CHECK(rl_derivative_quad(monomial(2.0), 0.5, 1.0) ==
          doctest::Approx(1.5045055561273502).epsilon(1e-4));
    // The fractional derivative of a constant is nonzero:
    // c x^(-alpha) / Gamma(1-alpha).
    SampledFunction c{[](double) { return 2.5; }, 0.0};
    CHECK(rl_derivative_quad(c, 0.5, 1.0) ==
          doctest::Approx(2.5 * 0.5641895835).epsilon(1e-6));
    CHECK_THROWS_AS(rl_derivative_quad(monomial(1.0), 1.5, 1.0), DomainError);
    CHECK_THROWS_AS(rl_derivative_quad(monomial(1.0), 0.5, 0.0), DomainError);
}

TEST_CASE("caputo_derivative_quad against the closed form") {
    CHECK(caputo_derivative_quad(monomial(1.0),
                                 [](double) { return 1.0; }, 0.5, 1.0) ==
          doctest::Approx(1.1283791671).epsilon(1e-6));
    CHECK(caputo_derivative_quad(monomial(2.0),
                                 [](double t) { return 2.0 * t; }, 0.5, 1.0) ==
          doctest::Approx(1.5045055561).epsilon(1e-6));
    // Caputo of a constant vanishes.
    SampledFunction c{[](double) { return 42.0; }, 0.0};
    CHECK(caputo_derivative_quad(c, [](double) { return 0.0; }, 0.5, 1.0) ==
          0.0);
}

TEST_CASE("RL and Caputo agree on monomials vanishing at the origin") {
    for (double mu : {1.0, 2.0, 3.0}) {
        for (double alpha : {0.25, 0.5, 0.75}) {
            for (double x : {0.5, 1.0, 2.0}) {
                const double rl = rl_derivative_quad(monomial(mu), alpha, x);
                const double cap = caputo_derivative_quad(
                    monomial(mu),
                    [mu](double t) { return mu * std::pow(t, mu - 1.0); },
                    alpha, x);
                CHECK(std::abs(rl - cap) <=
                      1e-4 * std::max(1.0, std::abs(cap)));
            }
        }
    }
}

TEST_CASE("closed form matches the quadrature oracles") {
    // Integral oracle for alpha < 0, derivative oracle for alpha > 0.
    for (double mu : {1.0, 2.0, 3.0, 4.0}) {
        for (double alpha : {-0.5, -0.25, -0.1, 0.1, 0.25, 0.5}) {
            for (double x : {0.5, 1.0, 2.0}) {
                const double closed =
                    frac_power_coeff(mu, alpha) * std::pow(x, mu - alpha);
                const double oracle =
                    alpha < 0.0
                        ? rl_integral_quad(monomial(mu), -alpha, x)
                        : rl_derivative_quad(monomial(mu), alpha, x);
                CHECK(std::abs(closed - oracle) <= 1e-4 * std::abs(closed));
            }
        }
    }
}
