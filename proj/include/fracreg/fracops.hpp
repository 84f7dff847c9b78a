#pragma once

#include <functional>

#include "fracreg/errors.hpp"

namespace fracreg {

/// A single power term coeff * x^mu with mu > -1.
struct PowerTerm {
    double coeff = 0.0;
    double mu = 0.0;
};

/// Function sample for the quadrature oracles: an evaluator together with
/// the lower limit of integration.
struct SampledFunction {
    std::function<double(double)> eval;
    double lower_limit = 0.0;
};

/// Gamma(mu+1) / Gamma(mu-alpha+1), the scale factor the fractional operator
/// of order alpha applies to x^mu. Returns exactly 1 for alpha == 0.
///
/// Throws DomainError when mu <= -1, PoleError when mu-alpha+1 is a
/// non-positive integer.
double frac_power_coeff(double mu, double alpha);

/// Maps coeff * x^mu to (coeff * frac_power_coeff(mu, alpha)) * x^(mu-alpha).
/// alpha == 0 returns the input term unchanged.
PowerTerm apply_power_rule(const PowerTerm& term, double alpha);

/// Fractional integral of order alpha > 0 of f from its lower limit to x,
/// evaluated by quadrature:
///
///     (1/Gamma(alpha)) * integral_a^x (x-t)^(alpha-1) f(t) dt
///
/// The substitution u = (x-t)^alpha removes the endpoint singularity; the
/// remaining integrand is handled with composite Gauss-Legendre panels
/// graded toward u = 0. Total function evaluations ~ n_points.
///
/// Throws DomainError if alpha <= 0, x <= a, or n_points < 64.
double rl_integral_quad(const SampledFunction& f, double alpha, double x,
                        int n_points = 4096);

/// Fractional derivative of order alpha in (0,1) of f at x, evaluated as the
/// central finite difference of the order (1-alpha) fractional integral.
/// h <= 0 selects the default step 1e-4 * max(1, |x|).
double rl_derivative_quad(const SampledFunction& f, double alpha, double x,
                          double h = 0.0, int n_points = 4096);

/// Caputo derivative of order alpha in (0,1): the order (1-alpha) fractional
/// integral of the exact first derivative f_prime.
double caputo_derivative_quad(const SampledFunction& f,
                              const std::function<double(double)>& f_prime,
                              double alpha, double x, int n_points = 4096);

}  // namespace fracreg
