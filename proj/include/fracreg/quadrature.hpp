#pragma once

#include <functional>
#include <vector>

namespace fracreg {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Computed once per n via Newton iteration on the Legendre recurrence and
/// cached.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre integral of f over [a, b] using `panels` panels
/// of the n-point rule. Panel breakpoints may be graded toward `a` with
/// exponent `grading` (1 = uniform) to absorb weak endpoint non-smoothness.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int points_per_panel = 16, double grading = 1.0);

}  // namespace fracreg
