#pragma once

#include <vector>

#include "fracreg/regress.hpp"

namespace fracreg {

/// Fractional regression model: a fitted polynomial whose monomials x^i
/// (i >= 1) are replaced by their fractional images
/// Gamma(i+1)/Gamma(i-alpha+1) * x^(i-alpha). The intercept is untouched,
/// so the value at x = 0 stays beta_0. Effective degree is m - alpha.
struct FracModel {
    PolyModel base;
    double alpha = 0.0;
};

/// Throws DomainError unless alpha in (-1,1) and base.degree >= 1.
void validate_frac_model(const FracModel& model);

/// One grid point of the alpha sweep.
struct SweepRow {
    double alpha = 0.0;
    double effective_degree = 0.0;  // base.degree - alpha
    double r2_interp = 0.0;
    double r2_extrap = 0.0;
};

/// Whether sweep rows reuse the integer-order coefficients or refit them on
/// the fractional basis at every grid point.
enum class BetaMode { Fixed, Refit };

/// Evaluates the fractional model at x >= 0. alpha == 0 delegates to
/// predict_poly so the identity is bit-exact.
double predict_frac(const FracModel& model, double x);

/// Uniform alpha grid [lo, hi] with the given step; values within 1e-12 of
/// zero are snapped to exactly 0 so the identity row stays exact.
std::vector<double> alpha_grid(double lo, double hi, double step);

/// Evaluates every grid alpha on the split: interpolation R^2 on train,
/// extrapolation R^2 on test. In Fixed mode the coefficients stay at the
/// integer-order fit `base`; in Refit mode they are re-estimated per alpha
/// on the fractional train basis.
std::vector<SweepRow> sweep_alpha(const PolyModel& base,
                                  const SplitSeries& split,
                                  const std::vector<double>& grid,
                                  BetaMode mode = BetaMode::Fixed);

/// Sweep winner plus a flag for the degenerate sweep where no row has
/// positive interpolation R^2 (the best row is then the unconditional
/// extrapolation maximum).
struct Selection {
    SweepRow row;
    bool no_positive_interp = false;
};

/// Picks the row with maximal extrapolation R^2 among rows with positive
/// interpolation R^2; falls back to the overall extrapolation maximum.
/// Ties go to the smaller |alpha|, then to the smaller signed alpha.
/// Throws EmptyError on an empty list.
Selection select_best(const std::vector<SweepRow>& rows);

/// Least-squares refit of the coefficients on the fractional basis
/// {1, c_1 x^(1-alpha), ..., c_m x^(m-alpha)} with c_i the power-rule
/// scale factors. With alpha = 0 this coincides with the ordinary fit.
FracModel refit_per_alpha(const Series& train, int m, double alpha);

/// Fractional logistic model on features normalized to [0,1]:
/// logistic(beta_0 + sum_i beta_i * c(alpha) * x_i^(1-alpha)).
/// beta has one more entry than features (the intercept comes first).
double fractional_logistic(const std::vector<double>& features,
                           const std::vector<double>& beta, double alpha);

}  // namespace fracreg
