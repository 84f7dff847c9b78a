#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fracreg/errors.hpp"

namespace fracreg {

/// Ordered (x, y) observations. x is the month index (strictly increasing,
/// non-negative), y the observed value.
struct Series {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
};

/// Throws DomainError unless |x| = |y| >= 2, x strictly increasing, x >= 0.
void validate_series(const Series& s);

/// Degree-m polynomial y(x) = beta_0 + beta_1 x + ... + beta_m x^m.
struct PolyModel {
    int degree = 0;
    std::vector<double> coeffs;  // beta_0 .. beta_m
};

/// Chronological train/test partition: train is the leading prefix.
struct SplitSeries {
    Series train;
    Series test;
};

/// Least-squares solution plus conditioning diagnostics. `ill_conditioned`
/// flags condition estimates above 1e10; the fit is still returned.
struct FitResult {
    Eigen::VectorXd beta;
    double condition = 0.0;
    bool ill_conditioned = false;
};

inline constexpr double kConditionWarnThreshold = 1e10;

/// Vandermonde design matrix: row i = [1, x_i, x_i^2, ..., x_i^m].
Eigen::MatrixXd design_matrix(const std::vector<double>& x, int m);

/// Minimizes ||y - X beta||_2 with a column-pivoted QR factorization.
/// Throws RankDeficientError when rank(X) < columns.
FitResult fit_least_squares(const Eigen::MatrixXd& X,
                            const Eigen::VectorXd& y);

/// Convenience: fit a degree-m polynomial to a series. Throws DomainError
/// when the series has fewer than m+1 observations (underdetermined).
PolyModel fit_poly(const Series& s, int m);

/// Horner evaluation.
double predict_poly(const PolyModel& model, double x);

/// Coefficient of determination 1 - SSres/SStot. May be negative. Throws
/// DegenerateError when all actual values are identical and DomainError on
/// size mismatch or fewer than two points.
double r_squared(const std::vector<double>& actual,
                 const std::vector<double>& predicted);

/// Ordered split: the last ceil(test_fraction * N) points form the test
/// (extrapolation) part, the leading prefix the train (interpolation) part.
/// Requires 0 < test_fraction < 1 and |s| >= 5.
SplitSeries split_ordered(const Series& s, double test_fraction = 0.2);

}  // namespace fracreg
