#include "fracreg/fracmodel.hpp"

#include <cmath>

#include "fracreg/fracops.hpp"

namespace fracreg {

namespace {

std::vector<double> predict_frac_many(const FracModel& model,
                                      const std::vector<double>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(predict_frac(model, x));
    return out;
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

}  // namespace

void validate_frac_model(const FracModel& model) {
    if (!(model.alpha > -1.0 && model.alpha < 1.0)) {
        throw DomainError("frac model: alpha must lie in (-1,1)");
    }
    if (model.base.degree < 1) {
        throw DomainError("frac model: base degree must be >= 1");
    }
    if (model.base.coeffs.size() !=
        static_cast<std::size_t>(model.base.degree) + 1) {
        throw DomainError("frac model: coefficient count does not match degree");
    }
}

double predict_frac(const FracModel& model, double x) {
    validate_frac_model(model);
    if (x < 0.0) {
        throw DomainError("predict_frac: x must be non-negative");
    }
    if (model.alpha == 0.0) {
        return predict_poly(model.base, x);  // identity, bit-exact
    }
    double acc = model.base.coeffs[0];
    for (int i = 1; i <= model.base.degree; ++i) {
        const double mu = static_cast<double>(i);
        acc += model.base.coeffs[static_cast<std::size_t>(i)] *
               frac_power_coeff(mu, model.alpha) *
               std::pow(x, mu - model.alpha);
    }
    return acc;
}

std::vector<double> alpha_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw DomainError("alpha_grid: need step > 0 and hi >= lo");
    }
    const int count = static_cast<int>(std::round((hi - lo) / step));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count) + 1);
    for (int i = 0; i <= count; ++i) {
        double a = lo + i * step;
        if (std::abs(a) < 1e-12) a = 0.0;
        grid.push_back(a);
    }
    return grid;
}

std::vector<SweepRow> sweep_alpha(const PolyModel& base,
                                  const SplitSeries& split,
                                  const std::vector<double>& grid,
                                  BetaMode mode) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double alpha : grid) {
        if (!(alpha > -1.0 && alpha < 1.0)) {
            throw DomainError("sweep_alpha: grid alpha outside (-1,1)");
        }
        FracModel model{base, alpha};
        if (mode == BetaMode::Refit) {
            model = refit_per_alpha(split.train, base.degree, alpha);
        }
        SweepRow row;
        row.alpha = alpha;
        row.effective_degree = static_cast<double>(base.degree) - alpha;
        row.r2_interp =
            r_squared(split.train.y, predict_frac_many(model, split.train.x));
        row.r2_extrap =
            r_squared(split.test.y, predict_frac_many(model, split.test.x));
        rows.push_back(row);
    }
    return rows;
}

Selection select_best(const std::vector<SweepRow>& rows) {
    if (rows.empty()) {
        throw EmptyError("select_best: no sweep rows");
    }
    auto better = [](const SweepRow& a, const SweepRow& b) {
        if (a.r2_extrap != b.r2_extrap) return a.r2_extrap > b.r2_extrap;
        if (std::abs(a.alpha) != std::abs(b.alpha)) {
            return std::abs(a.alpha) < std::abs(b.alpha);
        }
        return a.alpha < b.alpha;
    };
    const SweepRow* best_positive = nullptr;
    const SweepRow* best_any = nullptr;
    for (const SweepRow& row : rows) {
        if (!best_any || better(row, *best_any)) best_any = &row;
        if (row.r2_interp > 0.0 &&
            (!best_positive || better(row, *best_positive))) {
            best_positive = &row;
        }
    }
    if (best_positive) {
        return Selection{*best_positive, false};
    }
    return Selection{*best_any, true};
}

FracModel refit_per_alpha(const Series& train, int m, double alpha) {
    validate_series(train);
    if (m < 1) {
        throw DomainError("refit_per_alpha: degree must be >= 1");
    }
    if (!(alpha > -1.0 && alpha < 1.0)) {
        throw DomainError("refit_per_alpha: alpha must lie in (-1,1)");
    }
    if (train.size() < static_cast<std::size_t>(m) + 1) {
        throw DomainError("refit_per_alpha: fewer observations than coefficients");
    }
    Eigen::MatrixXd X(static_cast<Eigen::Index>(train.size()), m + 1);
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        const double x = train.x[static_cast<std::size_t>(r)];
        X(r, 0) = 1.0;
        for (int i = 1; i <= m; ++i) {
            const double mu = static_cast<double>(i);
            X(r, i) = frac_power_coeff(mu, alpha) * std::pow(x, mu - alpha);
        }
    }
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
        train.y.data(), static_cast<Eigen::Index>(train.y.size()));
    const FitResult fit = fit_least_squares(X, y);
    FracModel model;
    model.base.degree = m;
    model.base.coeffs.assign(fit.beta.data(),
                             fit.beta.data() + fit.beta.size());
    model.alpha = alpha;
    return model;
}

double fractional_logistic(const std::vector<double>& features,
                           const std::vector<double>& beta, double alpha) {
    if (!(alpha > -1.0 && alpha < 1.0)) {
        throw DomainError("fractional_logistic: alpha must lie in (-1,1)");
    }
    if (beta.size() != features.size() + 1) {
        throw DomainError("fractional_logistic: beta must have one entry per "
                          "feature plus the intercept");
    }
    double acc = beta[0];
    const double scale = frac_power_coeff(1.0, alpha);
    for (std::size_t i = 0; i < features.size(); ++i) {
        const double x = features[i];
        if (!(x >= 0.0 && x <= 1.0)) {
            throw DomainError("fractional_logistic: features must lie in [0,1]");
        }
        const double powered =
            (alpha == 0.0) ? x : std::pow(x, 1.0 - alpha);
        acc += beta[i + 1] * scale * powered;
    }
    return logistic(acc);
}

}  // namespace fracreg
