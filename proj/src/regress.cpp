#include "fracreg/regress.hpp"

#include <cmath>
#include <limits>

namespace fracreg {

void validate_series(const Series& s) {
    if (s.x.size() != s.y.size()) {
        throw DomainError("series: x and y lengths differ");
    }
    if (s.x.size() < 2) {
        throw DomainError("series: need at least two observations");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (s.x[i] < 0.0) {
            throw DomainError("series: x must be non-negative");
        }
        if (i > 0 && !(s.x[i] > s.x[i - 1])) {
            throw DomainError("series: x must be strictly increasing");
        }
    }
}

Eigen::MatrixXd design_matrix(const std::vector<double>& x, int m) {
    if (m < 0) {
        throw DomainError("design_matrix: degree must be non-negative");
    }
    if (x.empty()) {
        throw DomainError("design_matrix: no abscissae");
    }
    Eigen::MatrixXd X(static_cast<Eigen::Index>(x.size()), m + 1);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        double power = 1.0;
        for (int j = 0; j <= m; ++j) {
            X(i, j) = power;
            power *= x[static_cast<std::size_t>(i)];
        }
    }
    return X;
}

FitResult fit_least_squares(const Eigen::MatrixXd& X,
                            const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) {
        throw DomainError("fit_least_squares: row count mismatch");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols()) {
        throw RankDeficientError("fit_least_squares: design matrix is rank deficient");
    }
    FitResult result;
    result.beta = qr.solve(y);
    // Condition estimate from the pivoted R diagonal.
    const auto& R = qr.matrixR();
    const double r_max = std::abs(R(0, 0));
    const double r_min = std::abs(R(X.cols() - 1, X.cols() - 1));
    result.condition = (r_min > 0.0) ? r_max / r_min
                                     : std::numeric_limits<double>::infinity();
    result.ill_conditioned = result.condition > kConditionWarnThreshold;
    return result;
}

PolyModel fit_poly(const Series& s, int m) {
    validate_series(s);
    if (s.x.size() < static_cast<std::size_t>(m) + 1) {
        throw DomainError("fit_poly: fewer observations than coefficients");
    }
    const Eigen::MatrixXd X = design_matrix(s.x, m);
    const Eigen::VectorXd y =
        Eigen::Map<const Eigen::VectorXd>(s.y.data(),
                                          static_cast<Eigen::Index>(s.y.size()));
    const FitResult fit = fit_least_squares(X, y);
    PolyModel model;
    model.degree = m;
    model.coeffs.assign(fit.beta.data(), fit.beta.data() + fit.beta.size());
    return model;
}

double predict_poly(const PolyModel& model, double x) {
    double acc = 0.0;
    for (auto it = model.coeffs.rbegin(); it != model.coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double r_squared(const std::vector<double>& actual,
                 const std::vector<double>& predicted) {
    if (actual.size() != predicted.size()) {
        throw DomainError("r_squared: size mismatch");
    }
    if (actual.size() < 2) {
        throw DomainError("r_squared: need at least two observations");
    }
    double mean = 0.0;
    for (double v : actual) mean += v;
    mean /= static_cast<double>(actual.size());

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double res = actual[i] - predicted[i];
        const double dev = actual[i] - mean;
        ss_res += res * res;
        ss_tot += dev * dev;
    }
    if (ss_tot == 0.0) {
        throw DegenerateError("r_squared: actual values have zero variance");
    }
    return 1.0 - ss_res / ss_tot;
}

SplitSeries split_ordered(const Series& s, double test_fraction) {
    validate_series(s);
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw DomainError("split_ordered: test_fraction must lie in (0,1)");
    }
    const std::size_t n = s.size();
    if (n < 5) {
        throw DomainError("split_ordered: need at least five observations");
    }
    const auto test_size = static_cast<std::size_t>(
        std::ceil(test_fraction * static_cast<double>(n)));
    const std::size_t train_size = n - test_size;
    SplitSeries split;
    split.train.x.assign(s.x.begin(), s.x.begin() + train_size);
    split.train.y.assign(s.y.begin(), s.y.begin() + train_size);
    split.test.x.assign(s.x.begin() + train_size, s.x.end());
    split.test.y.assign(s.y.begin() + train_size, s.y.end());
    return split;
}

}  // namespace fracreg
