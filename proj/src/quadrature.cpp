#include "fracreg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fracreg {

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: evaluates P_n(x) and P_{n-1}(x).
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 256) {
        throw std::invalid_argument("gauss_legendre: order out of range");
    }
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, compute_rule(n)).first;
    }
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int points_per_panel, double grading) {
    if (panels < 1) {
        throw std::invalid_argument("integrate: panels < 1");
    }
    const GaussRule& rule = gauss_legendre(points_per_panel);
    const double length = b - a;
    double total = 0.0;
    double left = a;
    for (int k = 0; k < panels; ++k) {
        const double frac = static_cast<double>(k + 1) / panels;
        const double right =
            (k + 1 == panels) ? b : a + length * std::pow(frac, grading);
        const double mid = 0.5 * (left + right);
        const double half = 0.5 * (right - left);
        double panel_sum = 0.0;
        for (int i = 0; i < points_per_panel; ++i) {
            panel_sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
        }
        total += panel_sum * half;
        left = right;
    }
    return total;
}

}  // namespace fracreg
