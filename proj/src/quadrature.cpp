#include "ftq/quadrature.hpp"

#include <cmath>
#include <deque>
#include <optional>

#include "ftq/errors.hpp"

namespace ftq {

GaussLegendre::GaussLegendre(int order) {
    if (order < 2) throw DomainError("Gauss-Legendre order must be at least 2");
    const int n = order;
    nodes_.assign(static_cast<std::size_t>(n), 0.0);
    weights_.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root of P_n
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z_prev = z;
            z = z_prev - p1 / pp;
            if (std::abs(z - z_prev) < 1e-15) break;
        }
        nodes_[static_cast<std::size_t>(i)] = -z;
        nodes_[static_cast<std::size_t>(n - 1 - i)] = z;
        weights_[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights_[static_cast<std::size_t>(n - 1 - i)] = weights_[static_cast<std::size_t>(i)];
    }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        sum += weights_[i] * f(mid + halfwidth * nodes_[i]);
    return sum * halfwidth;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int order, int max_intervals) {
    QuadratureResult result;
    if (a == b) return result;
    if (b < a) throw DomainError("integration bounds out of order");

    static const GaussLegendre rule20(20);
    std::optional<GaussLegendre> custom;
    if (order != 20) custom.emplace(order);
    const GaussLegendre& rule = custom ? *custom : rule20;

    struct Interval {
        double a, b, coarse, tol;
    };
    std::deque<Interval> work;
    work.push_back({a, b, rule.integrate(f, a, b), abs_tol});
    result.intervals = 1;

    while (!work.empty()) {
        Interval it = work.back();
        work.pop_back();
        const double mid = 0.5 * (it.a + it.b);
        const double left = rule.integrate(f, it.a, mid);
        const double right = rule.integrate(f, mid, it.b);
        const double refined = left + right;
        const double diff = std::abs(refined - it.coarse);
        const bool budget_left = result.intervals + 2 <= max_intervals;
        const bool splittable = mid > it.a && mid < it.b;
        if (diff <= it.tol || !splittable || !budget_left) {
            result.value += refined;
            result.error_estimate += diff;
            if (diff > it.tol) result.converged = false;
        } else {
            work.push_back({it.a, mid, left, 0.5 * it.tol});
            work.push_back({mid, it.b, right, 0.5 * it.tol});
            result.intervals += 2;
        }
    }
    if (result.error_estimate > abs_tol) result.converged = false;
    return result;
}

} // namespace ftq
