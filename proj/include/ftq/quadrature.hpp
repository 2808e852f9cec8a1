#pragma once

#include <functional>
#include <vector>

namespace ftq {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
    bool converged = true;
};

/// Fixed-order Gauss-Legendre rule on [-1,1]. Nodes and weights are computed
/// once by Newton iteration on the Legendre recurrence.
class GaussLegendre {
public:
    explicit GaussLegendre(int order);

    double integrate(const std::function<double(double)>& f, double a, double b) const;

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Adaptive composite Gauss-Legendre on [a,b]. An interval is accepted when
/// its one-panel and two-panel estimates agree within the interval's share
/// of abs_tol; otherwise it is bisected. `converged` is false when the
/// interval budget ran out before the error estimate dropped below abs_tol.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-10, int order = 20,
                                    int max_intervals = 20000);

} // namespace ftq
