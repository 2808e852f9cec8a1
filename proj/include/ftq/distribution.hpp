#pragma once

#include <functional>
#include <string>

#include "ftq/agent.hpp"
#include "ftq/rng.hpp"

namespace ftq {

/// Parameters of a beta(alpha, beta) marginal on [0,1].
struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;
};

enum class DistributionKind { IndependentUniform, IndependentBeta, GaussianCopula };

/// Joint population law F(y, theta) on the unit square with continuous
/// marginals. Answers the mass queries the clearing integrals need and
/// provides a deterministic sampler. Instances are immutable; every method
/// is safe to call concurrently.
class JointDistribution {
public:
    static JointDistribution independent_uniform();
    static JointDistribution independent_beta(BetaParams y_marginal, BetaParams theta_marginal);
    /// Gaussian copula with correlation in (-1,1) and beta marginals.
    static JointDistribution gaussian_copula(double correlation, BetaParams y_marginal,
                                             BetaParams theta_marginal);

    DistributionKind kind() const { return kind_; }
    double correlation() const { return correlation_; }

    /// P(y in [y_lo, y_hi], theta in [t_lo, t_hi]).
    double rectangle_mass(double y_lo, double y_hi, double t_lo, double t_hi) const;

    /// Tail mass M(c) = P(theta >= c). Marginal-only, hence analytic for
    /// every supported family.
    double theta_tail_mass(double c) const;

    /// P(y in [y_lo, y_hi], theta >= boundary(y)) for a boundary monotone in
    /// y. Computed by adaptive quadrature over the y-marginal's probability
    /// scale; the inner theta tail is analytic. Throws NumericalError when
    /// the quadrature cannot reach abs_tol.
    double mass_above_boundary(double y_lo, double y_hi,
                               const std::function<double(double)>& boundary,
                               double abs_tol = 1e-10) const;

    /// P(theta >= t | F_y(y) = u); u must lie strictly inside (0,1) for the
    /// copula family.
    double conditional_theta_tail(double u, double t) const;

    double y_cdf(double y) const;
    double y_quantile(double u) const;
    double theta_cdf(double t) const;
    double theta_quantile(double u) const;

    /// One i.i.d. draw. Consumes exactly two uniforms from the stream.
    Agent sample(Rng& rng) const;

    /// Canonical descriptor round-tripping through from_descriptor.
    std::string describe() const;
    static JointDistribution from_descriptor(const std::string& descriptor);

private:
    JointDistribution() = default;

    DistributionKind kind_ = DistributionKind::IndependentUniform;
    bool y_uniform_ = true;
    bool theta_uniform_ = true;
    BetaParams y_params_;
    BetaParams theta_params_;
    double correlation_ = 0.0;
};

} // namespace ftq
