#include "ftq/distribution.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ftq/errors.hpp"
#include "ftq/quadrature.hpp"

namespace ftq {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double u) {
    // evaluate through the nearer tail for accuracy; clamp the argument to
    // where erfc_inv stays finite (the affected mass is below 1e-300)
    constexpr double tiny = 1e-300;
    if (u < tiny) u = tiny;
    if (u > 1.0 - 1e-16) u = 1.0 - 1e-16;
    if (u <= 0.5) return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
    return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * (1.0 - u));
}

double beta_cdf(const BetaParams& p, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(p.alpha, p.beta, x);
}

double beta_quantile(const BetaParams& p, double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return boost::math::ibeta_inv(p.alpha, p.beta, u);
}

void check_beta(const BetaParams& p, const char* which) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw DomainError(std::string(which) + " beta marginal needs alpha > 0 and beta > 0");
}

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

JointDistribution JointDistribution::independent_uniform() {
    JointDistribution d;
    d.kind_ = DistributionKind::IndependentUniform;
    return d;
}

JointDistribution JointDistribution::independent_beta(BetaParams y_marginal,
                                                      BetaParams theta_marginal) {
    check_beta(y_marginal, "income");
    check_beta(theta_marginal, "valuation");
    JointDistribution d;
    d.kind_ = DistributionKind::IndependentBeta;
    d.y_uniform_ = false;
    d.theta_uniform_ = false;
    d.y_params_ = y_marginal;
    d.theta_params_ = theta_marginal;
    return d;
}

JointDistribution JointDistribution::gaussian_copula(double correlation, BetaParams y_marginal,
                                                     BetaParams theta_marginal) {
    if (!(correlation > -1.0 && correlation < 1.0))
        throw DomainError("copula correlation must lie strictly inside (-1,1)");
    check_beta(y_marginal, "income");
    check_beta(theta_marginal, "valuation");
    JointDistribution d;
    d.kind_ = DistributionKind::GaussianCopula;
    d.y_uniform_ = false;
    d.theta_uniform_ = false;
    d.y_params_ = y_marginal;
    d.theta_params_ = theta_marginal;
    d.correlation_ = correlation;
    return d;
}

double JointDistribution::y_cdf(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return y_uniform_ ? y : beta_cdf(y_params_, y);
}

double JointDistribution::y_quantile(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return y_uniform_ ? u : beta_quantile(y_params_, u);
}

double JointDistribution::theta_cdf(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return theta_uniform_ ? t : beta_cdf(theta_params_, t);
}

double JointDistribution::theta_quantile(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return theta_uniform_ ? u : beta_quantile(theta_params_, u);
}

double JointDistribution::theta_tail_mass(double c) const {
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError("tail level must lie in [0,1]");
    return 1.0 - theta_cdf(c);
}

double JointDistribution::conditional_theta_tail(double u, double t) const {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double g = theta_cdf(t);
    if (kind_ != DistributionKind::GaussianCopula) return 1.0 - g;
    if (g <= 0.0) return 1.0;
    if (g >= 1.0) return 0.0;
    const double zt = normal_quantile(g);
    const double zu = normal_quantile(u);
    const double r = correlation_;
    return 1.0 - normal_cdf((zt - r * zu) / std::sqrt(1.0 - r * r));
}

double JointDistribution::mass_above_boundary(double y_lo, double y_hi,
                                              const std::function<double(double)>& boundary,
                                              double abs_tol) const {
    if (!(y_lo >= 0.0 && y_hi <= 1.0 && y_lo <= y_hi))
        throw DomainError("income interval must satisfy 0 <= y_lo <= y_hi <= 1");
    const double u_lo = y_cdf(y_lo);
    const double u_hi = y_cdf(y_hi);
    if (u_hi <= u_lo) return 0.0;
    // integrate on the probability scale of the y marginal: quantile
    // substitution removes any density singularity at the endpoints
    auto integrand = [&](double u) {
        return conditional_theta_tail(u, boundary(y_quantile(u)));
    };
    QuadratureResult q = integrate_adaptive(integrand, u_lo, u_hi, abs_tol);
    if (!q.converged)
        throw NumericalError("mass quadrature did not reach the requested tolerance",
                             q.error_estimate);
    if (q.value < 0.0) return 0.0;
    if (q.value > 1.0) return 1.0;
    return q.value;
}

double JointDistribution::rectangle_mass(double y_lo, double y_hi, double t_lo,
                                         double t_hi) const {
    if (!(y_lo >= 0.0 && y_hi <= 1.0 && y_lo <= y_hi))
        throw DomainError("income interval must satisfy 0 <= y_lo <= y_hi <= 1");
    if (!(t_lo >= 0.0 && t_hi <= 1.0 && t_lo <= t_hi))
        throw DomainError("valuation interval must satisfy 0 <= t_lo <= t_hi <= 1");
    if (kind_ != DistributionKind::GaussianCopula)
        return (y_cdf(y_hi) - y_cdf(y_lo)) * (theta_cdf(t_hi) - theta_cdf(t_lo));
    const double above_lo = mass_above_boundary(y_lo, y_hi, [t_lo](double) { return t_lo; });
    const double above_hi = mass_above_boundary(y_lo, y_hi, [t_hi](double) { return t_hi; });
    double m = above_lo - above_hi;
    return m < 0.0 ? 0.0 : m;
}

Agent JointDistribution::sample(Rng& rng) const {
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    if (kind_ != DistributionKind::GaussianCopula)
        return Agent(y_quantile(u1), theta_quantile(u2));
    const double z1 = normal_quantile(u1);
    const double z2 = correlation_ * z1 + std::sqrt(1.0 - correlation_ * correlation_) *
                                              normal_quantile(u2);
    return Agent(y_quantile(u1), theta_quantile(normal_cdf(z2)));
}

std::string JointDistribution::describe() const {
    switch (kind_) {
        case DistributionKind::IndependentUniform: return "uniform";
        case DistributionKind::IndependentBeta:
            return "beta:" + format_full(y_params_.alpha) + "," + format_full(y_params_.beta) +
                   "," + format_full(theta_params_.alpha) + "," + format_full(theta_params_.beta);
        case DistributionKind::GaussianCopula:
            return "copula:" + format_full(correlation_) + "," + format_full(y_params_.alpha) +
                   "," + format_full(y_params_.beta) + "," + format_full(theta_params_.alpha) +
                   "," + format_full(theta_params_.beta);
    }
    throw UnsupportedDistributionError("unknown distribution kind");
}

JointDistribution JointDistribution::from_descriptor(const std::string& descriptor) {
    if (descriptor == "uniform") return independent_uniform();
    auto parse_tail = [&](const std::string& tail, std::size_t expected) {
        std::vector<double> out;
        std::stringstream ss(tail);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        if (out.size() != expected)
            throw UnsupportedDistributionError("malformed distribution descriptor: " + descriptor);
        return out;
    };
    if (descriptor.rfind("beta:", 0) == 0) {
        auto p = parse_tail(descriptor.substr(5), 4);
        return independent_beta({p[0], p[1]}, {p[2], p[3]});
    }
    if (descriptor.rfind("copula:", 0) == 0) {
        auto p = parse_tail(descriptor.substr(7), 5);
        return gaussian_copula(p[0], {p[1], p[2]}, {p[3], p[4]});
    }
    throw UnsupportedDistributionError("unknown distribution descriptor: " + descriptor);
}

} // namespace ftq
