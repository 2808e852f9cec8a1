#include "ftq/value_function.hpp"

#include <cmath>
#include <vector>

#include "ftq/errors.hpp"

namespace ftq {

ValueFunction ValueFunction::square_root() {
    return ValueFunction(ValueFunctionKind::SquareRoot, 0.0);
}

ValueFunction ValueFunction::shifted_log() {
    return ValueFunction(ValueFunctionKind::ShiftedLog, 0.0);
}

ValueFunction ValueFunction::crra(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw DomainError("CRRA gamma must lie strictly inside (0,1)");
    return ValueFunction(ValueFunctionKind::Crra, gamma);
}

double ValueFunction::operator()(double y) const {
    if (!(y >= 0.0 && y <= 1.0)) throw DomainError("income must lie in [0,1]");
    switch (kind_) {
        case ValueFunctionKind::SquareRoot: return std::sqrt(y);
        case ValueFunctionKind::ShiftedLog: return std::log1p(y);
        case ValueFunctionKind::Crra: return std::pow(y, 1.0 - gamma_) / (1.0 - gamma_);
    }
    throw DomainError("unknown value function kind");
}

std::string ValueFunction::name() const {
    switch (kind_) {
        case ValueFunctionKind::SquareRoot: return "sqrt";
        case ValueFunctionKind::ShiftedLog: return "log1p";
        case ValueFunctionKind::Crra: return "crra(" + std::to_string(gamma_) + ")";
    }
    return "unknown";
}

double theta_star(const ValueFunction& v, double income, double price) {
    if (!(income >= 0.0 && income <= 1.0)) throw DomainError("income must lie in [0,1]");
    if (!(price >= 0.0 && price <= 1.0)) throw DomainError("price must lie in [0,1]");
    if (price > income)
        throw AffordabilityError("price exceeds income: the fast track is unaffordable");
    if (price == 0.0) return 0.0;
    return v(income) - v(income - price);
}

bool strictly_increasing_on_grid(const ValueFunction& v, int n) {
    if (n < 2) throw DomainError("grid needs at least two points");
    double prev = v(0.0);
    for (int i = 1; i < n; ++i) {
        double cur = v(static_cast<double>(i) / (n - 1));
        if (!(cur > prev)) return false;
        prev = cur;
    }
    return true;
}

bool strictly_concave_on_grid(const ValueFunction& v, int n, double tol) {
    if (n < 3) throw DomainError("grid needs at least three points");
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = v(static_cast<double>(i) / (n - 1));
    // midpoint test v((a+b)/2) > (v(a)+v(b))/2 at several pair spacings
    for (int stride : {1, 10, 100, 500}) {
        if (2 * stride >= n) break;
        for (int i = 0; i + 2 * stride < n; ++i) {
            double mid = vals[static_cast<std::size_t>(i + stride)];
            double avg = 0.5 * (vals[static_cast<std::size_t>(i)] +
                                vals[static_cast<std::size_t>(i + 2 * stride)]);
            if (!(mid - avg > tol)) return false;
        }
    }
    return true;
}

} // namespace ftq
