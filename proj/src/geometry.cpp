#include "ftq/geometry.hpp"

#include <cmath>

#include "ftq/bisect.hpp"
#include "ftq/errors.hpp"

namespace ftq {

namespace {

Polyline vertical_line(const std::string& id, double theta) {
    Polyline line;
    line.id = id;
    line.samples = {{0.0, theta}, {1.0, theta}};
    return line;
}

/// First income at which the boundary drops to the valuation ceiling.
double curve_start(const BoundaryCurve& boundary) {
    if (boundary.theta_at(boundary.y_min) <= 1.0) return boundary.y_min;
    auto f = [&](double y) { return boundary.theta_at(y) - 1.0; };
    BisectResult r = bisect(f, boundary.y_min, 1.0, {1e-13, 1e-12, 200});
    return r.x;
}

} // namespace

RegionGeometry region_geometry(const BoundaryCurve& boundary, double free_cost,
                               double single_cost, int resolution) {
    if (resolution < 2) throw DomainError("sampling resolution must be at least 2");
    if (!(free_cost >= 0.0 && free_cost <= 1.0) || !(single_cost >= 0.0 && single_cost <= 1.0))
        throw DomainError("costs must lie in [0,1]");

    RegionGeometry geo;
    geo.boundaries.push_back(vertical_line("single_cost", single_cost));
    geo.boundaries.push_back(vertical_line("free_cost", free_cost));

    Polyline curve;
    curve.id = "paid_boundary";
    const double y0 = curve_start(boundary);
    for (int i = 0; i < resolution; ++i) {
        const double y = i + 1 == resolution
                             ? 1.0
                             : y0 + (1.0 - y0) * static_cast<double>(i) / (resolution - 1);
        curve.samples.push_back({y, boundary.clipped(y)});
    }
    geo.boundaries.push_back(std::move(curve));

    const IncomeThreshold lower = solve_income_threshold(boundary, free_cost);
    if (lower.interior())
        geo.points.push_back({"P", free_cost, lower.income});
    else
        geo.notices.push_back("P omitted: the paid boundary does not cross theta = c1");

    const IncomeThreshold upper = solve_income_threshold(boundary, single_cost);
    if (upper.interior())
        geo.points.push_back({"P_prime", single_cost, upper.income});
    else
        geo.notices.push_back("P' omitted: the paid boundary does not cross theta = c");

    return geo;
}

RegionGeometry region_geometry(const ValueFunction& v, const PrioritySystem& system,
                               double single_cost, int resolution) {
    return region_geometry(priority_boundary(v, system), system.free_cost(), single_cost,
                           resolution);
}

} // namespace ftq
