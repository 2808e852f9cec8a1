#pragma once

#include <string>
#include <vector>

#include "ftq/boundary.hpp"

namespace ftq {

struct CurveSample {
    double income = 0.0;
    double theta = 0.0;
};

struct Polyline {
    std::string id;
    std::vector<CurveSample> samples;
};

struct LabeledPoint {
    std::string label;
    double theta = 0.0;
    double income = 0.0;
};

/// Figure geometry: the vertical cost lines theta = c and theta = c1, the
/// paid-participation curve theta = g(y) sampled where it stays within the
/// valuation range, and the special points P = (c1, y_lower) and
/// P' = (c, y_upper) when their defining equations have interior roots.
struct RegionGeometry {
    std::vector<Polyline> boundaries;
    std::vector<LabeledPoint> points;
    std::vector<std::string> notices;
};

RegionGeometry region_geometry(const BoundaryCurve& boundary, double free_cost,
                               double single_cost, int resolution);

RegionGeometry region_geometry(const ValueFunction& v, const PrioritySystem& system,
                               double single_cost, int resolution);

} // namespace ftq
