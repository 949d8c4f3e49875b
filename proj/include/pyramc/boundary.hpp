#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "pyramc/geometry.hpp"
#include "pyramc/region.hpp"
#include "pyramc/vec3.hpp"

namespace pyramc {

/// Boundary data g on the surface: per-region values with jumps along the
/// edges.  Faces and the base carry one constant each; edges are fixed at 0
/// (they act as non-conductors).
struct PiecewiseConstant {
    std::vector<double> face_values;  // g_1..g_n
    double base_value{0.0};           // g_{n+1}
    static constexpr double edge_value = 0.0;
};

/// Classical test data g(y) = 1/|y - x0| for a source outside the closed
/// pyramid; the edges become removable discontinuities.
struct PointSource {
    Vec3 source;
};

/// Arbitrary continuous data per region (the general form of the problem;
/// the hook receives the region label and the surface point).
struct PerRegionFunction {
    std::function<double(RegionLabel, Vec3)> fn;
};

using BoundarySpec = std::variant<PiecewiseConstant, PointSource, PerRegionFunction>;

/// Boundary value at an exit event.  PiecewiseConstant maps faces/base/edges
/// to their constants; PointSource evaluates 1/|y - x0| regardless of the
/// region label.  Throws RegionIndexOutOfRange for a malformed event.
double evaluate(const BoundarySpec& spec, const ExitEvent& event, int n_faces);

/// Exact solution of the point-source test problem: 1/|x - x0|.
/// Throws CoincidentPoints when x == x0.
double exact_value(Vec3 x, Vec3 x0);

/// Validate a spec against a domain (face value count, source outside).
/// Throws on violation.
void validate_spec(const BoundarySpec& spec, const PyramidDomain& domain);

inline const PointSource* as_point_source(const BoundarySpec& spec)
{
    return std::get_if<PointSource>(&spec);
}

}  // namespace pyramc
