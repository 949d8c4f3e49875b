#include "pyramc/boundary.hpp"

#include <cmath>

#include "pyramc/errors.hpp"

namespace pyramc {

double evaluate(const BoundarySpec& spec, const ExitEvent& event, int n_faces)
{
    const RegionLabel r = event.region;
    const bool face_ok = r.is_face() && r.index >= 1 && r.index <= n_faces;
    const bool edge_ok = r.is_edge() && r.index >= 1 && r.index <= 2 * n_faces;
    if (!face_ok && !edge_ok && !r.is_base()) {
        throw Error(ErrorCode::region_index_out_of_range,
                    "event region " + to_string(r) + " does not exist for n="
                        + std::to_string(n_faces));
    }

    if (const auto* pw = std::get_if<PiecewiseConstant>(&spec)) {
        if (r.is_edge()) return PiecewiseConstant::edge_value;
        if (r.is_base()) return pw->base_value;
        if (std::size_t(r.index) > pw->face_values.size()) {
            throw Error(ErrorCode::region_index_out_of_range,
                        "no boundary value for face " + std::to_string(r.index));
        }
        return pw->face_values[std::size_t(r.index - 1)];
    }
    if (const auto* ps = std::get_if<PointSource>(&spec)) {
        return exact_value(event.point, ps->source);
    }
    return std::get<PerRegionFunction>(spec).fn(r, event.point);
}

double exact_value(Vec3 x, Vec3 x0)
{
    const double d = distance(x, x0);
    if (d == 0.0) {
        throw Error(ErrorCode::coincident_points, "evaluation point equals the source point");
    }
    return 1.0 / d;
}

void validate_spec(const BoundarySpec& spec, const PyramidDomain& domain)
{
    if (const auto* pw = std::get_if<PiecewiseConstant>(&spec)) {
        if (int(pw->face_values.size()) != domain.n()) {
            throw Error(ErrorCode::config_arity_mismatch,
                        std::to_string(pw->face_values.size()) + " face values for an n="
                            + std::to_string(domain.n()) + " pyramid");
        }
        return;
    }
    if (const auto* ps = std::get_if<PointSource>(&spec)) {
        if (!is_outside(classify_point(domain, ps->source))) {
            throw Error(ErrorCode::point_source_not_outside,
                        "the point source must lie strictly outside the closed pyramid");
        }
    }
}

}  // namespace pyramc
