#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pyramc/kernels/plane_block.hpp"
#include "pyramc/region.hpp"
#include "pyramc/vec3.hpp"

namespace pyramc {

/// Line through two consecutive base vertices.  The normalized implicit form
/// p*x1 + q*x2 + r = 0 (p^2+q^2 = 1) is oriented so the value is positive on
/// the interior side; it is defined for every edge orientation.  The
/// slope/intercept pair x2 = k*x1 + c exists only when the edge is not
/// vertical.
struct EdgeLine {
    double p{0.0}, q{0.0}, r{0.0};
    std::optional<double> k;
    std::optional<double> c;
};

/// Lateral face plane A*x1 + B*x2 + C*x3 + D = 0 through the apex and two
/// consecutive base vertices, with signs fixed so the value is negative at
/// the base centroid (and therefore everywhere inside).
struct FacePlane {
    double a{0.0}, b{0.0}, c{0.0}, d{0.0};

    double value_at(Vec3 x) const { return (a * x.x + b * x.y) + (c * x.z + d); }
};

struct Inside {};
struct Outside {};
struct OnSurface {
    RegionLabel region;
};
using PointClass = std::variant<Inside, Outside, OnSurface>;

/// First intersection of a trajectory step with the pyramid surface.
struct ExitEvent {
    Vec3 point;
    RegionLabel region;
    double theta{1.0};       // fraction of the final step, 1 when the endpoint itself is on S
    std::uint64_t steps{1};  // steps taken by the trajectory (the walk fills this in)
};

/// Immutable analytic description of an irregular n-sided pyramid: apex at
/// (0,0,h), convex counter-clockwise base in the plane x3=0 strictly
/// containing the origin.  All derived coefficients are computed once at
/// construction; the object is safe to share across threads.
class PyramidDomain {
  public:
    int n() const { return int(base_.size()); }
    double height() const { return h_; }
    Vec3 apex() const { return {0.0, 0.0, h_}; }
    const std::vector<Vec2>& base_vertices() const { return base_; }
    const std::vector<EdgeLine>& edge_lines() const { return edges_; }
    const std::vector<FacePlane>& face_planes() const { return faces_; }
    const std::vector<double>& base_distances() const { return base_dist_; }
    const std::vector<double>& inclination_angles() const { return alpha_; }

    /// Base vertex m (1-based, wrapping: vertex(n+1) == vertex(1)).
    Vec2 vertex(int m) const { return base_[std::size_t((m - 1) % n())]; }

    double diameter() const { return diameter_; }
    Vec2 base_centroid() const { return centroid_; }

    /// Unit-normalized face planes padded for the step kernels.
    const kernels::PlaneBlock& plane_block() const { return planes_unit_; }

    /// Max |coefficient| over all face planes (residual tolerance scale).
    double coefficient_scale() const { return coeff_scale_; }

    /// Default tolerances, scaled by the domain diameter.
    double default_surface_eps() const { return 1e-12 * diameter_; }
    double default_edge_eps() const { return 1e-9 * diameter_; }

    /// Signed distance from x to the plane of lateral face m (1-based);
    /// negative inside.
    double face_distance(int m, Vec3 x) const
    {
        return kernels::scalar::plane_value(planes_unit_, std::size_t(m - 1), x.x, x.y, x.z);
    }

    /// 2D distance from (x1,x2) to base edge line m (1-based); positive on
    /// the interior side.
    double edge_line_value(int m, double x1, double x2) const
    {
        const EdgeLine& e = edges_[std::size_t(m - 1)];
        return e.p * x1 + e.q * x2 + e.r;
    }

    bool base_contains(double x1, double x2, double tol) const;

    /// Distance from a 3D point to edge k (1-based, 1..2n).
    double edge_distance(int k, Vec3 x) const;

    /// Endpoints of edge k (1-based, 1..2n).
    std::pair<Vec3, Vec3> edge_endpoints(int k) const;

  private:
    friend PyramidDomain build_domain(double h, const std::vector<Vec2>& base_vertices);

    std::vector<Vec2> base_;
    double h_{0.0};
    std::vector<EdgeLine> edges_;
    std::vector<FacePlane> faces_;
    std::vector<double> base_dist_;
    std::vector<double> alpha_;
    kernels::PlaneBlock planes_unit_;
    double diameter_{0.0};
    double coeff_scale_{0.0};
    Vec2 centroid_{};
};

/// Construct the pyramid description from the height and the ordered base
/// vertex list.  Throws Error on non-convex, clockwise or degenerate input,
/// on a base that does not strictly contain the origin, and on h <= 0.
PyramidDomain build_domain(double h, const std::vector<Vec2>& base_vertices);

/// Classify a point against the closed pyramid.  Points within eps_surf of
/// the surface are OnSurface (labelled with the nearest region, edges taking
/// precedence within eps_edge); otherwise strictly inside or outside.
PointClass classify_point(const PyramidDomain& domain, Vec3 x);
PointClass classify_point(const PyramidDomain& domain, Vec3 x, double eps_surf, double eps_edge);

inline bool is_inside(const PointClass& c) { return std::holds_alternative<Inside>(c); }
inline bool is_outside(const PointClass& c) { return std::holds_alternative<Outside>(c); }
inline const OnSurface* on_surface(const PointClass& c) { return std::get_if<OnSurface>(&c); }
const OnSurface* on_surface(PointClass&&) = delete;  // would dangle

/// Inclination angles beta_m = arctan(x3 / Delta_m) of the planes through x
/// and each base edge, where Delta_m is the 2D distance from (x1,x2) to the
/// edge line.  Delta_m = 0 maps to pi/2.
std::vector<double> beta_angles(const PyramidDomain& domain, Vec3 x);

/// First crossing of the segment x_prev -> x_next with the surface, or
/// nullopt while the step stays inside.  x_prev must be inside.  Resolution
/// order: endpoint on the surface within eps_surf exits at theta=1; otherwise
/// the smallest-theta sign-changing plane whose hit point lies in the closed
/// face wins; hit points within eps_edge of an edge are relabelled Edge(k).
std::optional<ExitEvent> intersect_step(const PyramidDomain& domain, Vec3 x_prev, Vec3 x_next);
std::optional<ExitEvent> intersect_step(
    const PyramidDomain& domain, Vec3 x_prev, Vec3 x_next, double eps_surf, double eps_edge);

}  // namespace pyramc
