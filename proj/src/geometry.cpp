#include "pyramc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pyramc/errors.hpp"

namespace pyramc {
namespace {

Vec3 lift(Vec2 v) { return {v.x, v.y, 0.0}; }

double point_segment_distance(Vec3 p, Vec3 a, Vec3 b)
{
    const Vec3 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

// Closest-point distance to the closed triangle (a,b,c).
double point_triangle_distance(Vec3 p, Vec3 a, Vec3 b, Vec3 c)
{
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;

    const double d1 = dot(ab, ap);
    const double d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return distance(p, a);

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp);
    const double d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return distance(p, b);

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return distance(p, a + v * ab);
    }

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp);
    const double d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return distance(p, c);

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return distance(p, a + w * ac);
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return distance(p, b + w * (c - b));
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return distance(p, a + v * ab + w * ac);
}

// 2D point-in-triangle with a distance tolerance (tol >= 0 admits a band of
// width tol outside each edge).  Works for either vertex orientation.
bool triangle_contains_2d(Vec2 p0, Vec2 p1, Vec2 p2, double ux, double uy, double tol)
{
    const double orient = cross2(p1 - p0, p2 - p0);
    const double sign = orient >= 0.0 ? 1.0 : -1.0;
    const Vec2 u{ux, uy};
    const Vec2 tri[3] = {p0, p1, p2};
    for (int i = 0; i < 3; ++i) {
        const Vec2 e = tri[(i + 1) % 3] - tri[i];
        const double len = norm2d(e);
        if (len == 0.0) return false;
        const double s = sign * cross2(e, u - tri[i]);
        if (s < -tol * len) return false;
    }
    return true;
}

constexpr int base_constraint = 0;  // constraint indices: 0 = base, 1..n = lateral faces

}  // namespace

PyramidDomain build_domain(double h, const std::vector<Vec2>& base_vertices)
{
    if (!(h > 0.0)) {
        throw Error(ErrorCode::non_positive_height, "height must be positive, got " + std::to_string(h));
    }
    const int n = int(base_vertices.size());
    if (n < 3) {
        throw Error(ErrorCode::non_convex_base, "base needs at least 3 vertices, got " + std::to_string(n));
    }

    auto at = [&](int i) { return base_vertices[std::size_t(((i % n) + n) % n)]; };

    for (int m = 0; m < n; ++m) {
        if (at(m) == at(m + 1)) {
            throw Error(ErrorCode::degenerate_edge,
                        "base vertices " + std::to_string(m + 1) + " and "
                            + std::to_string((m + 1) % n + 1) + " coincide");
        }
    }

    double area2 = 0.0;
    for (int m = 0; m < n; ++m) area2 += cross2(at(m), at(m + 1));
    if (area2 < 0.0) {
        throw Error(ErrorCode::clockwise_order, "base vertices are ordered clockwise");
    }

    for (int m = 0; m < n; ++m) {
        const double turn = cross2(at(m + 1) - at(m), at(m + 2) - at(m + 1));
        if (!(turn > 0.0)) {
            throw Error(ErrorCode::non_convex_base,
                        "base polygon is not strictly convex at vertex "
                            + std::to_string((m + 1) % n + 1));
        }
    }

    PyramidDomain dom;
    dom.base_ = base_vertices;
    dom.h_ = h;
    dom.edges_.resize(std::size_t(n));
    dom.faces_.resize(std::size_t(n));
    dom.base_dist_.resize(std::size_t(n));
    dom.alpha_.resize(std::size_t(n));

    Vec2 centroid{};
    for (const Vec2& v : base_vertices) {
        centroid.x += v.x / n;
        centroid.y += v.y / n;
    }
    dom.centroid_ = centroid;

    const auto sn = std::size_t(n);
    std::vector<double> ua(sn), ub(sn), uc(sn), ud(sn);

    for (int m = 0; m < n; ++m) {
        const Vec2 v0 = at(m);
        const Vec2 v1 = at(m + 1);
        const Vec2 e = v1 - v0;
        const double len = norm2d(e);

        EdgeLine& line = dom.edges_[std::size_t(m)];
        line.p = -e.y / len;
        line.q = e.x / len;
        line.r = -(line.p * v0.x + line.q * v0.y);
        if (v0.x != v1.x) {
            line.k = (v0.y - v1.y) / (v0.x - v1.x);
            line.c = (v0.x * v1.y - v0.y * v1.x) / (v0.x - v1.x);
        }

        const double d = line.r;  // value at the origin = interior distance
        if (!(d > 0.0)) {
            throw Error(ErrorCode::origin_outside_base,
                        "origin is not strictly inside the base polygon (edge "
                            + std::to_string(m + 1) + ")");
        }
        dom.base_dist_[std::size_t(m)] = d;
        dom.alpha_[std::size_t(m)] = std::atan(h / d);

        FacePlane& f = dom.faces_[std::size_t(m)];
        f.a = h * (v1.y - v0.y);
        f.b = -h * (v1.x - v0.x);
        f.c = v0.x * v1.y - v1.x * v0.y;
        f.d = -f.c * h;
        if (f.value_at({centroid.x, centroid.y, 0.0}) > 0.0) {
            f.a = -f.a;
            f.b = -f.b;
            f.c = -f.c;
            f.d = -f.d;
        }

        const double s = std::sqrt((f.a * f.a + f.b * f.b) + f.c * f.c);
        ua[std::size_t(m)] = f.a / s;
        ub[std::size_t(m)] = f.b / s;
        uc[std::size_t(m)] = f.c / s;
        ud[std::size_t(m)] = f.d / s;
    }

    dom.planes_unit_.assign(ua, ub, uc, ud);

    double diam = 0.0;
    std::vector<Vec3> verts;
    verts.reserve(std::size_t(n) + 1);
    for (const Vec2& v : base_vertices) verts.push_back(lift(v));
    verts.push_back(dom.apex());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            diam = std::max(diam, distance(verts[i], verts[j]));
        }
    }
    dom.diameter_ = diam;

    double scale = 0.0;
    for (const FacePlane& f : dom.faces_) {
        scale = std::max({scale, std::fabs(f.a), std::fabs(f.b), std::fabs(f.c), std::fabs(f.d)});
    }
    dom.coeff_scale_ = scale;

    return dom;
}

bool PyramidDomain::base_contains(double x1, double x2, double tol) const
{
    for (int m = 1; m <= n(); ++m) {
        if (edge_line_value(m, x1, x2) < -tol) return false;
    }
    return true;
}

std::pair<Vec3, Vec3> PyramidDomain::edge_endpoints(int k) const
{
    if (k <= n()) return {lift(vertex(k)), lift(vertex(k + 1))};
    return {apex(), lift(vertex(k - n()))};
}

double PyramidDomain::edge_distance(int k, Vec3 x) const
{
    const auto [a, b] = edge_endpoints(k);
    return point_segment_distance(x, a, b);
}

namespace {

// Index of the nearest edge if within eps_edge, else 0.
int nearest_edge_within(const PyramidDomain& dom, Vec3 x, double eps_edge)
{
    int best = 0;
    double best_d = eps_edge;
    for (int k = 1; k <= 2 * dom.n(); ++k) {
        const double d = dom.edge_distance(k, x);
        if (d <= best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

RegionLabel with_edge_relabel(const PyramidDomain& dom, Vec3 x, RegionLabel region, double eps_edge)
{
    if (const int k = nearest_edge_within(dom, x, eps_edge)) return RegionLabel::edge(k);
    return region;
}

}  // namespace

PointClass classify_point(const PyramidDomain& domain, Vec3 x)
{
    return classify_point(domain, x, domain.default_surface_eps(), domain.default_edge_eps());
}

PointClass classify_point(const PyramidDomain& domain, Vec3 x, double eps_surf, double eps_edge)
{
    const int n = domain.n();

    double max_sd = -x.z;  // base plane, negative inside
    for (int m = 1; m <= n; ++m) max_sd = std::max(max_sd, domain.face_distance(m, x));
    if (max_sd < -eps_surf) return Inside{};

    // Not strictly interior: measure the true distance to each closed face.
    const Vec3 apex = domain.apex();
    double best_dist = std::numeric_limits<double>::infinity();
    RegionLabel best_region = RegionLabel::base_of(n);

    for (int m = 1; m <= n; ++m) {
        const Vec3 a{domain.vertex(m).x, domain.vertex(m).y, 0.0};
        const Vec3 b{domain.vertex(m + 1).x, domain.vertex(m + 1).y, 0.0};
        const double d = point_triangle_distance(x, apex, a, b);
        if (d < best_dist) {
            best_dist = d;
            best_region = RegionLabel::face(m);
        }
    }
    {
        double d;
        if (domain.base_contains(x.x, x.y, 0.0)) {
            d = std::fabs(x.z);
        } else {
            double d2 = std::numeric_limits<double>::infinity();
            for (int k = 1; k <= n; ++k) {
                const auto [a, b] = domain.edge_endpoints(k);
                d2 = std::min(d2, point_segment_distance({x.x, x.y, 0.0}, a, b));
            }
            d = std::hypot(d2, x.z);
        }
        if (d < best_dist) {
            best_dist = d;
            best_region = RegionLabel::base_of(n);
        }
    }

    if (best_dist > eps_surf) return Outside{};
    return OnSurface{with_edge_relabel(domain, x, best_region, eps_edge)};
}

std::vector<double> beta_angles(const PyramidDomain& domain, Vec3 x)
{
    std::vector<double> beta(std::size_t(domain.n()));
    for (int m = 1; m <= domain.n(); ++m) {
        const double delta = std::fabs(domain.edge_line_value(m, x.x, x.y));
        beta[std::size_t(m - 1)] = std::atan2(x.z, delta);
    }
    return beta;
}

std::optional<ExitEvent> intersect_step(const PyramidDomain& domain, Vec3 x_prev, Vec3 x_next)
{
    return intersect_step(domain, x_prev, x_next, domain.default_surface_eps(),
                          domain.default_edge_eps());
}

std::optional<ExitEvent> intersect_step(
    const PyramidDomain& domain, Vec3 x_prev, Vec3 x_next, double eps_surf, double eps_edge)
{
    const int n = domain.n();

    // Signed distances at the step endpoint; constraint 0 is the base.
    double sd_next_base = -x_next.z;
    double max_sd = sd_next_base;
    int max_idx = base_constraint;
    std::vector<double> sd_next(static_cast<std::size_t>(n), 0.0);
    for (int m = 1; m <= n; ++m) {
        const double v = domain.face_distance(m, x_next);
        sd_next[std::size_t(m - 1)] = v;
        if (v > max_sd) {
            max_sd = v;
            max_idx = m;
        }
    }

    if (max_sd < -eps_surf) return std::nullopt;  // case 1: still inside

    const auto label_of = [&](int constraint) {
        return constraint == base_constraint ? RegionLabel::base_of(n)
                                             : RegionLabel::face(constraint);
    };

    if (max_sd <= eps_surf) {
        // Cases 2 and 4: the endpoint itself lies on the surface.
        ExitEvent ev{x_next, with_edge_relabel(domain, x_next, label_of(max_idx), eps_edge), 1.0, 1};
        return ev;
    }

    // Cases 3 and 5: the step crossed the surface; take the smallest-theta
    // sign-changing plane whose hit point lies in the closed face.
    const double face_tol = std::max(eps_edge, 1e-12 * domain.diameter());
    double best_theta = std::numeric_limits<double>::infinity();
    Vec3 best_point{};
    int best_idx = -1;

    const auto consider = [&](int constraint, double v_prev, double v_next) {
        if (!(v_prev < 0.0) || !(v_next > 0.0)) return;
        double theta = v_prev / (v_prev - v_next);
        theta = std::clamp(theta, 0.0, 1.0);
        const Vec3 hit = x_prev + theta * (x_next - x_prev);
        if (constraint == base_constraint) {
            if (!domain.base_contains(hit.x, hit.y, face_tol)) return;
        } else {
            const Vec2 a = domain.vertex(constraint);
            const Vec2 b = domain.vertex(constraint + 1);
            if (!triangle_contains_2d({0.0, 0.0}, a, b, hit.x, hit.y, face_tol)) return;
        }
        if (theta < best_theta) {
            best_theta = theta;
            best_point = hit;
            best_idx = constraint;
        }
    };

    consider(base_constraint, -x_prev.z, sd_next_base);
    for (int m = 1; m <= n; ++m) {
        consider(m, domain.face_distance(m, x_prev), sd_next[std::size_t(m - 1)]);
    }

    if (best_idx < 0) {
        throw Error(ErrorCode::no_candidate_crossing,
                    "step endpoint is outside but no face crossing qualifies; "
                    "the step is larger than the domain");
    }

    // Exit points land on the exact plane; pin the base exit to x3 = 0 so the
    // residual is zero rather than a rounding remnant of the lerp.
    if (best_idx == base_constraint) best_point.z = 0.0;

    ExitEvent ev{best_point, with_edge_relabel(domain, best_point, label_of(best_idx), eps_edge),
                 best_theta, 1};
    return ev;
}

}  // namespace pyramc
