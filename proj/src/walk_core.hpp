#pragma once

// Internal: the trajectory inner loop, instantiated once per kernel variant
// (walk_scalar.cpp and walk_avx2.cpp) so the step test inlines without a
// per-step indirect call.

#include <cstddef>
#include <cstdint>

#include "pyramc/errors.hpp"
#include "pyramc/geometry.hpp"
#include "pyramc/walk.hpp"

namespace pyramc::detail {

struct NoObserver {
    void operator()(Vec3, Vec3) const {}
};

template <class Kern, class Obs>
ExitEvent run_trajectory_core(const PyramidDomain& domain,
                              Vec3 start,
                              const WalkConfig& config,
                              NormalStream& stream,
                              Obs&& observe)
{
    const double eps_surf = config.eps_surf.value_or(domain.default_surface_eps());
    const double eps_edge = config.eps_edge.value_or(domain.default_edge_eps());

    if (!is_inside(classify_point(domain, start, eps_surf, eps_edge))) {
        throw Error(ErrorCode::start_not_inside, "trajectory start point is not strictly inside");
    }

    const kernels::PlaneBlock& planes = domain.plane_block();
    const double divisor = double(config.nq);

    constexpr std::size_t buf_len = 384;  // multiple of 6: whole steps per refill
    double buf[buf_len];
    std::size_t pos = buf_len;

    Vec3 x = start;
    std::uint64_t steps = 0;

    while (true) {
        if (steps >= config.max_steps) {
            throw Error(ErrorCode::max_steps_exceeded,
                        "trajectory exceeded " + std::to_string(config.max_steps) + " steps");
        }
        if (pos + 3 > buf_len) {
            stream.fill_scaled(buf, buf_len, divisor, Kern::isa);
            pos = 0;
        }
        const Vec3 next{x.x + buf[pos], x.y + buf[pos + 1], x.z + buf[pos + 2]};
        pos += 3;
        ++steps;
        observe(x, next);

        if (next.z > eps_surf && Kern::all_below(planes, next.x, next.y, next.z, eps_surf)) {
            x = next;
            continue;
        }

        // The step left the eps_surf-interior; resolve the crossing.
        if (auto ev = intersect_step(domain, x, next, eps_surf, eps_edge)) {
            ev->steps = steps;
            return *ev;
        }
        // Unreachable for consistent kernels: the fast test and case 1 use
        // the same predicate.  Accept the point and keep walking.
        x = next;
    }
}

// Per-variant entry points (defined in walk_scalar.cpp / walk_avx2.cpp).
ExitEvent run_trajectory_scalar(const PyramidDomain&, Vec3, const WalkConfig&, NormalStream&);
ExitEvent run_trajectory_scalar_observed(
    const PyramidDomain&, Vec3, const WalkConfig&, NormalStream&, const StepObserver&);
ExitEvent run_trajectory_avx2(const PyramidDomain&, Vec3, const WalkConfig&, NormalStream&);
ExitEvent run_trajectory_avx2_observed(
    const PyramidDomain&, Vec3, const WalkConfig&, NormalStream&, const StepObserver&);

}  // namespace pyramc::detail
