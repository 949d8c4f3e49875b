#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "pyramc/geometry.hpp"
#include "pyramc/kernels/dispatch.hpp"
#include "pyramc/vec3.hpp"

namespace pyramc {

/// Parameters of the quantized Wiener walk.  The step scale is 1/nq per
/// coordinate (1/nq = sqrt(t_k - t_{k-1})).  Tolerances left unset fall back
/// to the domain defaults (1e-12 resp. 1e-9 times the domain diameter).
struct WalkConfig {
    int nq{200};
    std::uint64_t max_steps{10'000'000};
    std::uint64_t seed{0};
    std::optional<double> eps_surf;
    std::optional<double> eps_edge;
    kernels::Isa isa{kernels::Isa::automatic};
};

/// Deterministic stream of independent standard normal deviates, identified
/// by (seed, trajectory index).  The stream is a pure function of its
/// position, so equal streams yield equal sequences no matter which thread
/// consumes them or how reads are batched.
class NormalStream {
  public:
    NormalStream(std::uint64_t seed, std::uint64_t trajectory_index)
        : seed_(seed), stream_(trajectory_index)
    {
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t trajectory_index() const { return stream_; }
    std::uint64_t position() const { return cursor_; }

    /// Next standard normal deviate.
    double next();

    /// Fill out[0..count) with the next deviates, each divided by `divisor`
    /// (the walk consumes pre-scaled increments; divisor 1 yields raw
    /// deviates).  Uses the kernel variant `isa`.
    void fill_scaled(double* out,
                     std::size_t count,
                     double divisor,
                     kernels::Isa isa = kernels::Isa::automatic);

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t cursor_{0};  // deviates consumed so far
};

/// One step of the quantized walk: x + (g1, g2, g3)/nq.
inline Vec3 wiener_step(Vec3 x_prev, Vec3 deviates, int nq)
{
    return {x_prev.x + deviates.x / nq, x_prev.y + deviates.y / nq, x_prev.z + deviates.z / nq};
}

/// Observer invoked with (x_prev, x_proposed) for every generated step,
/// including the one that exits.
using StepObserver = std::function<void(Vec3, Vec3)>;

/// Run one trajectory from `start` until it first crosses the surface.
/// Throws StartNotInside when the start point is not strictly interior and
/// MaxStepsExceeded when the cap is hit; propagates NoCandidateCrossing.
ExitEvent run_trajectory(const PyramidDomain& domain,
                         Vec3 start,
                         const WalkConfig& config,
                         NormalStream& stream);

ExitEvent run_trajectory_observed(const PyramidDomain& domain,
                                  Vec3 start,
                                  const WalkConfig& config,
                                  NormalStream& stream,
                                  const StepObserver& observer);

}  // namespace pyramc
