#pragma once

#include <cstdint>
#include <optional>

#include "pyramc/boundary.hpp"
#include "pyramc/geometry.hpp"
#include "pyramc/vec3.hpp"
#include "pyramc/walk.hpp"

namespace pyramc {

/// Monte Carlo estimate of the solution at one point, with sampling
/// diagnostics.  All fields except `elapsed_s` are deterministic functions of
/// (domain, spec, x, N, config) regardless of the worker count.
struct Estimate {
    double mean{0.0};
    std::uint64_t n_samples{0};
    double sample_std{0.0};
    double std_error{0.0};
    std::uint64_t edge_hits{0};
    double mean_steps{0.0};
    double elapsed_s{0.0};
    // diagnostics
    double min_value{0.0};
    double max_value{0.0};
    std::uint64_t max_steps_observed{0};
    std::optional<Vec3> source;  // set for point-source specs
};

/// Estimate u(x) as the mean boundary value over N independent trajectories
/// started at x.  Trajectory i always draws from substream (seed, i), and the
/// reduction runs over fixed-size blocks merged in index order, so the result
/// is bit-identical for any worker count.  threads = 0 uses all hardware
/// threads.
Estimate solve_at(const PyramidDomain& domain,
                  const BoundarySpec& spec,
                  Vec3 x,
                  std::uint64_t n_trajectories,
                  const WalkConfig& config,
                  unsigned threads = 0);

/// |estimate - 1/|x - x0||; requires an estimate produced with the matching
/// point-source spec (throws SpecMismatch otherwise).
double error_vs_exact(const Estimate& est, Vec3 x, Vec3 x0);

}  // namespace pyramc
