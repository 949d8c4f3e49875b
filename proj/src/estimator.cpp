#include "pyramc/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "pyramc/errors.hpp"

namespace pyramc {
namespace {

struct Kahan {
    double sum{0.0};
    double comp{0.0};  // running overshoot; the represented value is sum - comp

    void add(double v)
    {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum - comp; }
};

// One block of consecutive trajectories; trajectories are striped into
// fixed-size blocks so the partial sums (and therefore the final reduction)
// do not depend on which worker computed them.
struct BlockResult {
    Kahan sum_g;
    Kahan sum_g2;
    std::uint64_t steps{0};
    std::uint64_t edge_hits{0};
    std::uint64_t max_steps{0};
    double min_g{std::numeric_limits<double>::infinity()};
    double max_g{-std::numeric_limits<double>::infinity()};
};

constexpr std::uint64_t block_size = 1024;

}  // namespace

Estimate solve_at(const PyramidDomain& domain,
                  const BoundarySpec& spec,
                  Vec3 x,
                  std::uint64_t n_trajectories,
                  const WalkConfig& config,
                  unsigned threads)
{
    const auto t0 = std::chrono::steady_clock::now();

    if (n_trajectories == 0) {
        throw Error(ErrorCode::spec_mismatch, "trajectory count must be positive");
    }
    if (!is_inside(classify_point(domain, x, config.eps_surf.value_or(domain.default_surface_eps()),
                                  config.eps_edge.value_or(domain.default_edge_eps())))) {
        throw Error(ErrorCode::start_not_inside, "evaluation point is not strictly inside");
    }
    validate_spec(spec, domain);

    const std::uint64_t n_blocks = (n_trajectories + block_size - 1) / block_size;
    std::vector<BlockResult> blocks(n_blocks);

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> cap_hits{0};
    std::atomic<bool> abort{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const int n_faces = domain.n();

    auto worker = [&]() {
        try {
            while (!abort.load(std::memory_order_relaxed)) {
                const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
                if (b >= n_blocks) return;
                BlockResult& res = blocks[b];
                const std::uint64_t lo = b * block_size;
                const std::uint64_t hi = std::min(lo + block_size, n_trajectories);
                for (std::uint64_t i = lo; i < hi; ++i) {
                    NormalStream stream(config.seed, i);
                    ExitEvent ev;
                    try {
                        ev = run_trajectory(domain, x, config, stream);
                    } catch (const Error& e) {
                        if (e.code() == ErrorCode::max_steps_exceeded) {
                            cap_hits.fetch_add(1, std::memory_order_relaxed);
                            abort.store(true, std::memory_order_relaxed);
                            return;
                        }
                        throw;
                    }
                    const double g = evaluate(spec, ev, n_faces);
                    res.sum_g.add(g);
                    res.sum_g2.add(g * g);
                    res.steps += ev.steps;
                    res.max_steps = std::max(res.max_steps, ev.steps);
                    res.min_g = std::min(res.min_g, g);
                    res.max_g = std::max(res.max_g, g);
                    if (ev.region.is_edge()) ++res.edge_hits;
                }
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            abort.store(true, std::memory_order_relaxed);
        }
    };

    unsigned n_workers = threads != 0 ? threads : std::thread::hardware_concurrency();
    n_workers = std::max(1u, std::min<unsigned>(n_workers, 256));

    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    if (first_error) std::rethrow_exception(first_error);
    if (const std::uint64_t hits = cap_hits.load()) {
        throw Error(ErrorCode::max_steps_exceeded,
                    std::to_string(hits) + " trajectory(ies) exceeded the step cap of "
                        + std::to_string(config.max_steps));
    }

    // Deterministic reduction: blocks merged in index order.
    Kahan total_g;
    Kahan total_g2;
    Estimate est;
    est.n_samples = n_trajectories;
    est.min_value = std::numeric_limits<double>::infinity();
    est.max_value = -std::numeric_limits<double>::infinity();
    std::uint64_t total_steps = 0;
    for (const BlockResult& res : blocks) {
        total_g.add(res.sum_g.sum);
        total_g.add(-res.sum_g.comp);
        total_g2.add(res.sum_g2.sum);
        total_g2.add(-res.sum_g2.comp);
        total_steps += res.steps;
        est.edge_hits += res.edge_hits;
        est.max_steps_observed = std::max(est.max_steps_observed, res.max_steps);
        est.min_value = std::min(est.min_value, res.min_g);
        est.max_value = std::max(est.max_value, res.max_g);
    }

    const double n = double(n_trajectories);
    est.mean = total_g.value() / n;
    if (n_trajectories > 1) {
        const double var
            = std::max(0.0, (total_g2.value() - n * est.mean * est.mean) / (n - 1.0));
        est.sample_std = std::sqrt(var);
        est.std_error = est.sample_std / std::sqrt(n);
    }
    est.mean_steps = double(total_steps) / n;
    if (const auto* ps = as_point_source(spec)) est.source = ps->source;

    est.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return est;
}

double error_vs_exact(const Estimate& est, Vec3 x, Vec3 x0)
{
    if (!est.source.has_value() || !(*est.source == x0)) {
        throw Error(ErrorCode::spec_mismatch,
                    "estimate was not produced with a point-source spec at the given source");
    }
    return std::fabs(est.mean - exact_value(x, x0));
}

}  // namespace pyramc
