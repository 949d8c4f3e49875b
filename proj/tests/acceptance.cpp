// Acceptance suite: end-to-end checks of the solver against the benchmark
// reference values and the library's hard invariants.  Each criterion prints
// one PASS/FAIL line; the process exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pyramc/estimator.hpp"
#include "pyramc/kernels/dispatch.hpp"

#include "domains.hpp"
#include "oracle_geometry.hpp"

using namespace pyramc;

namespace {

constexpr std::uint64_t acceptance_seed = 20240811;

int failures = 0;
std::chrono::steady_clock::time_point t_start;

void begin() { t_start = std::chrono::steady_clock::now(); }

void report(int idx, const char* name, bool ok, const std::string& detail)
{
    const double secs
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::printf("[%2d/10] %-42s %s  (%s; %.1fs)\n", idx, name, ok ? "PASS" : "FAIL",
                detail.c_str(), secs);
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char* format, ...)
{
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

WalkConfig config_with(int nq)
{
    WalkConfig cfg;
    cfg.nq = nq;
    cfg.seed = acceptance_seed;
    return cfg;
}

const BoundarySpec example1_boundary = PiecewiseConstant{{3.0, 2.0, 1.0}, 4.0};
const BoundarySpec example2_boundary
    = PiecewiseConstant{{1.0, 0.0, 2.0, 1.0, 3.0, 0.0, 1.0, 2.0}, 4.0};
const Vec3 source{0.0, 0.0, -4.0};

// --- criteria ---------------------------------------------------------------

void criterion1_constant_exactness()
{
    begin();
    const BoundarySpec constant = PerRegionFunction{[](RegionLabel, Vec3) { return 7.0; }};
    bool ok = true;
    for (const PyramidDomain& dom : {example1_domain(), example2_domain()}) {
        for (const std::uint64_t seed : {1ull, 424242ull}) {
            WalkConfig cfg = config_with(80);
            cfg.seed = seed;
            for (const std::uint64_t n : {1ull, 37ull, 2000ull}) {
                const Estimate est = solve_at(dom, constant, {0.0, 0.0, 0.5}, n, cfg);
                ok = ok && est.mean == 7.0 && est.std_error == 0.0;
            }
        }
    }
    report(1, "constant-boundary exactness (bit-exact)", ok, ok ? "mean == 7 exactly" : "drift");
}

void criterion2_validation_example1()
{
    begin();
    const PyramidDomain dom = example1_domain();
    const Estimate est
        = solve_at(dom, BoundarySpec{PointSource{source}}, {0.0, 0.0, 0.5}, 100000,
                   config_with(200));
    const double err = error_vs_exact(est, {0.0, 0.0, 0.5}, source);
    report(2, "point-source validation, 3-sided pyramid", err <= 1e-3,
           fmt("|u-1/4.5| = %.2e <= 1e-3, se = %.1e", err, est.std_error));
}

void criterion3_validation_example2()
{
    begin();
    const PyramidDomain dom = example2_domain();
    const Estimate est = solve_at(dom, BoundarySpec{PointSource{source}}, {0.0, 0.0, 1.0},
                                  100000, config_with(300));
    const double err = error_vs_exact(est, {0.0, 0.0, 1.0}, source);
    report(3, "point-source validation, 8-sided pyramid", err <= 1e-3,
           fmt("|u-0.2| = %.2e <= 1e-3, se = %.1e", err, est.std_error));
}

Estimate criterion4_10_runs[3];  // workers 1, 4, 8

void criterion4_generalized_example1()
{
    begin();
    const PyramidDomain dom = example1_domain();
    const unsigned workers[3] = {1, 4, 8};
    for (int i = 0; i < 3; ++i) {
        criterion4_10_runs[i] = solve_at(dom, example1_boundary, {0.0, 0.0, 0.2}, 100000,
                                         config_with(400), workers[i]);
    }
    const Estimate& est = criterion4_10_runs[1];
    const double dev_near = std::fabs(est.mean - 3.42644);
    const double dev_far = std::fabs(est.mean - 3.42202);
    const bool ok = dev_near <= 0.02 && dev_far <= 4.0 * est.std_error;
    report(4, "generalized problem, 3-sided pyramid", ok,
           fmt("u = %.5f (|d1e5| = %.4f <= 0.02, |d1e6| = %.4f <= %.4f)", est.mean, dev_near,
               dev_far, 4.0 * est.std_error));
}

Estimate criterion5_estimate;

void criterion5_generalized_example2()
{
    begin();
    const PyramidDomain dom = example2_domain();
    criterion5_estimate = solve_at(dom, example2_boundary, {0.0, 0.0, 1.8}, 100000,
                                   config_with(400));
    const double dev = std::fabs(criterion5_estimate.mean - 1.05812);
    report(5, "generalized problem, 8-sided pyramid", dev <= 0.02,
           fmt("u = %.5f, |u - 1.05812| = %.4f <= 0.02", criterion5_estimate.mean, dev));
}

void criterion6_extremum_principle()
{
    begin();
    // Both boundary data sets range over [0, 4]; the solution must lie
    // strictly inside that interval.
    bool ok = true;
    for (const Estimate* est : {&criterion4_10_runs[1], &criterion5_estimate}) {
        ok = ok && est->mean > 0.0 && est->mean < 4.0;
    }
    report(6, "extremum principle on criteria 4-5", ok,
           fmt("u = %.5f and %.5f in (0, 4)", criterion4_10_runs[1].mean,
               criterion5_estimate.mean));
}

void criterion7_classifier_oracle()
{
    begin();
    std::uint64_t mismatches = 0;
    std::uint64_t beta_mismatches = 0;
    std::uint64_t compared = 0;
    std::uint64_t beta_compared = 0;

    oracle::SplitMix64 rng(0x0acce97);
    for (const PyramidDomain& dom : {example1_domain(), example2_domain()}) {
        const oracle::BruteDomain brute(dom.height(), dom.base_vertices());
        double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
        for (const Vec2& v : dom.base_vertices()) {
            lo_x = std::min(lo_x, v.x);
            hi_x = std::max(hi_x, v.x);
            lo_y = std::min(lo_y, v.y);
            hi_y = std::max(hi_y, v.y);
        }
        const double shell = dom.default_surface_eps();

        for (int i = 0; i < 100000; ++i) {
            const Vec3 x{rng.uniform(lo_x - 0.3, hi_x + 0.3), rng.uniform(lo_y - 0.3, hi_y + 0.3),
                         rng.uniform(-0.3, dom.height() + 0.3)};
            if (brute.min_plane_distance(x) <= shell) continue;
            ++compared;
            const bool brute_inside = brute.strictly_inside(x);
            const PointClass c = classify_point(dom, x);
            if (brute_inside != is_inside(c) || (!brute_inside) != is_outside(c)) ++mismatches;

            // The beta/alpha test where its distance is signed-correct.
            bool interior_projection = x.z > 0.0;
            for (int m = 1; m <= dom.n() && interior_projection; ++m) {
                interior_projection = dom.edge_line_value(m, x.x, x.y) > 1e-9;
            }
            if (interior_projection) {
                ++beta_compared;
                const auto beta = beta_angles(dom, x);
                bool beta_inside = x.z < dom.height();
                for (int m = 0; m < dom.n(); ++m) {
                    beta_inside = beta_inside
                                  && beta[std::size_t(m)]
                                         < dom.inclination_angles()[std::size_t(m)];
                }
                if (beta_inside != is_inside(c)) ++beta_mismatches;
            }
        }
    }
    const bool ok = mismatches == 0 && beta_mismatches == 0;
    report(7, "geometry oracle equivalence (2x1e5 points)", ok,
           fmt("%llu half-space + %llu beta mismatches over %llu/%llu points",
               static_cast<unsigned long long>(mismatches),
               static_cast<unsigned long long>(beta_mismatches),
               static_cast<unsigned long long>(compared),
               static_cast<unsigned long long>(beta_compared)));
}

void criterion8_intersection_contract()
{
    begin();
    std::uint64_t bad = 0;
    std::uint64_t tested = 0;
    oracle::SplitMix64 rng(0x8e9);

    for (const PyramidDomain& dom : {example1_domain(), example2_domain()}) {
        const oracle::BruteDomain brute(dom.height(), dom.base_vertices());
        const double res_tol = 1e-9 * dom.coefficient_scale();
        int done = 0;
        while (done < 10000) {
            const Vec3 a{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0, dom.height())};
            if (!brute.strictly_inside(a) || brute.min_plane_distance(a) < 1e-9) continue;
            Vec3 dir{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const double len = norm(dir);
            if (len < 1e-3) continue;
            // Mix of far jumps and barely-outside steps.
            const double scale = (done % 2 == 0) ? 2.0 * dom.diameter()
                                                 : 1e-3 * dom.diameter() / len;
            const Vec3 b = a + (scale / len) * dir;
            if (!brute.strictly_outside(b)) {
                if (done % 2 != 0) continue;  // short step stayed inside; redraw
            }
            ++done;
            ++tested;

            std::optional<ExitEvent> ev;
            try {
                ev = intersect_step(dom, a, b);
            } catch (...) {
                ++bad;
                continue;
            }
            if (!ev.has_value()) {
                // Legal iff the endpoint is still inside (short-step redraws).
                if (brute.strictly_outside(b)) ++bad;
                continue;
            }

            bool ok = ev->theta >= 0.0 && ev->theta <= 1.0;
            const double slack = 1e-12 * (1.0 + dom.diameter());
            ok = ok && ev->point.x >= std::min(a.x, b.x) - slack
                 && ev->point.x <= std::max(a.x, b.x) + slack
                 && ev->point.y >= std::min(a.y, b.y) - slack
                 && ev->point.y <= std::max(a.y, b.y) + slack
                 && ev->point.z >= std::min(a.z, b.z) - slack
                 && ev->point.z <= std::max(a.z, b.z) + slack;

            double residual = std::numeric_limits<double>::infinity();
            if (ev->region.is_base()) {
                residual = std::fabs(ev->point.z) * dom.coefficient_scale();
            } else {
                for (int m = 1; m <= dom.n(); ++m) {
                    residual = std::min(residual,
                                        std::fabs(dom.face_planes()[std::size_t(m - 1)]
                                                      .value_at(ev->point)));
                }
                residual = std::min(residual, std::fabs(ev->point.z) * dom.coefficient_scale());
            }
            ok = ok && residual <= res_tol;
            if (!ok) ++bad;
        }
    }
    report(8, "intersection contract (2x1e4 segments)", bad == 0,
           fmt("%llu violations over %llu segments", static_cast<unsigned long long>(bad),
               static_cast<unsigned long long>(tested)));
}

void criterion9_step_statistics()
{
    begin();
    const PyramidDomain dom = example1_domain();
    WalkConfig cfg = config_with(200);

    const std::uint64_t target = 1'200'000;
    std::vector<double> sum(3, 0.0), sumsq(3, 0.0);
    std::uint64_t n = 0;
    std::uint64_t traj = 0;
    while (n < target) {
        NormalStream stream(cfg.seed, traj++);
        run_trajectory_observed(dom, {0.0, 0.0, 0.5}, cfg, stream, [&](Vec3 prev, Vec3 next) {
            const double d[3] = {next.x - prev.x, next.y - prev.y, next.z - prev.z};
            for (int c = 0; c < 3; ++c) {
                sum[std::size_t(c)] += d[c];
                sumsq[std::size_t(c)] += d[c] * d[c];
            }
            ++n;
        });
    }

    const double expected = 2.5e-5;  // 1/nq^2 at nq=200
    bool ok = true;
    double worst_sigmas = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double mean = sum[std::size_t(c)] / double(n);
        const double var = sumsq[std::size_t(c)] / double(n) - mean * mean;
        const double se = var * std::sqrt(2.0 / double(n - 1));
        worst_sigmas = std::max(worst_sigmas, std::fabs(var - expected) / se);
        ok = ok && std::fabs(var - expected) <= 3.0 * se;
    }
    report(9, "step variance = 1/nq^2 (1.2e6 steps)", ok,
           fmt("worst coordinate at %.2f sigma (<= 3)", worst_sigmas));
}

void criterion10_worker_reproducibility()
{
    begin();
    const Estimate& w1 = criterion4_10_runs[0];
    const Estimate& w4 = criterion4_10_runs[1];
    const Estimate& w8 = criterion4_10_runs[2];
    const bool ok = w1.mean == w4.mean && w4.mean == w8.mean
                    && w1.sample_std == w4.sample_std && w4.sample_std == w8.sample_std
                    && w1.edge_hits == w4.edge_hits && w4.edge_hits == w8.edge_hits
                    && w1.mean_steps == w4.mean_steps && w4.mean_steps == w8.mean_steps;
    report(10, "bit-identical estimates with 1/4/8 workers", ok,
           fmt("mean = %.17g for all worker counts", w4.mean));
}

}  // namespace

int main()
{
    std::printf("acceptance suite: seed %llu, kernels %s\n",
                static_cast<unsigned long long>(acceptance_seed),
                kernels::avx2_supported() ? "avx2" : "scalar");

    criterion1_constant_exactness();
    criterion2_validation_example1();
    criterion3_validation_example2();
    criterion4_generalized_example1();
    criterion5_generalized_example2();
    criterion6_extremum_principle();
    criterion7_classifier_oracle();
    criterion8_intersection_contract();
    criterion9_step_statistics();
    criterion10_worker_reproducibility();

    std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
