// Monte Carlo solver for Dirichlet harmonic problems in irregular pyramids:
// walks quantized Wiener trajectories to their first surface exit and
// averages the boundary data there.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "pyramc/errors.hpp"
#include "pyramc/experiment.hpp"
#include "pyramc/kernels/dispatch.hpp"
#include "pyramc/numfmt.hpp"

namespace {

using namespace pyramc;

struct CommonFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;
    std::string out_path;
    std::string format = "report";
};

void add_common(CLI::App* cmd, CommonFlags& flags)
{
    cmd->add_option("config", flags.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", flags.seed, "override the config seed")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--threads", flags.threads, "worker threads (0 = all hardware threads)");
    cmd->add_option("--out", flags.out_path, "write the CSV table to this path");
    cmd->add_option("--format", flags.format, "stdout format: csv|report")
        ->check(CLI::IsMember({"csv", "report"}));
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

RunOptions options_from(const CommonFlags& flags, const ExperimentConfig& cfg)
{
    RunOptions opts;
    opts.threads = flags.threads;
    if (flags.seed_set) opts.seed_override = flags.seed;
    if (cfg.verbosity == ExperimentConfig::Verbosity::verbose) {
        opts.progress = [](const ResultRow& row) {
            std::fprintf(stderr, "  point %d nq=%d N=%llu: %.6f (se %.2e, %.1fs)\n",
                         row.point_index + 1, row.nq, static_cast<unsigned long long>(row.n),
                         row.estimate, row.std_error, row.elapsed_s);
        };
    }
    return opts;
}

void output_table(const ResultTable& table, const CommonFlags& flags,
                  const ExperimentConfig& cfg)
{
    if (flags.format == "csv") {
        std::cout << to_csv(table);
    } else {
        std::cout << format_report(table);
    }
    const std::string csv_path = !flags.out_path.empty() ? flags.out_path : cfg.csv_path;
    if (!csv_path.empty()) {
        emit_csv(table, csv_path);
        std::cerr << "wrote " << csv_path << "\n";
    }
}

int cmd_solve(const CommonFlags& flags)
{
    const ExperimentConfig cfg = load_config(flags.config_path);
    if (cfg.mode != ExperimentConfig::Mode::piecewise) {
        std::cerr << "error: 'solve' expects a piecewise config (use 'validate' for "
                     "point-source mode)\n";
        return 1;
    }
    output_table(run_experiment(cfg, options_from(flags, cfg)), flags, cfg);
    return 0;
}

int cmd_validate(const CommonFlags& flags)
{
    const ExperimentConfig cfg = load_config(flags.config_path);
    if (cfg.mode != ExperimentConfig::Mode::point_source) {
        std::cerr << "error: 'validate' expects a point-source config\n";
        return 1;
    }
    const ResultTable table = run_experiment(cfg, options_from(flags, cfg));
    output_table(table, flags, cfg);

    double worst = 0.0;
    for (const ResultRow& row : table.rows) worst = std::max(worst, row.abs_error.value_or(0.0));
    std::cout << "max |u_N - u_exact| over the grid: " << num_to_string(worst) << "\n";
    return 0;
}

int cmd_sweep_nq(const CommonFlags& flags, const std::vector<int>& nq_values)
{
    const ExperimentConfig cfg = load_config(flags.config_path);
    ResultTable combined;
    combined.point_source = cfg.mode == ExperimentConfig::Mode::point_source;
    for (const int nq : nq_values) {
        RunOptions opts = options_from(flags, cfg);
        opts.nq_override = nq;
        const ResultTable part = run_experiment(cfg, opts);
        combined.rows.insert(combined.rows.end(), part.rows.begin(), part.rows.end());
        std::cout << "--- nq = " << nq << " ---\n" << format_report(part) << "\n";
    }
    const std::string csv_path = !flags.out_path.empty() ? flags.out_path : cfg.csv_path;
    if (!csv_path.empty()) {
        emit_csv(combined, csv_path);
        std::cerr << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_check_geometry(const CommonFlags& flags)
{
    const ExperimentConfig cfg = load_config(flags.config_path);
    const PyramidDomain dom = build_domain(cfg.h, cfg.vertices);

    std::printf("pyramid: n=%d, h=%s, diameter=%s\n", dom.n(), num_to_string(dom.height()).c_str(),
                num_to_string(dom.diameter()).c_str());
    std::printf("kernels: %s\n",
                kernels::avx2_supported() ? "avx2 (runtime-selected)" : "scalar");
    std::printf("\nedge lines (k, c when defined; p, q, r normalized; d = distance from O):\n");
    for (int m = 1; m <= dom.n(); ++m) {
        const EdgeLine& e = dom.edge_lines()[std::size_t(m - 1)];
        if (e.k.has_value()) {
            std::printf("  edge %2d: k=%-12s c=%-12s", m, num_to_string(*e.k).c_str(),
                        num_to_string(*e.c).c_str());
        } else {
            std::printf("  edge %2d: vertical                        ", m);
        }
        std::printf(" | p=%.6f q=%.6f r=%.6f | d=%.6f alpha=%.6f rad\n", e.p, e.q, e.r,
                    dom.base_distances()[std::size_t(m - 1)],
                    dom.inclination_angles()[std::size_t(m - 1)]);
    }
    std::printf("\nlateral face planes A*x1 + B*x2 + C*x3 + D = 0 (negative inside):\n");
    for (int m = 1; m <= dom.n(); ++m) {
        const FacePlane& f = dom.face_planes()[std::size_t(m - 1)];
        std::printf("  face %2d: A=%-12s B=%-12s C=%-12s D=%s\n", m, num_to_string(f.a).c_str(),
                    num_to_string(f.b).c_str(), num_to_string(f.c).c_str(),
                    num_to_string(f.d).c_str());
    }

    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("%-46s %s\n", name, ok ? "PASS" : "FAIL");
        failures += ok ? 0 : 1;
    };

    std::printf("\ninvariants:\n");
    {
        bool ok = true;
        const double tol = 1e-12 * dom.coefficient_scale();
        for (int m = 1; m <= dom.n(); ++m) {
            const FacePlane& f = dom.face_planes()[std::size_t(m - 1)];
            const Vec2 a = dom.vertex(m);
            const Vec2 b = dom.vertex(m + 1);
            ok = ok && std::fabs(f.value_at(dom.apex())) <= tol
                 && std::fabs(f.value_at({a.x, a.y, 0.0})) <= tol
                 && std::fabs(f.value_at({b.x, b.y, 0.0})) <= tol;
        }
        report("apex/vertex plane residuals <= 1e-12*scale", ok);
    }
    {
        bool ok = true;
        for (int m = 0; m < dom.n(); ++m) {
            const double lhs = std::tan(dom.inclination_angles()[std::size_t(m)])
                               * dom.base_distances()[std::size_t(m)];
            ok = ok && std::fabs(lhs - dom.height()) <= 1e-12 * dom.height();
        }
        report("tan(alpha_m) * d_m = h", ok);
    }
    {
        // Signed classifier vs the paper's beta/alpha test where the latter
        // is authoritative (base projection strictly interior).
        bool ok = true;
        std::uint64_t state = 0x9E3779B97F4A7C15ull;
        auto uniform = [&state](double lo, double hi) {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return lo + (hi - lo) * (double(state >> 11) * 0x1p-53);
        };
        const double r = dom.diameter();
        for (int i = 0; i < 10000; ++i) {
            const Vec3 x{uniform(-r, r), uniform(-r, r), uniform(1e-6, dom.height())};
            bool interior_projection = true;
            for (int m = 1; m <= dom.n(); ++m) {
                interior_projection = interior_projection
                                      && dom.edge_line_value(m, x.x, x.y) > 1e-9;
            }
            if (!interior_projection) continue;
            const auto beta = beta_angles(dom, x);
            bool beta_inside = x.z < dom.height();
            for (int m = 0; m < dom.n(); ++m) {
                beta_inside = beta_inside
                              && beta[std::size_t(m)]
                                     < dom.inclination_angles()[std::size_t(m)];
            }
            ok = ok && beta_inside == is_inside(classify_point(dom, x));
        }
        report("beta/alpha test matches the signed classifier", ok);
    }

    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"probabilistic solver for Dirichlet harmonic problems in irregular pyramids"};
    app.require_subcommand(1);

    CommonFlags solve_flags, validate_flags, sweep_flags, check_flags;
    std::string nq_list;

    CLI::App* solve = app.add_subcommand("solve", "solve the piecewise (generalized) problem");
    add_common(solve, solve_flags);

    CLI::App* validate
        = app.add_subcommand("validate", "run the point-source test problem and print errors");
    add_common(validate, validate_flags);

    CLI::App* sweep = app.add_subcommand("sweep-nq", "re-run the experiment at several nq values");
    add_common(sweep, sweep_flags);
    sweep->add_option("--nq", nq_list, "comma-separated nq values, e.g. 100,200,400")->required();

    CLI::App* check
        = app.add_subcommand("check-geometry", "print derived coefficients and run invariants");
    check->add_option("config", check_flags.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve_flags);
        if (validate->parsed()) return cmd_validate(validate_flags);
        if (check->parsed()) return cmd_check_geometry(check_flags);
        if (sweep->parsed()) {
            std::vector<int> nq_values;
            std::stringstream ss(nq_list);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const int v = std::stoi(item);
                if (v < 1) throw Error(ErrorCode::config_syntax, "nq must be positive");
                nq_values.push_back(v);
            }
            if (nq_values.empty()) {
                throw Error(ErrorCode::config_syntax, "--nq list is empty");
            }
            return cmd_sweep_nq(sweep_flags, nq_values);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
