#include "pyramc/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "pyramc/errors.hpp"
#include "pyramc/numfmt.hpp"

namespace pyramc {

ResultTable run_experiment(const ExperimentConfig& config)
{
    return run_experiment(config, RunOptions{});
}

ResultTable run_experiment(const ExperimentConfig& config, const RunOptions& options)
{
    const PyramidDomain domain = build_domain(config.h, config.vertices);

    BoundarySpec spec;
    if (config.mode == ExperimentConfig::Mode::piecewise) {
        spec = PiecewiseConstant{config.face_values, config.base_value};
    } else {
        spec = PointSource{config.source};
    }

    std::vector<std::uint64_t> counts = config.trajectory_counts;
    std::sort(counts.begin(), counts.end());

    ResultTable table;
    table.point_source = config.mode == ExperimentConfig::Mode::point_source;

    WalkConfig walk;
    walk.seed = options.seed_override.value_or(config.seed);
    walk.max_steps = config.max_steps;

    for (std::size_t p = 0; p < config.points.size(); ++p) {
        const Vec3 x = config.points[p];
        walk.nq = options.nq_override.value_or(config.nq[p]);
        for (const std::uint64_t n : counts) {
            const Estimate est = solve_at(domain, spec, x, n, walk, options.threads);

            ResultRow row;
            row.point_index = int(p);
            row.point = x;
            row.nq = walk.nq;
            row.n = n;
            row.estimate = est.mean;
            row.std_error = est.std_error;
            row.mean_steps = est.mean_steps;
            row.elapsed_s = est.elapsed_s;
            row.edge_hits = est.edge_hits;
            if (table.point_source) {
                row.exact = exact_value(x, config.source);
                row.abs_error = error_vs_exact(est, x, config.source);
            }
            if (options.progress) options.progress(row);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

std::string to_csv(const ResultTable& table)
{
    std::ostringstream out;
    out << "point_x1,point_x2,point_x3,nq,N,estimate,std_error,exact,abs_error,mean_steps,"
           "elapsed_s\n";
    for (const ResultRow& r : table.rows) {
        out << num_to_string(r.point.x) << ',' << num_to_string(r.point.y) << ','
            << num_to_string(r.point.z) << ',' << r.nq << ',' << r.n << ','
            << num_to_string(r.estimate) << ',' << num_to_string(r.std_error) << ',';
        if (r.exact) out << num_to_string(*r.exact);
        out << ',';
        if (r.abs_error) out << num_to_string(*r.abs_error);
        out << ',' << num_to_string(r.mean_steps) << ',' << num_to_string(r.elapsed_s) << '\n';
    }
    return out.str();
}

void emit_csv(const ResultTable& table, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
    out << to_csv(table);
    if (!out) throw Error(ErrorCode::io_error, "failed writing '" + path + "'");
}

namespace {

std::string point_header(Vec3 p)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%g,%g,%g)", p.x, p.y, p.z);
    return buf;
}

std::string fixed5(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5f", v);
    return buf;
}

std::string sci2(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2E", v);
    return buf;
}

}  // namespace

std::string format_report(const ResultTable& table)
{
    std::ostringstream out;
    if (table.rows.empty()) return "(no results)\n";

    // Pivot: one column per (point, nq) pair, one row per N.
    std::vector<std::pair<int, int>> columns;  // (point_index, nq)
    std::set<std::uint64_t> n_values;
    for (const ResultRow& r : table.rows) {
        const std::pair<int, int> key{r.point_index, r.nq};
        if (std::find(columns.begin(), columns.end(), key) == columns.end()) {
            columns.push_back(key);
        }
        n_values.insert(r.n);
    }

    auto find_row = [&](std::pair<int, int> col, std::uint64_t n) -> const ResultRow* {
        for (const ResultRow& r : table.rows) {
            if (r.point_index == col.first && r.nq == col.second && r.n == n) return &r;
        }
        return nullptr;
    };

    const int width = 14;
    out << (table.point_source ? "absolute errors |u_N - u_exact|" : "estimates u_N") << "\n";

    out << std::string(10, ' ');
    for (const auto& col : columns) {
        std::string head;
        for (const ResultRow& r : table.rows) {
            if (r.point_index == col.first) {
                head = point_header(r.point);
                break;
            }
        }
        out << std::string(head.size() < width ? width - head.size() : 1, ' ') << head;
    }
    out << "\n" << std::string(10, ' ');
    for (const auto& col : columns) {
        const std::string head = "nq=" + std::to_string(col.second);
        out << std::string(head.size() < width ? width - head.size() : 1, ' ') << head;
    }
    out << "\nN\n";

    for (const std::uint64_t n : n_values) {
        char nbuf[24];
        std::snprintf(nbuf, sizeof(nbuf), "%-10llu", static_cast<unsigned long long>(n));
        out << nbuf;
        for (const auto& col : columns) {
            const ResultRow* r = find_row(col, n);
            std::string cell = "-";
            if (r) cell = table.point_source ? sci2(r->abs_error.value_or(0.0)) : fixed5(r->estimate);
            out << std::string(cell.size() < width ? width - cell.size() : 1, ' ') << cell;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace pyramc
