#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pyramc/config.hpp"
#include "pyramc/estimator.hpp"

namespace pyramc {

struct ResultRow {
    int point_index{0};  // 0-based position in the config's point list
    Vec3 point;
    int nq{0};
    std::uint64_t n{0};
    double estimate{0.0};
    double std_error{0.0};
    std::optional<double> exact;
    std::optional<double> abs_error;
    double mean_steps{0.0};
    double elapsed_s{0.0};
    std::uint64_t edge_hits{0};
};

/// Rows sorted by point index, then ascending N.  exact/abs_error are present
/// exactly when the experiment ran in point-source mode.
struct ResultTable {
    std::vector<ResultRow> rows;
    bool point_source{false};
};

struct RunOptions {
    unsigned threads{0};
    std::optional<std::uint64_t> seed_override;
    std::optional<int> nq_override;  // run every point at this nq (sweep mode)
    std::function<void(const ResultRow&)> progress;
};

/// Run the configured experiment: one solve_at per (point, N).
ResultTable run_experiment(const ExperimentConfig& config);
ResultTable run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// CSV with the fixed header
/// point_x1,point_x2,point_x3,nq,N,estimate,std_error,exact,abs_error,mean_steps,elapsed_s
/// full-precision decimals, empty fields for absent optionals, final newline.
std::string to_csv(const ResultTable& table);
void emit_csv(const ResultTable& table, const std::string& path);

/// Fixed-width convergence table: points as columns, trajectory counts as
/// rows, absolute errors in point-source mode and estimates otherwise.
std::string format_report(const ResultTable& table);

}  // namespace pyramc
