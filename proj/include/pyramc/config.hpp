#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pyramc/vec3.hpp"

namespace pyramc {

/// One experiment: a domain, boundary data, evaluation points with per-point
/// quantization numbers, and a list of trajectory counts.  Parsed from a
/// line-oriented config file with bracketed [sections] and key = value pairs
/// (arrays in square brackets, 2D/3D points in parentheses, N values accept
/// scientific notation like 5E+3).
struct ExperimentConfig {
    enum class Mode { piecewise, point_source };
    enum class Verbosity { normal, verbose };

    // [domain]
    double h{0.0};
    std::vector<Vec2> vertices;

    // [boundary]
    Mode mode{Mode::piecewise};
    std::vector<double> face_values;  // piecewise: g_1..g_n
    double base_value{0.0};           // piecewise: g_{n+1}
    Vec3 source{};                    // point-source: x0

    // [solve]
    std::vector<Vec3> points;
    std::vector<int> nq;  // one per point (a scalar in the file broadcasts)
    std::vector<std::uint64_t> trajectory_counts;
    std::uint64_t seed{0};
    std::uint64_t max_steps{10'000'000};

    // [output]
    std::string csv_path;
    Verbosity verbosity{Verbosity::normal};

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parse and validate a config document.  Throws ConfigError with the
/// 1-based line/column of the offending token (SyntaxError, UnknownKey,
/// ArityMismatch, or InvalidDomain when the domain section fails to build).
ExperimentConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace pyramc
