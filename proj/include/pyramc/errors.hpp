#pragma once

#include <stdexcept>
#include <string>

namespace pyramc {

enum class ErrorCode {
    // domain construction
    non_convex_base,
    origin_outside_base,
    clockwise_order,
    degenerate_edge,
    non_positive_height,
    // walk / intersection
    start_not_inside,
    max_steps_exceeded,
    no_candidate_crossing,
    degenerate_direction,
    // boundary / estimator
    region_index_out_of_range,
    coincident_points,
    point_source_not_outside,
    spec_mismatch,
    // config / io
    config_syntax,
    config_unknown_key,
    config_arity_mismatch,
    invalid_domain,
    io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

// Configuration errors carry the 1-based source position of the offending token.
class ConfigError : public Error {
  public:
    ConfigError(ErrorCode code, int line, int column, const std::string& what)
        : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column)
                          + ": " + what),
          line_(line),
          column_(column)
    {
    }

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

}  // namespace pyramc
