#include "pyramc/errors.hpp"

namespace pyramc {

const char* to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::non_convex_base: return "NonConvexBase";
        case ErrorCode::origin_outside_base: return "OriginOutsideBase";
        case ErrorCode::clockwise_order: return "ClockwiseOrder";
        case ErrorCode::degenerate_edge: return "DegenerateEdge";
        case ErrorCode::non_positive_height: return "NonPositiveHeight";
        case ErrorCode::start_not_inside: return "StartNotInside";
        case ErrorCode::max_steps_exceeded: return "MaxStepsExceeded";
        case ErrorCode::no_candidate_crossing: return "NoCandidateCrossing";
        case ErrorCode::degenerate_direction: return "DegenerateDirection";
        case ErrorCode::region_index_out_of_range: return "RegionIndexOutOfRange";
        case ErrorCode::coincident_points: return "CoincidentPoints";
        case ErrorCode::point_source_not_outside: return "PointSourceNotOutside";
        case ErrorCode::spec_mismatch: return "SpecMismatch";
        case ErrorCode::config_syntax: return "SyntaxError";
        case ErrorCode::config_unknown_key: return "UnknownKey";
        case ErrorCode::config_arity_mismatch: return "ArityMismatch";
        case ErrorCode::invalid_domain: return "InvalidDomain";
        case ErrorCode::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace pyramc
