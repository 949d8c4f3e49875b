#pragma once

#include <cstdint>
#include <string>

namespace pyramc {

/// Label of a boundary region: one of the n lateral faces, the base, or one of
/// the 2n edges.  Indices follow the surface decomposition convention used by
/// the boundary data: faces 1..n, base n+1, edges 1..2n where edges 1..n run
/// along the base (A_k to A_{k+1}) and n+1..2n are the lateral edges (apex to
/// A_{k-n}).
struct RegionLabel {
    enum class Kind : std::uint8_t { lateral_face, base, edge };

    Kind kind{Kind::base};
    int index{0};

    static RegionLabel face(int m) { return {Kind::lateral_face, m}; }
    static RegionLabel base_of(int n) { return {Kind::base, n + 1}; }
    static RegionLabel edge(int k) { return {Kind::edge, k}; }

    bool is_face() const { return kind == Kind::lateral_face; }
    bool is_base() const { return kind == Kind::base; }
    bool is_edge() const { return kind == Kind::edge; }

    friend bool operator==(RegionLabel a, RegionLabel b) = default;
};

inline std::string to_string(RegionLabel r)
{
    switch (r.kind) {
        case RegionLabel::Kind::lateral_face: return "face" + std::to_string(r.index);
        case RegionLabel::Kind::base: return "base";
        case RegionLabel::Kind::edge: return "edge" + std::to_string(r.index);
    }
    return "?";
}

}  // namespace pyramc
