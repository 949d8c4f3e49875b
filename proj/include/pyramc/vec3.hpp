#pragma once

#include <cmath>

namespace pyramc {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    friend constexpr bool operator==(Vec3 a, Vec3 b) = default;
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

// 2D cross product (z component of the 3D cross of the embedded vectors).
constexpr double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }

inline double norm2d(Vec2 v) { return std::hypot(v.x, v.y); }

}  // namespace pyramc
