#pragma once

#include <cmath>
#include <cstdint>

namespace pyramc::kernels {

/// Map a 64-bit word to the open interval (0,1); every result is exactly
/// (2k+1)/2^53, so 0 and 1 are unreachable and the map is symmetric.
inline double u64_to_unit(std::uint64_t u)
{
    return double(u >> 12) * 0x1p-52 + 0x1p-53;
}

// Acklam's rational approximation of the inverse normal CDF (|relative
// error| < 1.15e-9).  The central branch below 0.425 is a pure rational
// polynomial; the SIMD variant evaluates the same Horner chains, so only the
// operation order fixed here keeps the two paths bit-equal.
namespace inv_normal {

constexpr double a0 = -3.969683028665376e+01;
constexpr double a1 = 2.209460984245205e+02;
constexpr double a2 = -2.759285104469687e+02;
constexpr double a3 = 1.383577518672690e+02;
constexpr double a4 = -3.066479806614716e+01;
constexpr double a5 = 2.506628277459239e+00;

constexpr double b0 = -5.447609879822406e+01;
constexpr double b1 = 1.615858368580409e+02;
constexpr double b2 = -1.556989798598866e+02;
constexpr double b3 = 6.680131188771972e+01;
constexpr double b4 = -1.328068155288572e+01;

constexpr double c0 = -7.784894002430293e-03;
constexpr double c1 = -3.223964580411365e-01;
constexpr double c2 = -2.400758277161838e+00;
constexpr double c3 = -2.549732539343734e+00;
constexpr double c4 = 4.374664141464968e+00;
constexpr double c5 = 2.938163982698783e+00;

constexpr double d0 = 7.784695709041462e-03;
constexpr double d1 = 3.224671290700398e-01;
constexpr double d2 = 2.445134137142996e+00;
constexpr double d3 = 3.754408661907416e+00;

constexpr double central_halfwidth = 0.425;  // |p - 0.5| bound of the central branch

inline double central(double q)
{
    const double r = q * q;
    const double num = ((((a0 * r + a1) * r + a2) * r + a3) * r + a4) * r + a5;
    const double den = ((((b0 * r + b1) * r + b2) * r + b3) * r + b4) * r + 1.0;
    return q * num / den;
}

inline double tail(double p)
{
    // p is in (0, 0.075] or [0.925, 1); both map through the same rational.
    const bool upper = p > 0.5;
    const double t = std::sqrt(-2.0 * std::log(upper ? 1.0 - p : p));
    const double num = ((((c0 * t + c1) * t + c2) * t + c3) * t + c4) * t + c5;
    const double den = (((d0 * t + d1) * t + d2) * t + d3) * t + 1.0;
    const double x = num / den;
    return upper ? -x : x;
}

}  // namespace inv_normal

namespace scalar {

/// Standard normal deviate from a uniform in (0,1).
inline double normal_from_unit(double p)
{
    const double q = p - 0.5;
    if (std::fabs(q) <= inv_normal::central_halfwidth) return inv_normal::central(q);
    return inv_normal::tail(p);
}

inline double normal_from_u64(std::uint64_t u) { return normal_from_unit(u64_to_unit(u)); }

}  // namespace scalar
}  // namespace pyramc::kernels
