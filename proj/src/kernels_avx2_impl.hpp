#pragma once

// Internal: AVX2 kernel bodies.  Only TUs compiled with -mavx2 may include
// this header.  Every floating-point expression mirrors the operation order
// of the scalar reference kernels so the two variants agree bit for bit.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "pyramc/kernels/normal.hpp"
#include "pyramc/kernels/philox.hpp"
#include "pyramc/kernels/plane_block.hpp"

namespace pyramc::kernels::avx2 {

inline bool all_below(const PlaneBlock& pb, double x, double y, double z, double eps)
{
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d vz = _mm256_set1_pd(z);
    const __m256d bound = _mm256_set1_pd(-eps);
    for (std::size_t i = 0; i < pb.padded; i += 4) {
        const __m256d v = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(&pb.nx[i]), vx),
                          _mm256_mul_pd(_mm256_loadu_pd(&pb.ny[i]), vy)),
            _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(&pb.nz[i]), vz),
                          _mm256_loadu_pd(&pb.off[i])));
        const __m256d lt = _mm256_cmp_pd(v, bound, _CMP_LT_OQ);
        if (_mm256_movemask_pd(lt) != 0xF) return false;
    }
    return true;
}

// --- Philox-4x32-10, eight blocks per chain ---------------------------------

namespace detail {

// 32-bit lane products: mullo and mulhi of a * m for all 8 lanes.
inline void mul32_lo_hi(__m256i a, __m256i m, __m256i& lo, __m256i& hi)
{
    const __m256i prod_even = _mm256_mul_epu32(a, m);
    const __m256i prod_odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
    lo = _mm256_blend_epi32(prod_even, _mm256_slli_epi64(prod_odd, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(prod_even, 32), prod_odd, 0xAA);
}

struct PhiloxState {
    __m256i c0, c1, c2, c3;  // counter words of 8 blocks, SoA
};

inline PhiloxState philox_counters(std::uint64_t stream, std::uint64_t block0)
{
    alignas(32) std::uint32_t lo[8];
    alignas(32) std::uint32_t hi[8];
    for (int j = 0; j < 8; ++j) {
        const std::uint64_t b = block0 + std::uint64_t(j);
        lo[j] = std::uint32_t(b);
        hi[j] = std::uint32_t(b >> 32);
    }
    return {_mm256_load_si256(reinterpret_cast<const __m256i*>(lo)),
            _mm256_load_si256(reinterpret_cast<const __m256i*>(hi)),
            _mm256_set1_epi32(int(std::uint32_t(stream))),
            _mm256_set1_epi32(int(std::uint32_t(stream >> 32)))};
}

inline void philox_round(PhiloxState& s, __m256i k0, __m256i k1, __m256i m0, __m256i m1)
{
    __m256i lo0, hi0, lo1, hi1;
    mul32_lo_hi(s.c0, m0, lo0, hi0);
    mul32_lo_hi(s.c2, m1, lo1, hi1);
    const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, s.c1), k0);
    const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, s.c3), k1);
    s.c0 = n0;
    s.c1 = lo1;
    s.c2 = n2;
    s.c3 = lo0;
}

}  // namespace detail

/// 64-bit output words of eight consecutive blocks, kept in registers:
/// a[0] = word-a of blocks 0..3, a[1] = blocks 4..7; likewise b for word-b.
struct Philox8x64 {
    __m256i a[2];
    __m256i b[2];
};

inline Philox8x64 philox8(std::uint64_t seed, std::uint64_t stream, std::uint64_t block0)
{
    detail::PhiloxState s = detail::philox_counters(stream, block0);
    __m256i k0 = _mm256_set1_epi32(int(std::uint32_t(seed)));
    __m256i k1 = _mm256_set1_epi32(int(std::uint32_t(seed >> 32)));
    const __m256i m0 = _mm256_set1_epi32(int(scalar::philox_m0));
    const __m256i m1 = _mm256_set1_epi32(int(scalar::philox_m1));
    const __m256i w0 = _mm256_set1_epi32(int(scalar::philox_w0));
    const __m256i w1 = _mm256_set1_epi32(int(scalar::philox_w1));

    for (int round = 0; round < 10; ++round) {
        detail::philox_round(s, k0, k1, m0, m1);
        k0 = _mm256_add_epi32(k0, w0);
        k1 = _mm256_add_epi32(k1, w1);
    }

    // w0|w1<<32 and w2|w3<<32 per block, reordered to block-index order.
    const __m256i a_0145 = _mm256_unpacklo_epi32(s.c0, s.c1);
    const __m256i a_2367 = _mm256_unpackhi_epi32(s.c0, s.c1);
    const __m256i b_0145 = _mm256_unpacklo_epi32(s.c2, s.c3);
    const __m256i b_2367 = _mm256_unpackhi_epi32(s.c2, s.c3);
    Philox8x64 out;
    out.a[0] = _mm256_permute2x128_si256(a_0145, a_2367, 0x20);
    out.a[1] = _mm256_permute2x128_si256(a_0145, a_2367, 0x31);
    out.b[0] = _mm256_permute2x128_si256(b_0145, b_2367, 0x20);
    out.b[1] = _mm256_permute2x128_si256(b_0145, b_2367, 0x31);
    return out;
}

// --- inverse normal CDF, four lanes per pass --------------------------------

namespace detail {

/// Branch-free central-branch evaluation of four lanes: the scalar rational
/// with identical operation order, plus the lane mask of tails still to fix.
struct Central4 {
    __m256d value;  // central result / divisor (wrong in tail lanes)
    __m256d u;      // unit uniforms, needed by the tail fix
    int tails;
};

inline Central4 central4(__m256i words, double divisor)
{
    // (word >> 12) fits in 52 bits, so the exponent-magic conversion is exact.
    const __m256i mant = _mm256_srli_epi64(words, 12);
    const __m256d magic = _mm256_set1_pd(0x1p52);
    const __m256d f = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(mant, _mm256_castpd_si256(magic))), magic);
    const __m256d u = _mm256_add_pd(_mm256_mul_pd(f, _mm256_set1_pd(0x1p-52)),
                                    _mm256_set1_pd(0x1p-53));

    const __m256d q = _mm256_sub_pd(u, _mm256_set1_pd(0.5));
    const __m256d r = _mm256_mul_pd(q, q);

    using namespace inv_normal;
    __m256d num = _mm256_set1_pd(a0);
    num = _mm256_add_pd(_mm256_mul_pd(num, r), _mm256_set1_pd(a1));
    num = _mm256_add_pd(_mm256_mul_pd(num, r), _mm256_set1_pd(a2));
    num = _mm256_add_pd(_mm256_mul_pd(num, r), _mm256_set1_pd(a3));
    num = _mm256_add_pd(_mm256_mul_pd(num, r), _mm256_set1_pd(a4));
    num = _mm256_add_pd(_mm256_mul_pd(num, r), _mm256_set1_pd(a5));

    __m256d den = _mm256_set1_pd(b0);
    den = _mm256_add_pd(_mm256_mul_pd(den, r), _mm256_set1_pd(b1));
    den = _mm256_add_pd(_mm256_mul_pd(den, r), _mm256_set1_pd(b2));
    den = _mm256_add_pd(_mm256_mul_pd(den, r), _mm256_set1_pd(b3));
    den = _mm256_add_pd(_mm256_mul_pd(den, r), _mm256_set1_pd(b4));
    den = _mm256_add_pd(_mm256_mul_pd(den, r), _mm256_set1_pd(1.0));

    const __m256d central = _mm256_div_pd(_mm256_mul_pd(q, num), den);
    const __m256d result = _mm256_div_pd(central, _mm256_set1_pd(divisor));

    const __m256d absq = _mm256_andnot_pd(_mm256_set1_pd(-0.0), q);
    const int tails
        = _mm256_movemask_pd(_mm256_cmp_pd(absq, _mm256_set1_pd(central_halfwidth), _CMP_GT_OQ));
    return {result, u, tails};
}

/// Recompute tail lanes (|u-0.5| > 0.425, about 4.9%) with the shared scalar
/// tail, preserving bit-equality with the scalar reference.
inline __m256d fix_tails(const Central4& c, double divisor)
{
    if (!c.tails) return c.value;
    alignas(32) double uvals[4];
    alignas(32) double res[4];
    _mm256_store_pd(uvals, c.u);
    _mm256_store_pd(res, c.value);
    for (int lane = 0; lane < 4; ++lane) {
        if (c.tails & (1 << lane)) res[lane] = inv_normal::tail(uvals[lane]) / divisor;
    }
    return _mm256_load_pd(res);
}

inline void interleave_store(__m256d na, __m256d nb, double* out)
{
    const __m256d even = _mm256_unpacklo_pd(na, nb);  // a0 b0 a2 b2
    const __m256d odd = _mm256_unpackhi_pd(na, nb);   // a1 b1 a3 b3
    _mm256_storeu_pd(out, _mm256_permute2f128_pd(even, odd, 0x20));
    _mm256_storeu_pd(out + 4, _mm256_permute2f128_pd(even, odd, 0x31));
}

}  // namespace detail

/// Normals (divided by `divisor`) for four 64-bit words.
inline __m256d normals4(__m256i words, double divisor)
{
    return detail::fix_tails(detail::central4(words, divisor), divisor);
}

/// Thirty-two deviates from two independent eight-block chains, stored in
/// stream order (block j yields out[2j] from word a and out[2j+1] from word
/// b).  The rational evaluations are branch-free so the independent chains
/// can overlap.
inline void chain32(std::uint64_t seed,
                    std::uint64_t stream,
                    std::uint64_t block0,
                    double divisor,
                    double* out)
{
    const Philox8x64 wa = philox8(seed, stream, block0);
    const Philox8x64 wb = philox8(seed, stream, block0 + 8);

    const detail::Central4 c0 = detail::central4(wa.a[0], divisor);
    const detail::Central4 c1 = detail::central4(wa.b[0], divisor);
    const detail::Central4 c2 = detail::central4(wa.a[1], divisor);
    const detail::Central4 c3 = detail::central4(wa.b[1], divisor);
    const detail::Central4 c4 = detail::central4(wb.a[0], divisor);
    const detail::Central4 c5 = detail::central4(wb.b[0], divisor);
    const detail::Central4 c6 = detail::central4(wb.a[1], divisor);
    const detail::Central4 c7 = detail::central4(wb.b[1], divisor);

    detail::interleave_store(detail::fix_tails(c0, divisor), detail::fix_tails(c1, divisor), out);
    detail::interleave_store(detail::fix_tails(c2, divisor), detail::fix_tails(c3, divisor),
                             out + 8);
    detail::interleave_store(detail::fix_tails(c4, divisor), detail::fix_tails(c5, divisor),
                             out + 16);
    detail::interleave_store(detail::fix_tails(c6, divisor), detail::fix_tails(c7, divisor),
                             out + 24);
}

/// Sixteen deviates of one chain in stream order.
inline void chain16(std::uint64_t seed,
                    std::uint64_t stream,
                    std::uint64_t block0,
                    double divisor,
                    double* out)
{
    const Philox8x64 words = philox8(seed, stream, block0);
    for (int half = 0; half < 2; ++half) {
        const __m256d na = normals4(words.a[half], divisor);
        const __m256d nb = normals4(words.b[half], divisor);
        detail::interleave_store(na, nb, out + 8 * half);
    }
}

}  // namespace pyramc::kernels::avx2
