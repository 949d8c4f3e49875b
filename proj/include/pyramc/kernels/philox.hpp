#pragma once

#include <array>
#include <cstdint>

namespace pyramc::kernels {

/// Philox-4x32-10 counter-based generator (Salmon et al. round constants).
/// A "block" maps a 128-bit counter and 64-bit key to four 32-bit words.
/// Streams are split by counter layout: words 0-1 hold the running block
/// index inside a stream, words 2-3 hold the stream id, and the key holds the
/// global seed, so every (seed, stream) pair owns 2^64 independent blocks.
struct PhiloxCounter {
    std::uint32_t w0, w1, w2, w3;
};

namespace scalar {

constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline PhiloxCounter philox4x32(PhiloxCounter ctr, std::uint32_t key0, std::uint32_t key1)
{
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(philox_m0) * ctr.w0;
        const std::uint64_t p1 = std::uint64_t(philox_m1) * ctr.w2;
        ctr = {std::uint32_t(p1 >> 32) ^ ctr.w1 ^ key0,
               std::uint32_t(p1),
               std::uint32_t(p0 >> 32) ^ ctr.w3 ^ key1,
               std::uint32_t(p0)};
        key0 += philox_w0;
        key1 += philox_w1;
    }
    return ctr;
}

inline PhiloxCounter make_counter(std::uint64_t block, std::uint64_t stream)
{
    return {std::uint32_t(block), std::uint32_t(block >> 32), std::uint32_t(stream),
            std::uint32_t(stream >> 32)};
}

/// Two 64-bit words from one block.
inline std::array<std::uint64_t, 2> philox_block_u64(std::uint64_t seed,
                                                     std::uint64_t stream,
                                                     std::uint64_t block)
{
    const PhiloxCounter out
        = philox4x32(make_counter(block, stream), std::uint32_t(seed), std::uint32_t(seed >> 32));
    return {std::uint64_t(out.w0) | (std::uint64_t(out.w1) << 32),
            std::uint64_t(out.w2) | (std::uint64_t(out.w3) << 32)};
}

}  // namespace scalar
}  // namespace pyramc::kernels
