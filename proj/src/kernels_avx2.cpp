// Compiled with -mavx2 (see CMakeLists); absent from non-x86 builds.

#include <cassert>

#include "kernels_avx2_impl.hpp"
#include "kernels_internal.hpp"

namespace pyramc::kernels {

bool all_below_avx2(const PlaneBlock& pb, double x, double y, double z, double eps)
{
    return avx2::all_below(pb, x, y, z, eps);
}

void fill_normals_avx2(std::uint64_t seed,
                       std::uint64_t stream,
                       std::uint64_t block0,
                       double divisor,
                       double* out,
                       std::size_t count)
{
    assert(count % 2 == 0);
    std::size_t i = 0;
    for (; i + 32 <= count; i += 32) {
        avx2::chain32(seed, stream, block0 + i / 2, divisor, out + i);
    }
    for (; i + 16 <= count; i += 16) {
        avx2::chain16(seed, stream, block0 + i / 2, divisor, out + i);
    }
    // Short tails fall back to the scalar reference, which is bit-identical.
    if (i < count) fill_normals_scalar(seed, stream, block0 + i / 2, divisor, out + i, count - i);
}

}  // namespace pyramc::kernels
