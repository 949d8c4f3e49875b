#include "pyramc/kernels/dispatch.hpp"

#include <cassert>

#include "pyramc/errors.hpp"
#include "pyramc/kernels/normal.hpp"
#include "pyramc/kernels/philox.hpp"
#include "pyramc/kernels/plane_block.hpp"

#include "kernels_internal.hpp"

namespace pyramc::kernels {

const char* to_string(Isa isa)
{
    switch (isa) {
        case Isa::automatic: return "auto";
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "?";
}

bool avx2_supported()
{
#ifdef PYRAMC_HAVE_AVX2
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

Isa resolve(Isa requested)
{
    if (requested == Isa::automatic) return avx2_supported() ? Isa::avx2 : Isa::scalar;
    return requested;
}

void fill_normals_scalar(std::uint64_t seed,
                         std::uint64_t stream,
                         std::uint64_t block0,
                         double divisor,
                         double* out,
                         std::size_t count)
{
    assert(count % 2 == 0);
    for (std::size_t i = 0; i < count; i += 2) {
        const auto words = scalar::philox_block_u64(seed, stream, block0 + i / 2);
        out[i] = scalar::normal_from_u64(words[0]) / divisor;
        out[i + 1] = scalar::normal_from_u64(words[1]) / divisor;
    }
}

bool all_below_scalar(const PlaneBlock& pb, double x, double y, double z, double eps)
{
    return scalar::all_below(pb, x, y, z, eps);
}

AllBelow all_below_fn(Isa isa)
{
    switch (resolve(isa)) {
        case Isa::scalar: return &all_below_scalar;
        case Isa::avx2:
#ifdef PYRAMC_HAVE_AVX2
            if (avx2_supported()) return &all_below_avx2;
#endif
            throw Error(ErrorCode::spec_mismatch, "avx2 kernels are not available on this machine");
        default: return &all_below_scalar;
    }
}

NormalFill normal_fill(Isa isa)
{
    switch (resolve(isa)) {
        case Isa::scalar: return &fill_normals_scalar;
        case Isa::avx2:
#ifdef PYRAMC_HAVE_AVX2
            if (avx2_supported()) return &fill_normals_avx2;
#endif
            throw Error(ErrorCode::spec_mismatch, "avx2 kernels are not available on this machine");
        default: return &fill_normals_scalar;
    }
}

}  // namespace pyramc::kernels
