#pragma once

#include <cstddef>
#include <cstdint>

namespace pyramc::kernels {

/// Kernel instruction-set variants.  `automatic` resolves to the widest
/// variant the running CPU supports; scalar/avx2 force one path (the forced
/// paths exist for the equivalence tests and for debugging).
enum class Isa { automatic, scalar, avx2 };

const char* to_string(Isa isa);

/// True when the binary carries AVX2 kernels and the CPU can run them.
bool avx2_supported();

/// The variant `automatic` resolves to on this machine.
Isa resolve(Isa requested);

/// Fill out[0..count) with standard normal deviates divided by `divisor`,
/// drawn from the (seed, stream) Philox substream starting at block `block0`.
/// count must be even; block i yields out[2i] and out[2i+1].
using NormalFill = void (*)(std::uint64_t seed,
                            std::uint64_t stream,
                            std::uint64_t block0,
                            double divisor,
                            double* out,
                            std::size_t count);

/// Kernel entry point for the requested variant; throws Error for a forced
/// variant the machine cannot run.
NormalFill normal_fill(Isa isa);

struct PlaneBlock;

/// True when every plane value at (x,y,z) is strictly below -eps.
using AllBelow = bool (*)(const PlaneBlock&, double x, double y, double z, double eps);

AllBelow all_below_fn(Isa isa);

}  // namespace pyramc::kernels
