#pragma once

// Internal: kernel entry points behind the dispatch table.

#include <cstddef>
#include <cstdint>

namespace pyramc::kernels {

struct PlaneBlock;

bool all_below_scalar(const PlaneBlock& pb, double x, double y, double z, double eps);

#ifdef PYRAMC_HAVE_AVX2
bool all_below_avx2(const PlaneBlock& pb, double x, double y, double z, double eps);
#endif

void fill_normals_scalar(std::uint64_t seed,
                         std::uint64_t stream,
                         std::uint64_t block0,
                         double divisor,
                         double* out,
                         std::size_t count);

#ifdef PYRAMC_HAVE_AVX2
void fill_normals_avx2(std::uint64_t seed,
                       std::uint64_t stream,
                       std::uint64_t block0,
                       double divisor,
                       double* out,
                       std::size_t count);
#endif

}  // namespace pyramc::kernels
