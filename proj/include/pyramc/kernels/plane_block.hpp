#pragma once

#include <cstddef>
#include <vector>

namespace pyramc::kernels {

/// Lateral face planes in structure-of-arrays form, unit-normalized so that
/// nx*x + ny*y + nz*z + off is the signed distance to the plane (negative
/// inside the pyramid).  Padded to a multiple of 4 lanes; padding lanes hold
/// the always-satisfied plane 0*x+0*y+0*z-1 so they never flag a crossing.
struct PlaneBlock {
    std::size_t count{0};   // real plane count n
    std::size_t padded{0};  // count rounded up to a multiple of 4
    std::vector<double> nx, ny, nz, off;

    void assign(const std::vector<double>& a,
                const std::vector<double>& b,
                const std::vector<double>& c,
                const std::vector<double>& d)
    {
        count = a.size();
        padded = (count + 3) & ~std::size_t{3};
        nx.assign(padded, 0.0);
        ny.assign(padded, 0.0);
        nz.assign(padded, 0.0);
        off.assign(padded, -1.0);
        for (std::size_t i = 0; i < count; ++i) {
            nx[i] = a[i];
            ny[i] = b[i];
            nz[i] = c[i];
            off[i] = d[i];
        }
    }
};

namespace scalar {

/// Signed distance to plane i.  The association ((nx*x + ny*y) + (nz*z + off))
/// is fixed; the AVX2 variant performs the identical operation order so both
/// produce bit-equal values.
inline double plane_value(const PlaneBlock& pb, std::size_t i, double x, double y, double z)
{
    return (pb.nx[i] * x + pb.ny[i] * y) + (pb.nz[i] * z + pb.off[i]);
}

/// True when every plane value is strictly below -eps (point at least eps
/// inside every lateral half-space).
inline bool all_below(const PlaneBlock& pb, double x, double y, double z, double eps)
{
    const double bound = -eps;
    for (std::size_t i = 0; i < pb.padded; ++i) {
        if (!(plane_value(pb, i, x, y, z) < bound)) return false;
    }
    return true;
}

inline void plane_values(
    const PlaneBlock& pb, double x, double y, double z, double* out /* padded */)
{
    for (std::size_t i = 0; i < pb.padded; ++i) out[i] = plane_value(pb, i, x, y, z);
}

}  // namespace scalar
}  // namespace pyramc::kernels
