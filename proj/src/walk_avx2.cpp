// Compiled with -mavx2 (see CMakeLists); absent from non-x86 builds.

#include "kernels_avx2_impl.hpp"
#include "walk_core.hpp"

namespace pyramc::detail {
namespace {

struct Avx2Kern {
    static constexpr kernels::Isa isa = kernels::Isa::avx2;
    static bool all_below(const kernels::PlaneBlock& pb, double x, double y, double z, double eps)
    {
        return kernels::avx2::all_below(pb, x, y, z, eps);
    }
};

}  // namespace

ExitEvent run_trajectory_avx2(const PyramidDomain& domain,
                              Vec3 start,
                              const WalkConfig& config,
                              NormalStream& stream)
{
    return run_trajectory_core<Avx2Kern>(domain, start, config, stream, NoObserver{});
}

ExitEvent run_trajectory_avx2_observed(const PyramidDomain& domain,
                                       Vec3 start,
                                       const WalkConfig& config,
                                       NormalStream& stream,
                                       const StepObserver& observer)
{
    return run_trajectory_core<Avx2Kern>(domain, start, config, stream,
                                         [&](Vec3 a, Vec3 b) { observer(a, b); });
}

}  // namespace pyramc::detail
