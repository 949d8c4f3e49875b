#include "pyramc/kernels/plane_block.hpp"
#include "walk_core.hpp"

namespace pyramc::detail {
namespace {

struct ScalarKern {
    static constexpr kernels::Isa isa = kernels::Isa::scalar;
    static bool all_below(const kernels::PlaneBlock& pb, double x, double y, double z, double eps)
    {
        return kernels::scalar::all_below(pb, x, y, z, eps);
    }
};

}  // namespace

ExitEvent run_trajectory_scalar(const PyramidDomain& domain,
                                Vec3 start,
                                const WalkConfig& config,
                                NormalStream& stream)
{
    return run_trajectory_core<ScalarKern>(domain, start, config, stream, NoObserver{});
}

ExitEvent run_trajectory_scalar_observed(const PyramidDomain& domain,
                                         Vec3 start,
                                         const WalkConfig& config,
                                         NormalStream& stream,
                                         const StepObserver& observer)
{
    return run_trajectory_core<ScalarKern>(domain, start, config, stream,
                                           [&](Vec3 a, Vec3 b) { observer(a, b); });
}

}  // namespace pyramc::detail
