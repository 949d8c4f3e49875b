#include "pyramc/walk.hpp"

#include "pyramc/kernels/normal.hpp"
#include "pyramc/kernels/philox.hpp"

#include "walk_core.hpp"

namespace pyramc {

double NormalStream::next()
{
    const auto words = kernels::scalar::philox_block_u64(seed_, stream_, cursor_ / 2);
    const double value = kernels::scalar::normal_from_u64(words[cursor_ % 2]);
    ++cursor_;
    return value;
}

void NormalStream::fill_scaled(double* out, std::size_t count, double divisor, kernels::Isa isa)
{
    std::size_t produced = 0;
    if (cursor_ % 2 == 1 && produced < count) {
        // Second half of a partially consumed block.
        const auto words = kernels::scalar::philox_block_u64(seed_, stream_, cursor_ / 2);
        out[produced++] = kernels::scalar::normal_from_u64(words[1]) / divisor;
        ++cursor_;
    }
    const std::size_t bulk = (count - produced) & ~std::size_t{1};
    if (bulk > 0) {
        kernels::normal_fill(isa)(seed_, stream_, cursor_ / 2, divisor, out + produced, bulk);
        produced += bulk;
        cursor_ += bulk;
    }
    if (produced < count) {
        const auto words = kernels::scalar::philox_block_u64(seed_, stream_, cursor_ / 2);
        out[produced] = kernels::scalar::normal_from_u64(words[0]) / divisor;
        ++cursor_;
    }
}

ExitEvent run_trajectory(const PyramidDomain& domain,
                         Vec3 start,
                         const WalkConfig& config,
                         NormalStream& stream)
{
    if (kernels::resolve(config.isa) == kernels::Isa::avx2) {
#ifdef PYRAMC_HAVE_AVX2
        if (kernels::avx2_supported()) {
            return detail::run_trajectory_avx2(domain, start, config, stream);
        }
#endif
        throw Error(ErrorCode::spec_mismatch, "avx2 kernels are not available on this machine");
    }
    return detail::run_trajectory_scalar(domain, start, config, stream);
}

ExitEvent run_trajectory_observed(const PyramidDomain& domain,
                                  Vec3 start,
                                  const WalkConfig& config,
                                  NormalStream& stream,
                                  const StepObserver& observer)
{
    if (kernels::resolve(config.isa) == kernels::Isa::avx2) {
#ifdef PYRAMC_HAVE_AVX2
        if (kernels::avx2_supported()) {
            return detail::run_trajectory_avx2_observed(domain, start, config, stream, observer);
        }
#endif
        throw Error(ErrorCode::spec_mismatch, "avx2 kernels are not available on this machine");
    }
    return detail::run_trajectory_scalar_observed(domain, start, config, stream, observer);
}

}  // namespace pyramc
