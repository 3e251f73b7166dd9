// SPDX-License-Identifier: Apache-2.0
#include "linkopt/sim_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace linkopt {

PolicyTable compile_policy(const AdaptationPolicy& policy,
                           const FadingModel& model) {
    PolicyTable t;
    t.law = policy.kind() == PolicyKind::ContinuousPower
                ? PolicyTable::PowerLaw::KappaOverSnr
                : PolicyTable::PowerLaw::PerIndex;
    t.thresholds.assign(policy.thresholds().begin(),
                        policy.thresholds().end());
    const std::vector<double> se = spectral_efficiencies(policy, model);
    const int K = policy.n_levels();
    const std::size_t total = t.thresholds.size();
    t.rate.resize(total);
    t.value.resize(total);
    t.min_post.resize(total);
    const double boost =
        1.0 / (1.0 - model.cdf(policy.first_threshold()));
    for (std::size_t i = 0; i < total; ++i) {
        const int n = static_cast<int>(i) / K;
        t.rate[i] = se[static_cast<std::size_t>(n)];
        t.min_post[i] = std::exp2(se[static_cast<std::size_t>(n)] - 1e-12) - 1.0;
        switch (policy.kind()) {
            case PolicyKind::ConstantPower: t.value[i] = boost; break;
            case PolicyKind::DiscretePower:
                t.value[i] = policy.kappa()[n] / t.thresholds[i];
                break;
            case PolicyKind::ContinuousPower:
                t.value[i] = policy.kappa()[n];
                break;
        }
    }
    return t;
}

void eval_blocks_scalar(const PolicyTable& table, const double* snr,
                        std::size_t n, BlockAccumulators& acc) {
    const double* th = table.thresholds.data();
    const std::size_t m = table.thresholds.size();
    const bool kappa_law = table.law == PolicyTable::PowerLaw::KappaOverSnr;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lane = i & 3;
        const double g = snr[i];
        // index of the containing sub-region: count thresholds <= g
        std::ptrdiff_t idx = -1;
        for (std::size_t j = 0; j < m; ++j) idx += (g >= th[j]) ? 1 : 0;
        if (idx < 0) {
            ++acc.no_tx[lane];
            continue;
        }
        const double rate = table.rate[static_cast<std::size_t>(idx)];
        const double v = table.value[static_cast<std::size_t>(idx)];
        const double power = kappa_law ? v / g : v;
        const double post = g * power;
        if (post < table.min_post[static_cast<std::size_t>(idx)])
            ++acc.violations[lane];
        acc.rate_sum[lane] += rate;
        acc.rate_sq[lane] += rate * rate;
        acc.power_sum[lane] += power;
        acc.power_sq[lane] += power * power;
    }
}

BlockKernelFn resolve_kernel(KernelKind kind) {
#if defined(__x86_64__) || defined(_M_X64)
    const bool have_avx2 = __builtin_cpu_supports("avx2");
    switch (kind) {
        case KernelKind::Auto:
            return have_avx2 ? eval_blocks_avx2 : eval_blocks_scalar;
        case KernelKind::Scalar: return eval_blocks_scalar;
        case KernelKind::Avx2:
            if (!have_avx2)
                throw std::runtime_error("avx2 kernel requested but unsupported");
            return eval_blocks_avx2;
    }
#else
    if (kind == KernelKind::Avx2)
        throw std::runtime_error("avx2 kernel unavailable on this platform");
#endif
    return eval_blocks_scalar;
}

std::string_view active_kernel_name(KernelKind kind) {
    const BlockKernelFn fn = resolve_kernel(kind);
#if defined(__x86_64__) || defined(_M_X64)
    if (fn == eval_blocks_avx2) return "avx2";
#endif
    (void)fn;
    return "scalar";
}

}  // namespace linkopt
