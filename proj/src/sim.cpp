// SPDX-License-Identifier: Apache-2.0
#include "linkopt/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace linkopt {

SimReport simulate(const AdaptationPolicy& policy, const FadingModel& model,
                   const SimConfig& cfg) {
    if (cfg.n_blocks < 1)
        throw std::invalid_argument("simulate: need at least one block");

    const PolicyTable table = compile_policy(policy, model);
    const BlockKernelFn kernel = resolve_kernel(cfg.kernel);

    constexpr std::size_t kChunk = 1 << 16;  // multiple of 4, keeps lanes aligned
    std::vector<double> buffer(kChunk);
    SnrSampler sampler(model, cfg.seed);
    BlockAccumulators acc;

    long long remaining = cfg.n_blocks;
    while (remaining > 0) {
        const std::size_t n =
            remaining >= static_cast<long long>(kChunk)
                ? kChunk
                : static_cast<std::size_t>(remaining);
        sampler.fill({buffer.data(), n});
        kernel(table, buffer.data(), n, acc);
        remaining -= static_cast<long long>(n);
    }

    // merge lanes in a fixed order so the result is kernel-independent
    double rate_sum = 0, rate_sq = 0, power_sum = 0, power_sq = 0;
    long long no_tx = 0, violations = 0;
    for (int lane = 0; lane < 4; ++lane) {
        rate_sum += acc.rate_sum[lane];
        rate_sq += acc.rate_sq[lane];
        power_sum += acc.power_sum[lane];
        power_sq += acc.power_sq[lane];
        no_tx += static_cast<long long>(acc.no_tx[lane]);
        violations += static_cast<long long>(acc.violations[lane]);
    }

    const double n = static_cast<double>(cfg.n_blocks);
    SimReport rep;
    rep.n_blocks = cfg.n_blocks;
    rep.ase_hat = rate_sum / n;
    rep.power_hat = power_sum / n;
    rep.p_no_tx_hat = static_cast<double>(no_tx) / n;
    rep.outage_violations = violations;
    if (cfg.n_blocks > 1) {
        const double var_rate =
            std::max(0.0, (rate_sq - n * rep.ase_hat * rep.ase_hat) / (n - 1.0));
        const double var_power =
            std::max(0.0,
                     (power_sq - n * rep.power_hat * rep.power_hat) / (n - 1.0));
        rep.ase_se = std::sqrt(var_rate / n);
        rep.power_se = std::sqrt(var_power / n);
    }
    return rep;
}

std::vector<SimReport> sweep_simulate(const std::vector<SimJob>& jobs) {
    std::vector<SimReport> reports;
    reports.reserve(jobs.size());
    for (const SimJob& job : jobs)
        reports.push_back(simulate(*job.policy, job.model, job.cfg));
    return reports;
}

}  // namespace linkopt
