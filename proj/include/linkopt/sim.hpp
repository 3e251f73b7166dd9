// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "linkopt/fading.hpp"
#include "linkopt/policy.hpp"
#include "linkopt/sim_kernels.hpp"

namespace linkopt {

struct SimConfig {
    long long n_blocks = 1'000'000;
    std::uint64_t seed = 1;
    KernelKind kernel = KernelKind::Auto;
};

struct SimReport {
    double ase_hat = 0.0;
    double ase_se = 0.0;     // standard error of ase_hat
    double power_hat = 0.0;
    double power_se = 0.0;
    double p_no_tx_hat = 0.0;
    long long outage_violations = 0;
    long long n_blocks = 0;
};

// Monte-Carlo block-fading validation: draws i.i.d. pre-adaptation SNRs,
// applies the policy per block, and aggregates the empirical ASE, transmit
// power, no-transmission fraction, and the count of blocks whose assigned
// rate exceeds what the post-adaptation SNR carries.  Pure function of its
// inputs; a given seed always produces the same report.
SimReport simulate(const AdaptationPolicy& policy, const FadingModel& model,
                   const SimConfig& cfg);

struct SimJob {
    const AdaptationPolicy* policy;
    FadingModel model;
    SimConfig cfg;
};

// Element-wise simulate; report order matches job order.
std::vector<SimReport> sweep_simulate(const std::vector<SimJob>& jobs);

}  // namespace linkopt
