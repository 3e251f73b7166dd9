// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "linkopt/fading.hpp"
#include "linkopt/policy.hpp"

namespace linkopt {

// Flattened lookup tables for the per-block inner loop.  `value` holds the
// transmit power fraction per sub-region for constant/discrete schemes, and
// kappa per region (power = kappa/g) for the continuous scheme.  `min_post`
// is the smallest post-adaptation SNR that still carries the region's rate,
// with a 1e-12-bit slack absorbing boundary round-off.
struct PolicyTable {
    enum class PowerLaw { PerIndex, KappaOverSnr };
    PowerLaw law;
    std::vector<double> thresholds;
    std::vector<double> rate;
    std::vector<double> value;
    std::vector<double> min_post;
};

PolicyTable compile_policy(const AdaptationPolicy& policy,
                           const FadingModel& model);

// Four independent accumulator lanes; block i lands in lane i % 4 in both
// kernels, so the scalar and SIMD paths produce identical partial sums.
struct BlockAccumulators {
    double rate_sum[4] = {0, 0, 0, 0};
    double rate_sq[4] = {0, 0, 0, 0};
    double power_sum[4] = {0, 0, 0, 0};
    double power_sq[4] = {0, 0, 0, 0};
    std::uint64_t no_tx[4] = {0, 0, 0, 0};
    std::uint64_t violations[4] = {0, 0, 0, 0};
};

using BlockKernelFn = void (*)(const PolicyTable&, const double* snr,
                               std::size_t n, BlockAccumulators&);

void eval_blocks_scalar(const PolicyTable& table, const double* snr,
                        std::size_t n, BlockAccumulators& acc);
#if defined(__x86_64__) || defined(_M_X64)
void eval_blocks_avx2(const PolicyTable& table, const double* snr,
                      std::size_t n, BlockAccumulators& acc);
#endif

enum class KernelKind { Auto, Scalar, Avx2 };

// Runtime selection: Avx2 when the CPU supports it, scalar otherwise.
// Throws std::runtime_error if Avx2 is requested but unavailable.
BlockKernelFn resolve_kernel(KernelKind kind);
std::string_view active_kernel_name(KernelKind kind);

}  // namespace linkopt
