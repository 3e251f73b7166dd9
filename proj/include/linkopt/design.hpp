// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "linkopt/fading.hpp"
#include "linkopt/numerics.hpp"
#include "linkopt/policy.hpp"

namespace linkopt {

struct SolverOptions {
    Tolerance tol{1e-10, 1e-13, 40000};
    int restarts = 8;
    std::uint64_t seed = 42;
};

struct DesignSpec {
    PolicyKind kind = PolicyKind::ConstantPower;
    int n_codes = 1;
    int n_power_levels = 1;  // used by DiscretePower only
    std::optional<double> outage_cap;  // max allowed P(no transmission)
    SolverOptions solver;
};

struct DesignResult {
    AdaptationPolicy policy;
    PolicyMetrics metrics;
    double masa = 0.0;                   // = metrics.ase
    std::optional<double> lambda;        // waterfilling multiplier (if any)
    OptimizerReport report;
};

// Waterfilling allocation for the region targets: given region
// probabilities w_n and power masses coef_n (c_n or d_n),
//
//   lambda  = sum(w) / (1 + sum(coef)),   kappa_n = w_n/(lambda coef_n) - 1,
//
// which meets sum(kappa_n coef_n) = 1 identically.  Returns nullopt when
// any kappa_n <= 0 (infeasible candidate; caller rejects the threshold set).
struct WaterfillResult {
    std::vector<double> kappa;
    double lambda;
};
std::optional<WaterfillResult> waterfill_kappa(std::span<const double> w,
                                               std::span<const double> coef);

// Optimal sub-division of one rate region [lo, hi) into K power levels:
// the edges minimizing the discrete power mass d.  Stationarity gives the
// recursion F(g_{k+1}) = F(g_k) + g_k^2 f(g_k) (1/g_{k-1} - 1/g_k), solved
// by shooting on the first interior edge.  Returns the K left edges.
std::vector<double> optimal_sub_levels(const FadingModel& model, double lo,
                                       double hi, int K);

// Designers for the three scheme families.  Each returns a policy whose
// average power meets the budget with equality and whose thresholds are a
// multi-start local optimum of the family's ASE.
DesignResult design_constant(const DesignSpec& spec, const FadingModel& model);
DesignResult design_discrete(const DesignSpec& spec, const FadingModel& model);
DesignResult design_continuous(const DesignSpec& spec, const FadingModel& model);

// Dispatch on spec.kind; applies the no-transmission cap when present.
DesignResult design(const DesignSpec& spec, const FadingModel& model);

// Same designs with the first threshold pinned to inv_cdf(outage_cap), the
// largest value meeting P(no tx) <= cap.  Requires spec.outage_cap.
DesignResult design_with_outage_cap(const DesignSpec& spec,
                                    const FadingModel& model);

// Next switching threshold of the constant-power scheme from the
// stationarity recursion; nullopt when the cdf argument reaches 1
// (candidate infeasible).
std::optional<double> next_threshold_constant(double g_prev, double g_cur,
                                              double g_first,
                                              const FadingModel& model);

// Shannon baselines for the fading channel with transmitter CSI.
struct CapacityPoint {
    double gbar;
    double c_ora;      // continuous rate, constant power
    double c_opra;     // continuous rate and power (waterfilling)
    double gamma_cut;  // waterfilling cutoff SNR
};

double capacity_ora(const FadingModel& model);
double gamma_cut(const FadingModel& model);
CapacityPoint capacity_opra(const FadingModel& model);

// Expected-rate comparator: two cdf-contiguous regions, one rate and one
// power level per region under an average power constraint, transmission in
// every state, outage whenever the channel cannot carry the assigned rate.
struct ArtResult {
    double art;        // max expected rate, counting outage blocks as zero
    double p_outage;   // probability a transmitted block is corrupted
    double boundary;   // region split point (linear SNR)
    double alpha[2];   // per-region rate support points (linear SNR)
    double power[2];   // per-region transmit power fractions
};
ArtResult art_two_region(const FadingModel& model);

}  // namespace linkopt
