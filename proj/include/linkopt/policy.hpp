// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linkopt/fading.hpp"

namespace linkopt {

enum class PolicyKind { ConstantPower, DiscretePower, ContinuousPower };

std::string_view to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view s);

// A link-adaptation scheme: N rate regions bounded by switching thresholds,
// K power sub-levels per region (K = 1 unless kind is DiscretePower), and
// per-region received-SNR targets kappa_n (absent for ConstantPower).
//
// Thresholds are stored row-major as an N x K matrix of linear SNRs,
// strictly increasing in scan order.  Region n covers [g(n,1), g(n+1,1)),
// with implicit outer edges g(0,1) = 0 and g(N+1,1) = +infinity; SNRs below
// g(1,1) mean no transmission (data buffered).
class AdaptationPolicy {
  public:
    AdaptationPolicy(PolicyKind kind, int n_codes, int n_levels,
                     std::vector<double> thresholds_linear,
                     std::vector<double> kappa);

    PolicyKind kind() const { return kind_; }
    int n_codes() const { return n_codes_; }
    int n_levels() const { return n_levels_; }

    // Row-major flattened thresholds, size N*K.
    std::span<const double> thresholds() const { return thresholds_; }
    double threshold(int n, int k) const {
        return thresholds_[static_cast<std::size_t>(n) * n_levels_ + k];
    }
    double first_threshold() const { return thresholds_.front(); }

    std::span<const double> kappa() const { return kappa_; }

    // Index of the flattened sub-region containing g, or -1 below g(1,1).
    int flat_index_of(double g) const;
    int region_of(double g) const;  // rate region, or -1

  private:
    PolicyKind kind_;
    int n_codes_;
    int n_levels_;
    std::vector<double> thresholds_;
    std::vector<double> kappa_;
};

struct PolicyMetrics {
    double ase = 0.0;                   // bits/s/Hz
    std::vector<double> se_per_region;  // bits/s/Hz, length N
    double avg_power = 0.0;             // fraction of the average power budget
    double p_no_tx = 0.0;
};

// Instantaneous transmit power as a fraction of the budget, S(g)/S_avg.
double power_at(const AdaptationPolicy& policy, const FadingModel& model,
                double g);

// Spectral efficiency transmitted at pre-adaptation SNR g (0 when buffering).
double rate_at(const AdaptationPolicy& policy, const FadingModel& model,
               double g);

// Received SNR after power adaptation: g * power_at(g).
double post_snr(const AdaptationPolicy& policy, const FadingModel& model,
                double g);

// Per-region spectral efficiencies (the code rates of the scheme).
std::vector<double> spectral_efficiencies(const AdaptationPolicy& policy,
                                          const FadingModel& model);

// Expected transmit power fraction, in closed form.
double avg_power(const AdaptationPolicy& policy, const FadingModel& model);

PolicyMetrics metrics(const AdaptationPolicy& policy, const FadingModel& model);

// JSON schema shared with the CLI.  Fields: kind, gbar_db, thresholds_db
// (N x K, dB, 6 decimals), kappa (optional), se, ase, p_no_tx.  Thresholds
// are quantized to 6 dB-decimals on write; se/ase/p_no_tx are recomputed
// from the quantized policy so a round trip reproduces them exactly.
std::string policy_to_json(const AdaptationPolicy& policy,
                           const FadingModel& model);

struct ParsedPolicy {
    AdaptationPolicy policy;
    FadingModel model;
};
ParsedPolicy policy_from_json(const std::string& text);

}  // namespace linkopt
