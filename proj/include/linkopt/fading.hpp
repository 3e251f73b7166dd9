// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace linkopt {

// Stationary distribution of the pre-adaptation SNR.  Rayleigh fading gives
// an exponentially distributed SNR, f(g) = exp(-g/gbar)/gbar; all region
// integrals below then have closed forms.  `gbar` is linear (power ratio).
class FadingModel {
  public:
    enum class Kind { Rayleigh };

    static FadingModel rayleigh(double gbar);

    Kind kind() const { return kind_; }
    double gbar() const { return gbar_; }

    double pdf(double g) const;       // density, g >= 0
    double cdf(double g) const;       // F(g) in [0,1], g >= 0
    double inv_cdf(double p) const;   // F^{-1}(p), 0 <= p < 1

    // i.i.d. draws via the inverse-cdf transform of a seeded uniform stream.
    std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

  private:
    FadingModel(Kind kind, double gbar) : kind_(kind), gbar_(gbar) {}
    Kind kind_;
    double gbar_;
};

std::string_view to_string(FadingModel::Kind kind);

// Half-open pre-adaptation SNR interval [lo, hi); hi may be +infinity.
struct SnrRegion {
    double lo;
    double hi;
};

// w_n: probability that the SNR falls in the region.
double prob_mass(const FadingModel& model, const SnrRegion& r);

// c_n: int_lo^hi (1/g) f(g) dg.  Diverges as lo -> 0; throws
// std::domain_error for lo = 0.
double inv_snr_mass(const FadingModel& model, const SnrRegion& r);

// d_n: sum_k (1/g_k) * P[g_k <= g < g_{k+1}] for the K sub-levels of one
// rate region.  `sub_thresholds` holds the K+1 ordered edges (last may be
// +infinity).
double discrete_power_mass(const FadingModel& model,
                           std::span<const double> sub_thresholds);

// Streaming counterpart of FadingModel::sample for chunked consumers;
// the sequence for a given seed is identical to sample(seed, n).
class SnrSampler {
  public:
    SnrSampler(const FadingModel& model, std::uint64_t seed);
    double next();
    void fill(std::span<double> out);

  private:
    double gbar_;
    std::uint64_t state_;
};

}  // namespace linkopt
