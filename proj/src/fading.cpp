// SPDX-License-Identifier: Apache-2.0
#include "linkopt/fading.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "linkopt/numerics.hpp"

namespace linkopt {

FadingModel FadingModel::rayleigh(double gbar) {
    if (!(gbar > 0.0))
        throw std::invalid_argument("FadingModel: gbar must be positive");
    return FadingModel(Kind::Rayleigh, gbar);
}

std::string_view to_string(FadingModel::Kind kind) {
    switch (kind) {
        case FadingModel::Kind::Rayleigh: return "rayleigh";
    }
    return "unknown";
}

double FadingModel::pdf(double g) const {
    if (g < 0.0) throw std::domain_error("pdf: negative SNR");
    return std::exp(-g / gbar_) / gbar_;
}

double FadingModel::cdf(double g) const {
    if (g < 0.0) throw std::domain_error("cdf: negative SNR");
    return -std::expm1(-g / gbar_);
}

double FadingModel::inv_cdf(double p) const {
    if (p < 0.0 || p >= 1.0) throw std::domain_error("inv_cdf: p outside [0,1)");
    return -gbar_ * std::log1p(-p);
}

double prob_mass(const FadingModel& model, const SnrRegion& r) {
    if (!(r.lo >= 0.0) || !(r.lo < r.hi))
        throw std::invalid_argument("prob_mass: invalid region");
    const double lo = std::exp(-r.lo / model.gbar());
    const double hi = std::isinf(r.hi) ? 0.0 : std::exp(-r.hi / model.gbar());
    return lo - hi;
}

double inv_snr_mass(const FadingModel& model, const SnrRegion& r) {
    if (!(r.lo < r.hi)) throw std::invalid_argument("inv_snr_mass: invalid region");
    if (!(r.lo > 0.0))
        throw std::domain_error("inv_snr_mass: diverges for lo = 0");
    const double gbar = model.gbar();
    const double a = exp_integral_e1(r.lo / gbar);
    const double b = std::isinf(r.hi) ? 0.0 : exp_integral_e1(r.hi / gbar);
    return (a - b) / gbar;
}

double discrete_power_mass(const FadingModel& model,
                           std::span<const double> sub_thresholds) {
    if (sub_thresholds.size() < 2)
        throw std::invalid_argument("discrete_power_mass: need K+1 edges");
    if (!(sub_thresholds[0] > 0.0))
        throw std::invalid_argument("discrete_power_mass: first edge must be > 0");
    double d = 0.0;
    for (std::size_t k = 0; k + 1 < sub_thresholds.size(); ++k) {
        const double lo = sub_thresholds[k];
        const double hi = sub_thresholds[k + 1];
        if (!(lo < hi))
            throw std::invalid_argument("discrete_power_mass: edges not increasing");
        d += prob_mass(model, {lo, hi}) / lo;
    }
    return d;
}

namespace {

// SplitMix64 uniforms feed the inverse cdf; stateless per index would also
// work, but a simple forward stream keeps sample() and SnrSampler identical.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
    return (splitmix64(state) >> 11) * 0x1.0p-53;  // in [0, 1)
}

}  // namespace

std::vector<double> FadingModel::sample(std::uint64_t seed,
                                        std::size_t n) const {
    std::vector<double> out(n);
    SnrSampler s(*this, seed);
    s.fill(out);
    return out;
}

SnrSampler::SnrSampler(const FadingModel& model, std::uint64_t seed)
    : gbar_(model.gbar()), state_(seed) {}

double SnrSampler::next() {
    return -gbar_ * std::log1p(-uniform01(state_));
}

void SnrSampler::fill(std::span<double> out) {
    for (double& g : out) g = next();
}

}  // namespace linkopt
