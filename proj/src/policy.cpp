// SPDX-License-Identifier: Apache-2.0
#include "linkopt/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace linkopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double to_db(double lin) { return 10.0 * std::log10(lin); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

// 6 decimal places in dB; the quantized value is the canonical one.
double quantize_db6(double lin) {
    return from_db(std::round(to_db(lin) * 1e6) / 1e6);
}
}  // namespace

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::ConstantPower: return "constant";
        case PolicyKind::DiscretePower: return "discrete";
        case PolicyKind::ContinuousPower: return "continuous";
    }
    return "unknown";
}

PolicyKind policy_kind_from_string(std::string_view s) {
    if (s == "constant") return PolicyKind::ConstantPower;
    if (s == "discrete") return PolicyKind::DiscretePower;
    if (s == "continuous") return PolicyKind::ContinuousPower;
    throw std::invalid_argument("unknown policy kind: " + std::string(s));
}

AdaptationPolicy::AdaptationPolicy(PolicyKind kind, int n_codes, int n_levels,
                                   std::vector<double> thresholds_linear,
                                   std::vector<double> kappa)
    : kind_(kind),
      n_codes_(n_codes),
      n_levels_(n_levels),
      thresholds_(std::move(thresholds_linear)),
      kappa_(std::move(kappa)) {
    if (n_codes_ < 1)
        throw std::invalid_argument("policy: need at least one code");
    if (n_levels_ < 1)
        throw std::invalid_argument("policy: need at least one power level");
    if (kind_ != PolicyKind::DiscretePower && n_levels_ != 1)
        throw std::invalid_argument("policy: K > 1 requires discrete power");
    if (thresholds_.size() !=
        static_cast<std::size_t>(n_codes_) * static_cast<std::size_t>(n_levels_))
        throw std::invalid_argument("policy: threshold matrix must be N x K");
    if (!(thresholds_.front() > 0.0))
        throw std::invalid_argument("policy: thresholds must be positive");
    for (std::size_t i = 1; i < thresholds_.size(); ++i)
        if (!(thresholds_[i - 1] < thresholds_[i]))
            throw std::invalid_argument("policy: thresholds not increasing");
    if (kind_ == PolicyKind::ConstantPower) {
        if (!kappa_.empty())
            throw std::invalid_argument("policy: constant power has no kappa");
    } else {
        if (kappa_.size() != static_cast<std::size_t>(n_codes_))
            throw std::invalid_argument("policy: kappa must have one entry per code");
        for (double k : kappa_)
            if (!(k > 0.0))
                throw std::invalid_argument("policy: kappa must be positive");
    }
}

int AdaptationPolicy::flat_index_of(double g) const {
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), g);
    return static_cast<int>(it - thresholds_.begin()) - 1;
}

int AdaptationPolicy::region_of(double g) const {
    const int idx = flat_index_of(g);
    return idx < 0 ? -1 : idx / n_levels_;
}

double power_at(const AdaptationPolicy& policy, const FadingModel& model,
                double g) {
    if (g < 0.0) throw std::domain_error("power_at: negative SNR");
    const int idx = policy.flat_index_of(g);
    if (idx < 0) return 0.0;
    switch (policy.kind()) {
        case PolicyKind::ConstantPower:
            return 1.0 / (1.0 - model.cdf(policy.first_threshold()));
        case PolicyKind::ContinuousPower:
            return policy.kappa()[idx] / g;
        case PolicyKind::DiscretePower:
            return policy.kappa()[idx / policy.n_levels()] /
                   policy.thresholds()[idx];
    }
    return 0.0;
}

std::vector<double> spectral_efficiencies(const AdaptationPolicy& policy,
                                          const FadingModel& model) {
    std::vector<double> se(static_cast<std::size_t>(policy.n_codes()));
    if (policy.kind() == PolicyKind::ConstantPower) {
        const double boost =
            1.0 / (1.0 - model.cdf(policy.first_threshold()));
        for (int n = 0; n < policy.n_codes(); ++n)
            se[n] = std::log2(1.0 + policy.threshold(n, 0) * boost);
    } else {
        for (int n = 0; n < policy.n_codes(); ++n)
            se[n] = std::log2(1.0 + policy.kappa()[n]);
    }
    return se;
}

double rate_at(const AdaptationPolicy& policy, const FadingModel& model,
               double g) {
    if (g < 0.0) throw std::domain_error("rate_at: negative SNR");
    const int region = policy.region_of(g);
    if (region < 0) return 0.0;
    if (policy.kind() == PolicyKind::ConstantPower) {
        const double boost =
            1.0 / (1.0 - model.cdf(policy.first_threshold()));
        return std::log2(1.0 + policy.threshold(region, 0) * boost);
    }
    return std::log2(1.0 + policy.kappa()[region]);
}

double post_snr(const AdaptationPolicy& policy, const FadingModel& model,
                double g) {
    return g * power_at(policy, model, g);
}

double avg_power(const AdaptationPolicy& policy, const FadingModel& model) {
    const int N = policy.n_codes();
    const int K = policy.n_levels();
    switch (policy.kind()) {
        case PolicyKind::ConstantPower:
            // (1/(1-F)) * P[g >= g11] telescopes to 1 exactly.
            return 1.0;
        case PolicyKind::ContinuousPower: {
            double total = 0.0;
            for (int n = 0; n < N; ++n) {
                const double hi = n + 1 < N ? policy.threshold(n + 1, 0) : kInf;
                total += policy.kappa()[n] *
                         inv_snr_mass(model, {policy.threshold(n, 0), hi});
            }
            return total;
        }
        case PolicyKind::DiscretePower: {
            double total = 0.0;
            std::vector<double> edges(static_cast<std::size_t>(K) + 1);
            for (int n = 0; n < N; ++n) {
                for (int k = 0; k < K; ++k) edges[k] = policy.threshold(n, k);
                edges[K] = n + 1 < N ? policy.threshold(n + 1, 0) : kInf;
                total += policy.kappa()[n] * discrete_power_mass(model, edges);
            }
            return total;
        }
    }
    return 0.0;
}

PolicyMetrics metrics(const AdaptationPolicy& policy,
                      const FadingModel& model) {
    PolicyMetrics m;
    m.se_per_region = spectral_efficiencies(policy, model);
    const int N = policy.n_codes();
    m.ase = 0.0;
    for (int n = 0; n < N; ++n) {
        const double hi = n + 1 < N ? policy.threshold(n + 1, 0) : kInf;
        m.ase += m.se_per_region[n] *
                 prob_mass(model, {policy.threshold(n, 0), hi});
    }
    m.avg_power = avg_power(policy, model);
    m.p_no_tx = model.cdf(policy.first_threshold());
    return m;
}

std::string policy_to_json(const AdaptationPolicy& policy,
                           const FadingModel& model) {
    // Quantize thresholds first, then recompute the derived fields from the
    // quantized policy; what the file says is what the file evaluates to.
    const int N = policy.n_codes();
    const int K = policy.n_levels();
    std::vector<double> quantized(policy.thresholds().size());
    for (std::size_t i = 0; i < quantized.size(); ++i)
        quantized[i] = quantize_db6(policy.thresholds()[i]);
    AdaptationPolicy canon(policy.kind(), N, K, quantized,
                           std::vector<double>(policy.kappa().begin(),
                                               policy.kappa().end()));
    const PolicyMetrics m = metrics(canon, model);

    nlohmann::json j;
    j["kind"] = std::string(to_string(canon.kind()));
    j["gbar_db"] = std::round(to_db(model.gbar()) * 1e6) / 1e6;
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 0; n < N; ++n) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < K; ++k)
            row.push_back(std::round(to_db(canon.threshold(n, k)) * 1e6) / 1e6);
        rows.push_back(std::move(row));
    }
    j["thresholds_db"] = std::move(rows);
    if (!canon.kappa().empty()) j["kappa"] = canon.kappa();
    j["se"] = m.se_per_region;
    j["ase"] = m.ase;
    j["p_no_tx"] = m.p_no_tx;
    return j.dump(2);
}

ParsedPolicy policy_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("policy JSON: ") + e.what());
    }
    for (const char* field : {"kind", "gbar_db", "thresholds_db"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("policy JSON: missing field '") +
                                        field + "'");
    const PolicyKind kind = policy_kind_from_string(j["kind"].get<std::string>());
    const double gbar = from_db(j["gbar_db"].get<double>());
    const auto& rows = j["thresholds_db"];
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
        throw std::invalid_argument("policy JSON: thresholds_db must be N x K");
    const int N = static_cast<int>(rows.size());
    const int K = static_cast<int>(rows[0].size());
    std::vector<double> thresholds;
    thresholds.reserve(static_cast<std::size_t>(N) * K);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != K)
            throw std::invalid_argument("policy JSON: ragged thresholds_db");
        for (const auto& v : row) thresholds.push_back(from_db(v.get<double>()));
    }
    std::vector<double> kappa;
    if (j.contains("kappa")) kappa = j["kappa"].get<std::vector<double>>();
    return ParsedPolicy{AdaptationPolicy(kind, N, K, std::move(thresholds),
                                         std::move(kappa)),
                        FadingModel::rayleigh(gbar)};
}

}  // namespace linkopt
