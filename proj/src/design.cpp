// SPDX-License-Identifier: Apache-2.0
#include "linkopt/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace linkopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2e = 1.4426950408889634;

double log2_1p(double x) { return std::log1p(x) * kLog2e; }

}  // namespace

std::optional<WaterfillResult> waterfill_kappa(std::span<const double> w,
                                               std::span<const double> coef) {
    if (w.empty() || w.size() != coef.size())
        throw std::invalid_argument("waterfill_kappa: w and coef must match");
    double w_sum = 0.0, coef_sum = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n) {
        if (!(w[n] > 0.0) || !(coef[n] > 0.0))
            throw std::invalid_argument("waterfill_kappa: masses must be positive");
        w_sum += w[n];
        coef_sum += coef[n];
    }
    const double lambda = w_sum / (1.0 + coef_sum);
    WaterfillResult res;
    res.lambda = lambda;
    res.kappa.resize(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) {
        res.kappa[n] = w[n] / (lambda * coef[n]) - 1.0;
        // underflow of lambda*coef can blow kappa up to infinity; treat any
        // non-finite allocation as infeasible like a nonpositive one
        if (!(res.kappa[n] > 0.0) || !std::isfinite(res.kappa[n]))
            return std::nullopt;
    }
    return res;
}

std::optional<double> next_threshold_constant(double g_prev, double g_cur,
                                              double g_first,
                                              const FadingModel& model) {
    if (!(g_prev >= 0.0) || !(g_prev <= g_cur) || !(g_first > 0.0))
        throw std::invalid_argument("next_threshold_constant: bad thresholds");
    const double base = 1.0 - model.cdf(g_first);
    const double arg =
        model.cdf(g_cur) + (base + g_cur) *
                               std::log((base + g_cur) / (base + g_prev)) *
                               model.pdf(g_cur);
    if (!(arg < 1.0)) return std::nullopt;  // cdf argument overflow
    return model.inv_cdf(std::max(arg, 0.0));
}

std::vector<double> optimal_sub_levels(const FadingModel& model, double lo,
                                       double hi, int K) {
    if (!(lo > 0.0) || !(lo < hi) || K < 1)
        throw std::invalid_argument("optimal_sub_levels: bad region");
    std::vector<double> subs(static_cast<std::size_t>(K), lo);
    if (K == 1) return subs;

    const double f_hi = std::isinf(hi) ? 1.0 : model.cdf(hi);

    // Shoot on the first interior edge; the stationarity recursion
    //   F(g_{k+1}) = F(g_k) + g_k^2 f(g_k) (1/g_{k-1} - 1/g_k)
    // fills the rest.  `edges`, when given, receives the K left edges
    // lo, g_2, ..., g_K.  Returns the cdf at the implied right edge
    // g_{K+1}, or 2.0 when the recursion runs off the support.
    auto shoot = [&](double g2, std::vector<double>* edges) -> double {
        double gkm = lo, gk = g2;
        if (edges) {
            (*edges)[0] = lo;
            (*edges)[1] = g2;
        }
        for (int k = 2; k <= K; ++k) {
            const double step = gk * gk * model.pdf(gk) * (gk - gkm) / (gkm * gk);
            const double arg = model.cdf(gk) + step;
            if (!std::isfinite(arg) || arg >= 1.0) return 2.0;
            const double next = model.inv_cdf(arg);
            if (edges && k < K) (*edges)[static_cast<std::size_t>(k)] = next;
            gkm = gk;
            gk = next;
        }
        return model.cdf(gk);
    };

    double a = lo * (1.0 + 1e-12);
    if (shoot(a, nullptr) >= f_hi) {
        // even the tightest packing overshoots; degenerate candidate
        return subs;
    }
    double b = 2.0 * lo + model.gbar();
    for (int i = 0; i < 80 && shoot(b, nullptr) < f_hi; ++i) {
        b = lo + (b - lo) * 2.0;
        if (b > 1e18) break;
    }
    for (int i = 0; i < 90; ++i) {
        const double m = 0.5 * (a + b);
        if (shoot(m, nullptr) < f_hi)
            a = m;
        else
            b = m;
    }
    if (shoot(a, &subs) >= 1.5) return std::vector<double>(K, lo);
    return subs;
}

namespace {

// -------- shared designer harness --------

struct Candidate {
    double masa = kNegInf;
    std::vector<double> boundaries;        // N region edges
    std::vector<double> thresholds_flat;   // N*K switching thresholds
    std::vector<double> kappa;             // empty for constant power
    double lambda = 0.0;
    bool has_lambda = false;
};

std::vector<double> region_masses(const FadingModel& model,
                                  std::span<const double> bounds) {
    std::vector<double> w(bounds.size());
    for (std::size_t n = 0; n < bounds.size(); ++n) {
        const double hi = n + 1 < bounds.size() ? bounds[n + 1] : kInf;
        w[n] = prob_mass(model, {bounds[n], hi});
    }
    return w;
}

bool strictly_increasing(std::span<const double> v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1] < v[i])) return false;
    return true;
}

std::optional<Candidate> eval_constant(const FadingModel& model,
                                       std::span<const double> bounds) {
    const double first = bounds[0];
    const double keep = 1.0 - model.cdf(first);
    if (!(keep > 0.0)) return std::nullopt;
    const double boost = 1.0 / keep;
    Candidate c;
    c.masa = 0.0;
    const std::vector<double> w = region_masses(model, bounds);
    for (std::size_t n = 0; n < bounds.size(); ++n) {
        if (!(w[n] > 0.0)) return std::nullopt;
        c.masa += log2_1p(bounds[n] * boost) * w[n];
    }
    c.boundaries.assign(bounds.begin(), bounds.end());
    c.thresholds_flat = c.boundaries;
    return c;
}

std::optional<Candidate> eval_continuous(const FadingModel& model,
                                         std::span<const double> bounds) {
    const std::vector<double> w = region_masses(model, bounds);
    std::vector<double> cmass(bounds.size());
    for (std::size_t n = 0; n < bounds.size(); ++n) {
        if (!(w[n] > 0.0)) return std::nullopt;
        const double hi = n + 1 < bounds.size() ? bounds[n + 1] : kInf;
        cmass[n] = inv_snr_mass(model, {bounds[n], hi});
        if (!(cmass[n] > 0.0) || !std::isfinite(cmass[n])) return std::nullopt;
    }
    auto wf = waterfill_kappa(w, cmass);
    if (!wf) return std::nullopt;
    Candidate c;
    c.masa = 0.0;
    for (std::size_t n = 0; n < bounds.size(); ++n)
        c.masa += log2_1p(wf->kappa[n]) * w[n];
    c.boundaries.assign(bounds.begin(), bounds.end());
    c.thresholds_flat = c.boundaries;
    c.kappa = std::move(wf->kappa);
    c.lambda = wf->lambda;
    c.has_lambda = true;
    return c;
}

std::optional<Candidate> eval_discrete(const FadingModel& model,
                                       std::span<const double> bounds, int K) {
    const std::size_t N = bounds.size();
    const std::vector<double> w = region_masses(model, bounds);
    std::vector<double> d(N);
    std::vector<double> flat(N * static_cast<std::size_t>(K));
    std::vector<double> edges(static_cast<std::size_t>(K) + 1);
    for (std::size_t n = 0; n < N; ++n) {
        if (!(w[n] > 0.0)) return std::nullopt;
        const double hi = n + 1 < N ? bounds[n + 1] : kInf;
        const std::vector<double> subs =
            optimal_sub_levels(model, bounds[n], hi, K);
        std::copy(subs.begin(), subs.end(),
                  flat.begin() + static_cast<std::ptrdiff_t>(n * K));
        std::copy(subs.begin(), subs.end(), edges.begin());
        edges[static_cast<std::size_t>(K)] = hi;
        if (!strictly_increasing(edges)) return std::nullopt;  // collapsed
        d[n] = discrete_power_mass(model, edges);
        if (!(d[n] > 0.0) || !std::isfinite(d[n])) return std::nullopt;
    }
    auto wf = waterfill_kappa(w, d);
    if (!wf) return std::nullopt;
    Candidate c;
    c.masa = 0.0;
    for (std::size_t n = 0; n < N; ++n)
        c.masa += log2_1p(wf->kappa[n]) * w[n];
    c.boundaries.assign(bounds.begin(), bounds.end());
    c.thresholds_flat = std::move(flat);
    c.kappa = std::move(wf->kappa);
    c.lambda = wf->lambda;
    c.has_lambda = true;
    return c;
}

// Ordered thresholds from an unconstrained vector:
//   g_1 = exp(x_1) (or pinned), g_{j+1} = g_j (1 + exp(x_{j+1})).
std::vector<double> unpack_boundaries(std::span<const double> x,
                                      std::optional<double> fixed_first) {
    std::vector<double> th;
    th.reserve(x.size() + (fixed_first ? 1 : 0));
    std::size_t j = 0;
    th.push_back(fixed_first ? *fixed_first : std::exp(x[j++]));
    for (; j < x.size(); ++j) th.push_back(th.back() * (1.0 + std::exp(x[j])));
    return th;
}

std::vector<double> pack_boundaries(std::span<const double> th,
                                    bool first_is_free) {
    std::vector<double> x;
    if (first_is_free) x.push_back(std::log(th[0]));
    for (std::size_t j = 1; j < th.size(); ++j) {
        const double ratio = th[j] / th[j - 1] - 1.0;
        x.push_back(std::log(std::max(ratio, 1e-12)));
    }
    return x;
}

using BoundaryEval =
    std::function<std::optional<Candidate>(std::span<const double>)>;

struct SearchResult {
    Candidate best;
    OptimizerReport report;
};

// Multi-start search over region boundaries in the unconstrained
// parametrization.  `seeds` are threshold-space starting points; the
// optimizer adds its own seeded perturbations around each.
SearchResult search_boundaries(const BoundaryEval& eval,
                               const std::vector<std::vector<double>>& seeds,
                               std::optional<double> fixed_first,
                               const SolverOptions& opts) {
    const bool first_free = !fixed_first.has_value();
    const std::size_t dims = seeds.front().size() - (first_free ? 0 : 1);
    auto objective = [&](std::span<const double> x) -> double {
        const std::vector<double> th = unpack_boundaries(x, fixed_first);
        if (!strictly_increasing(th) || !(th[0] > 0.0) || !(th.back() < 1e250))
            return kNegInf;
        const auto cand = eval(th);
        return cand && std::isfinite(cand->masa) ? cand->masa : kNegInf;
    };
    std::vector<Interval> box(dims, Interval{-45.0, 25.0});

    SearchResult out;
    out.report.n_evals = 0;
    out.report.best_value = kNegInf;
    int seed_index = 0;
    for (const auto& seed_th : seeds) {
        const std::vector<double> x0 = pack_boundaries(seed_th, first_free);
        if (!std::isfinite(objective(x0))) {
            ++seed_index;
            continue;
        }
        OptimizerReport rep =
            maximize(objective, x0, box, opts.tol, opts.restarts,
                     opts.seed + 1000ULL * static_cast<std::uint64_t>(seed_index));
        out.report.n_evals += rep.n_evals;
        out.report.n_restarts += rep.n_restarts;
        if (rep.best_value > out.report.best_value) {
            out.report.best_value = rep.best_value;
            out.report.best_point = rep.best_point;
            out.report.converged = rep.converged;
        }
        ++seed_index;
    }
    if (!std::isfinite(out.report.best_value))
        throw std::runtime_error("design: no feasible threshold set found");
    const std::vector<double> th =
        unpack_boundaries(out.report.best_point, fixed_first);
    out.best = *eval(th);
    return out;
}

DesignResult finish(const FadingModel& model, PolicyKind kind, int K,
                    const Candidate& cand, const OptimizerReport& report) {
    AdaptationPolicy policy(kind, static_cast<int>(cand.boundaries.size()), K,
                            cand.thresholds_flat, cand.kappa);
    DesignResult res{std::move(policy), {}, 0.0, std::nullopt, report};
    res.metrics = metrics(res.policy, model);
    res.masa = res.metrics.ase;
    if (cand.has_lambda) res.lambda = cand.lambda;
    return res;
}

OptimizerReport trivial_report(double value) {
    OptimizerReport rep;
    rep.best_value = value;
    rep.n_evals = 1;
    rep.n_restarts = 0;
    rep.converged = true;
    return rep;
}

// Constant-power boundaries are driven by (g11, g21) only; the recursion
// supplies the rest, so the search runs in at most two dimensions.
struct ConstantExpansion {
    const FadingModel* model;
    int n_codes;

    std::optional<std::vector<double>> operator()(
        std::span<const double> head) const {
        std::vector<double> th(head.begin(), head.end());
        th.reserve(static_cast<std::size_t>(n_codes));
        while (static_cast<int>(th.size()) < n_codes) {
            const std::size_t m = th.size();
            const auto next =
                next_threshold_constant(th[m - 2], th[m - 1], th[0], *model);
            if (!next || !(*next > th.back()) || !std::isfinite(*next))
                return std::nullopt;
            th.push_back(*next);
        }
        return th;
    }
};

DesignResult design_constant_impl(const DesignSpec& spec,
                                  const FadingModel& model,
                                  std::optional<double> fixed_first) {
    const int N = spec.n_codes;
    if (N < 1) throw std::invalid_argument("design_constant: need N >= 1");

    if (N == 1 && fixed_first) {
        const double pinned[] = {*fixed_first};
        const auto cand = eval_constant(model, pinned);
        return finish(model, PolicyKind::ConstantPower, 1, *cand,
                      trivial_report(cand->masa));
    }

    // Head = the free boundaries: (g11, g21) or (g21) when g11 is pinned.
    ConstantExpansion expand{&model, N};
    auto eval = [&](std::span<const double> head) -> std::optional<Candidate> {
        const auto th = expand(head);
        if (!th) return std::nullopt;
        return eval_constant(model, *th);
    };

    // The recursion is only defined on part of the (g11, g21) plane; scan a
    // quantile grid and keep the best feasible corners as seeds.  With g11
    // pinned only g21 is free, so that axis gets a finer sweep.
    const double f_lo = fixed_first ? model.cdf(*fixed_first) : 0.0;
    std::vector<std::pair<double, std::vector<double>>> scored;
    const int q1_steps = fixed_first ? 1 : 12;
    const int q2_steps = fixed_first ? 60 : 8;
    for (int i = 1; i <= q1_steps; ++i) {
        const double q1 = f_lo + (0.60 - f_lo) * i / 12.0;
        std::vector<double> head{fixed_first ? *fixed_first
                                             : model.inv_cdf(q1)};
        if (N >= 2) {
            // the feasible g21 band can hug the first threshold, so the
            // pinned case sweeps quadratically from it
            const double q2_lo = fixed_first ? f_lo : q1;
            for (int j = 1; j <= q2_steps; ++j) {
                const double frac = static_cast<double>(j) / (q2_steps + 1.0);
                const double q2 =
                    q2_lo + (0.97 - q2_lo) * (fixed_first ? frac * frac : frac);
                std::vector<double> head2 = head;
                head2.push_back(model.inv_cdf(q2));
                if (const auto cand = eval(head2))
                    scored.emplace_back(cand->masa, head2);
            }
        } else if (!fixed_first) {
            if (const auto cand = eval(head)) scored.emplace_back(cand->masa, head);
        }
    }
    if (scored.empty())
        throw std::runtime_error("design_constant: no feasible seed found");
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::vector<double>> seeds;
    for (std::size_t i = 0; i < scored.size() && i < 3; ++i)
        seeds.push_back(scored[i].second);

    SearchResult sr = search_boundaries(eval, seeds, fixed_first, spec.solver);
    const auto full = expand(sr.best.boundaries);
    Candidate cand = *eval_constant(model, *full);
    return finish(model, PolicyKind::ConstantPower, 1, cand, sr.report);
}

}  // namespace

DesignResult design_constant(const DesignSpec& spec, const FadingModel& model) {
    return design_constant_impl(spec, model, std::nullopt);
}

namespace {

DesignResult design_waterfilled_impl(const DesignSpec& spec,
                                     const FadingModel& model, bool discrete,
                                     std::optional<double> fixed_first) {
    const int N = spec.n_codes;
    const int K = discrete ? spec.n_power_levels : 1;
    if (N < 1) throw std::invalid_argument("design: need N >= 1");
    if (discrete && K < 1)
        throw std::invalid_argument("design_discrete: need K >= 1");

    const PolicyKind kind =
        discrete ? PolicyKind::DiscretePower : PolicyKind::ContinuousPower;
    auto eval = [&](std::span<const double> bounds) -> std::optional<Candidate> {
        return discrete ? eval_discrete(model, bounds, K)
                        : eval_continuous(model, bounds);
    };

    if (N == 1 && fixed_first) {
        const double pinned[] = {*fixed_first};
        const auto cand = eval(pinned);
        if (!cand)
            throw std::runtime_error("design: pinned threshold infeasible");
        return finish(model, kind, K, *cand, trivial_report(cand->masa));
    }

    // Candidate seeds: equal-probability partitions of the admissible SNR
    // range, swept toward the tail (capped designs can have a thin feasible
    // island at wide first regions), plus the constant-power optimum.
    const double f0 = fixed_first ? model.cdf(*fixed_first) : 0.0;
    auto shifted_partition = [&](double s) {
        std::vector<double> th;
        if (fixed_first) {
            th.push_back(*fixed_first);
            for (int j = 1; j < N; ++j)
                th.push_back(model.inv_cdf(
                    f0 + (1.0 - f0) * (s + (1.0 - s) * j / double(N))));
        } else {
            for (int j = 0; j < N; ++j)
                th.push_back(model.inv_cdf(
                    s + (1.0 - s) * (j + 1) / double(N + 1)));
        }
        return th;
    };
    std::vector<std::pair<double, std::vector<double>>> scored;
    for (int i = 0; i < 45; ++i) {
        const std::vector<double> th = shifted_partition(0.022 * i);
        if (!strictly_increasing(th)) continue;
        if (const auto cand = eval(th)) scored.emplace_back(cand->masa, th);
    }
    {
        DesignSpec cspec = spec;
        cspec.solver.restarts = std::max(2, spec.solver.restarts / 2);
        const DesignResult c = design_constant_impl(cspec, model, fixed_first);
        std::vector<double> th(c.policy.thresholds().begin(),
                               c.policy.thresholds().end());
        if (static_cast<int>(th.size()) == N)
            if (const auto cand = eval(th)) scored.emplace_back(cand->masa, th);
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::vector<double>> seeds;
    for (std::size_t i = 0; i < scored.size() && i < 3; ++i)
        seeds.push_back(scored[i].second);
    if (seeds.empty())
        throw std::runtime_error("design: no feasible threshold set found");

    SearchResult sr = search_boundaries(eval, seeds, fixed_first, spec.solver);
    return finish(model, kind, K, sr.best, sr.report);
}

}  // namespace

DesignResult design_discrete(const DesignSpec& spec, const FadingModel& model) {
    return design_waterfilled_impl(spec, model, /*discrete=*/true,
                                   std::nullopt);
}

DesignResult design_continuous(const DesignSpec& spec,
                               const FadingModel& model) {
    return design_waterfilled_impl(spec, model, /*discrete=*/false,
                                   std::nullopt);
}

DesignResult design_with_outage_cap(const DesignSpec& spec,
                                    const FadingModel& model) {
    if (!spec.outage_cap)
        throw std::invalid_argument("design_with_outage_cap: cap not set");
    const double cap = *spec.outage_cap;
    if (!(cap > 0.0 && cap < 1.0))
        throw std::invalid_argument("design_with_outage_cap: cap outside (0,1)");
    const double g11 = model.inv_cdf(cap);
    switch (spec.kind) {
        case PolicyKind::ConstantPower:
            return design_constant_impl(spec, model, g11);
        case PolicyKind::DiscretePower:
            return design_waterfilled_impl(spec, model, true, g11);
        case PolicyKind::ContinuousPower:
            return design_waterfilled_impl(spec, model, false, g11);
    }
    throw std::invalid_argument("design_with_outage_cap: bad kind");
}

DesignResult design(const DesignSpec& spec, const FadingModel& model) {
    if (spec.outage_cap) return design_with_outage_cap(spec, model);
    switch (spec.kind) {
        case PolicyKind::ConstantPower: return design_constant(spec, model);
        case PolicyKind::DiscretePower: return design_discrete(spec, model);
        case PolicyKind::ContinuousPower: return design_continuous(spec, model);
    }
    throw std::invalid_argument("design: bad kind");
}

double capacity_ora(const FadingModel& model) {
    // log2(e) e^{1/gbar} E1(1/gbar); the scaled form survives tiny gbar
    return kLog2e * exp_integral_e1_scaled(1.0 / model.gbar());
}

double gamma_cut(const FadingModel& model) {
    const double gbar = model.gbar();
    // residual of the cutoff condition int (1/c - 1/g) f dg = 1
    auto residual = [&](double c) {
        return std::exp(-c / gbar) / c -
               exp_integral_e1(c / gbar) / gbar - 1.0;
    };
    double hi = gbar;
    for (int i = 0; i < 200 && residual(hi) > 0.0; ++i) hi *= 2.0;
    const double lo = std::min(1e-12 * gbar, hi * 0.5);
    if (!(residual(lo) > 0.0 && residual(hi) < 0.0))
        throw std::runtime_error("gamma_cut: bracketing failed");
    return find_root(residual, lo, hi, Tolerance{1e-15, 1e-14, 300});
}

CapacityPoint capacity_opra(const FadingModel& model) {
    CapacityPoint p;
    p.gbar = model.gbar();
    p.gamma_cut = gamma_cut(model);
    p.c_ora = capacity_ora(model);
    p.c_opra = kLog2e * exp_integral_e1(p.gamma_cut / p.gbar);
    return p;
}

namespace {

// 1-D maximization by coarse grid + golden-section refinement.
double line_max(const std::function<double(double)>& f, double lo, double hi,
                double* arg_out) {
    constexpr int kGrid = 48;
    constexpr double gr = 0.6180339887498949;
    double best_x = lo, best_v = f(lo);
    for (int i = 1; i <= kGrid; ++i) {
        const double x = lo + (hi - lo) * i / kGrid;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - (hi - lo) / kGrid);
    double b = std::min(hi, best_x + (hi - lo) / kGrid);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 80 && (b - a) > 1e-13 * (1.0 + std::abs(best_x)); ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    const double x = fc > fd ? c : d;
    const double v = std::max(fc, fd);
    if (v > best_v) {
        best_v = v;
        best_x = x;
    }
    if (arg_out) *arg_out = best_x;
    return best_v;
}

}  // namespace

ArtResult art_two_region(const FadingModel& model) {
    const double gbar = model.gbar();
    const double span = 50.0 * gbar;

    // For fixed (split s, region-1 power p1): region 2's power follows from
    // the average power budget, and each region's rate support point is a
    // bounded 1-D search.
    struct Inner {
        double value;
        double a1, a2, p2;
    };
    auto evaluate = [&](double s, double p1) -> Inner {
        const double fs = model.cdf(s);
        const double p2 = (1.0 - p1 * fs) / (1.0 - fs);
        if (!(p2 > 0.0) || !std::isfinite(p2)) return {kNegInf, 0, 0, 0};
        double a1 = 0.0, a2 = s;
        const double t1 =
            p1 <= 0.0 ? 0.0
                      : line_max(
                            [&](double a) {
                                return log2_1p(a * p1) * (fs - model.cdf(a));
                            },
                            0.0, s, &a1);
        const double t2 = line_max(
            [&](double a) {
                return log2_1p(a * p2) * (1.0 - model.cdf(a));
            },
            s, s + span, &a2);
        return {t1 + t2, a1, a2, p2};
    };

    auto outer = [&](std::span<const double> y) {
        const double s = std::exp(y[0]);
        const double p1 = std::exp(y[1]);
        if (p1 * model.cdf(s) >= 1.0) return kNegInf;
        return evaluate(s, p1).value;
    };
    const std::vector<double> y0{std::log(gbar), std::log(0.5)};
    const std::vector<Interval> box{{std::log(gbar) - 10.0, std::log(gbar) + 5.0},
                                    {-12.0, 2.0}};
    OptimizerReport rep =
        maximize(outer, y0, box, Tolerance{1e-11, 1e-13, 20000}, 8, 7);

    const double s = std::exp(rep.best_point[0]);
    const double p1 = std::exp(rep.best_point[1]);
    const Inner in = evaluate(s, p1);
    ArtResult res;
    res.art = in.value;
    res.boundary = s;
    res.alpha[0] = in.a1;
    res.alpha[1] = in.a2;
    res.power[0] = p1;
    res.power[1] = in.p2;
    res.p_outage = model.cdf(in.a1) + (model.cdf(in.a2) - model.cdf(s));
    return res;
}

}  // namespace linkopt
