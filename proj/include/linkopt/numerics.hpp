// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace linkopt {

struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;
    int max_iter = 10000;

    bool valid() const { return rel > 0.0 && abs >= 0.0 && max_iter >= 1; }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // estimate of the remaining error
    long n_evals = 0;
    bool converged = false;
};

struct OptimizerReport {
    double best_value = 0.0;
    std::vector<double> best_point;
    long n_evals = 0;
    int n_restarts = 0;
    bool converged = false;
};

struct Interval {
    double lo;
    double hi;
};

// E1(x) = int_x^inf exp(-t)/t dt, x > 0.  Relative error <= 1e-12.
// Throws std::domain_error for x <= 0 (E1 diverges at the origin).
double exp_integral_e1(double x);

// exp(x) * E1(x); stays representable where e^{-x} underflows (x ~ 700+).
double exp_integral_e1_scaled(double x);

// Adaptive Simpson quadrature of f over (a, b); b may be +infinity, in
// which case the tail is folded onto (0,1) via t -> a + t/(1-t).
// Never returns a silently wrong value: check .converged.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const Tolerance& tol = {});

// Brent root bracketing.  Requires f(lo)*f(hi) <= 0, else throws
// std::invalid_argument.  Result always lies inside [lo, hi].
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

// Derivative-free maximization: Nelder-Mead with deterministic multi-start
// plus a coordinate polish pass.  Box bounds are enforced by objective-side
// rejection (points outside score -inf).  A restart perturbs `init` inside
// the bounds, seeded; identical (inputs, seed) give identical results.
// Throws std::invalid_argument if f(init) is not finite.
OptimizerReport maximize(const std::function<double(std::span<const double>)>& f,
                         std::span<const double> init,
                         std::span<const Interval> bounds,
                         const Tolerance& tol = {1e-9, 1e-12, 10000},
                         int restarts = 8, std::uint64_t seed = 1);

}  // namespace linkopt
