// SPDX-License-Identifier: Apache-2.0
#include "linkopt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace linkopt {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Convergent series, good for 0 < x <= 1:
//
//   E1(x) = -gamma - ln(x) + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;  // x^k / k!
    for (int k = 1; k <= 64; ++k) {
        term *= x / k;
        const double contrib = ((k & 1) ? term : -term) / k;
        sum += contrib;
        if (std::abs(contrib) < 1e-17 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Continued fraction (modified Lentz), good for x > 1; returns the scaled
// value exp(x) E1(x):
//
//   E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(x + 7 - ...))))
double e1_continued_fraction_scaled(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: requires x > 0");
    if (std::isinf(x)) return 0.0;
    return x <= 1.0 ? e1_series(x)
                    : e1_continued_fraction_scaled(x) * std::exp(-x);
}

double exp_integral_e1_scaled(double x) {
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1_scaled: requires x > 0");
    if (std::isinf(x)) return 0.0;
    return x <= 1.0 ? std::exp(x) * e1_series(x)
                    : e1_continued_fraction_scaled(x);
}

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    long n_evals = 0;
    long max_evals = 0;
    bool converged = true;
    double err_sum = 0.0;

    double eval(double x) {
        ++n_evals;
        return (*f)(x);
    }
};

// One adaptive panel: caller supplies f(a), f(b), f(m) and the whole-panel
// Simpson estimate; error controlled by Richardson extrapolation.
double simpson_panel(SimpsonState& st, double a, double b, double fa,
                     double fb, double fm, double whole, double tol,
                     int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.eval(lm);
    const double frm = st.eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double refined = left + right;
    const double err = (refined - whole) / 15.0;
    if (std::abs(err) <= tol || depth <= 0 || st.n_evals >= st.max_evals) {
        if (std::abs(err) > tol) {
            st.converged = false;
        }
        st.err_sum += std::abs(err);
        return refined + err;
    }
    return simpson_panel(st, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson_panel(st, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double a, double b, const Tolerance& tol) {
    SimpsonState st;
    st.f = &f;
    st.max_evals = std::max<long>(tol.max_iter, 64);
    const double fa = st.eval(a);
    const double fb = st.eval(b);
    const double fm = st.eval(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double target =
        std::max(tol.abs, tol.rel * std::max(std::abs(whole), 1e-30));
    const double value =
        simpson_panel(st, a, b, fa, fb, fm, whole, target, 60);
    return {value, st.err_sum, st.n_evals, st.converged};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const Tolerance& tol) {
    if (!tol.valid()) throw std::invalid_argument("integrate: bad tolerance");
    if (a == b) return {0.0, 0.0, 0, true};
    if (a > b) throw std::invalid_argument("integrate: requires a < b");
    if (std::isinf(b)) {
        // gamma = a + t/(1-t), d gamma = dt/(1-t)^2; the last sliver of t is
        // dropped, its image carries no mass for integrable f.
        auto g = [&f, a](double t) {
            const double u = 1.0 - t;
            if (u < 1e-14) return 0.0;
            return f(a + t / u) / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0 - 1e-12, tol);
    }
    return integrate_finite(f, a, b, tol);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
    if (!tol.valid()) throw std::invalid_argument("find_root: bad tolerance");
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::invalid_argument("find_root: no sign change on bracket");

    // Brent: inverse quadratic interpolation with bisection fallback.
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
            0.5 * tol.rel * std::abs(b) + 0.5 * tol.abs;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol.abs)
            return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

namespace {

// SplitMix64: deterministic seed-expansion stream for restarts.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

constexpr double kRejected = -std::numeric_limits<double>::infinity();

struct NmObjective {
    const std::function<double(std::span<const double>)>* f;
    std::span<const Interval> bounds;
    long n_evals = 0;

    double operator()(std::span<const double> x) {
        for (std::size_t i = 0; i < bounds.size(); ++i)
            if (x[i] < bounds[i].lo || x[i] > bounds[i].hi) return kRejected;
        ++n_evals;
        const double v = (*f)(x);
        return std::isnan(v) ? kRejected : v;
    }
};

struct NmOutcome {
    std::vector<double> x;
    double value;
    bool converged;
};

NmOutcome nelder_mead_max(NmObjective& obj, std::span<const double> x0,
                          double step, const Tolerance& tol) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> vals(n + 1);
    for (std::size_t j = 1; j <= n; ++j) {
        const Interval b = obj.bounds[j - 1];
        double s = step;
        if (pts[j][j - 1] + s > b.hi) s = -step;  // step inward at the edge
        pts[j][j - 1] = std::clamp(pts[j][j - 1] + s, b.lo, b.hi);
    }
    for (std::size_t j = 0; j <= n; ++j) vals[j] = obj(pts[j]);

    auto order = [&] {
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j)
                if (vals[j] > vals[i]) {
                    std::swap(vals[i], vals[j]);
                    std::swap(pts[i], pts[j]);
                }
    };
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    bool converged = false;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        order();
        double diam = 0.0;
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                diam = std::max(diam, std::abs(pts[j][i] - pts[0][i]));
        const double spread = std::isfinite(vals[n]) ? vals[0] - vals[n] : kInf;
        if (diam <= tol.rel * (1.0 + std::abs(pts[0][0])) &&
            (spread <= tol.abs * (1.0 + std::abs(vals[0])) || spread == 0.0)) {
            converged = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += pts[j][i];
            centroid[i] = s / static_cast<double>(n);
        }
        auto along = [&](std::vector<double>& out, double t) {
            for (std::size_t i = 0; i < n; ++i)
                out[i] = centroid[i] + t * (centroid[i] - pts[n][i]);
        };
        along(xr, 1.0);
        const double fr = obj(xr);
        if (fr > vals[0]) {
            along(xe, 2.0);
            const double fe = obj(xe);
            if (fe > fr) {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if (fr > vals[n - 1]) {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            const bool outside = fr > vals[n];
            along(xc, outside ? 0.5 : -0.5);
            const double fc = obj(xc);
            if (fc > (outside ? fr : vals[n])) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                for (std::size_t j = 1; j <= n; ++j) {
                    for (std::size_t i = 0; i < n; ++i)
                        pts[j][i] = pts[0][i] + 0.5 * (pts[j][i] - pts[0][i]);
                    vals[j] = obj(pts[j]);
                }
            }
        }
    }
    order();
    return {pts[0], vals[0], converged};
}

// Cyclic per-coordinate golden-section refinement at shrinking scales.
// Drives each partial derivative toward zero after Nelder-Mead stalls.
void coordinate_polish(NmObjective& obj, std::vector<double>& x, double& fx) {
    constexpr double gr = 0.6180339887498949;
    for (double scale = 1e-2; scale >= 1e-9; scale *= 1e-2) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            double a = std::max(x[i] - scale, obj.bounds[i].lo);
            double b = std::min(x[i] + scale, obj.bounds[i].hi);
            double c = b - gr * (b - a);
            double d = a + gr * (b - a);
            auto at = [&](double t) {
                std::vector<double> xx = x;
                xx[i] = t;
                return obj(xx);
            };
            double fc = at(c), fd = at(d);
            for (int k = 0; k < 40 && (b - a) > scale * 1e-8; ++k) {
                if (fc > fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - gr * (b - a);
                    fc = at(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + gr * (b - a);
                    fd = at(d);
                }
            }
            const double t = fc > fd ? c : d;
            const double ft = std::max(fc, fd);
            if (ft > fx) {
                x[i] = t;
                fx = ft;
            }
        }
    }
}

}  // namespace

OptimizerReport maximize(const std::function<double(std::span<const double>)>& f,
                         std::span<const double> init,
                         std::span<const Interval> bounds,
                         const Tolerance& tol, int restarts,
                         std::uint64_t seed) {
    if (bounds.empty() || bounds.size() != init.size())
        throw std::invalid_argument("maximize: bounds must match init");
    NmObjective obj{&f, bounds};
    const double f0 = obj(init);
    if (!std::isfinite(f0))
        throw std::invalid_argument("maximize: objective not finite at init");

    OptimizerReport rep;
    rep.best_value = f0;
    rep.best_point.assign(init.begin(), init.end());
    rep.n_restarts = std::max(restarts, 1);

    SplitMix64 rng{seed};
    std::vector<double> start(init.begin(), init.end());
    for (int r = 0; r < rep.n_restarts; ++r) {
        if (r > 0) {
            bool feasible = false;
            for (int attempt = 0; attempt < 25 && !feasible; ++attempt) {
                for (std::size_t i = 0; i < start.size(); ++i) {
                    const Interval b = bounds[i];
                    const double width = std::min(b.hi - b.lo, 6.0);
                    const double p =
                        init[i] + (rng.uniform01() - 0.5) * width;
                    start[i] = std::clamp(p, b.lo, b.hi);
                }
                feasible = std::isfinite(obj(start));
            }
            if (!feasible) continue;
        }
        NmOutcome out = nelder_mead_max(obj, start, 0.4, tol);
        if (out.value > rep.best_value ||
            (out.value == rep.best_value && out.converged)) {
            rep.best_value = out.value;
            rep.best_point = out.x;
            rep.converged = out.converged;
        }
    }
    coordinate_polish(obj, rep.best_point, rep.best_value);
    rep.n_evals = obj.n_evals;
    if (rep.best_value < f0) {  // never return below the starting value
        rep.best_value = f0;
        rep.best_point.assign(init.begin(), init.end());
    }
    return rep;
}

}  // namespace linkopt
