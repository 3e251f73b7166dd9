// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "linkopt/fading.hpp"
#include "linkopt/numerics.hpp"

using namespace linkopt;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const Tolerance kTight{1e-12, 1e-13, 2000000};

double quad(const std::function<double(double)>& f, double a, double b) {
    const QuadratureResult r = integrate(f, a, b, kTight);
    REQUIRE(r.converged);
    return r.value;
}
}  // namespace

TEST_CASE("pdf closed form and normalization") {
    const FadingModel unit = FadingModel::rayleigh(1.0);
    CHECK(unit.pdf(0.0) == doctest::Approx(1.0));
    const FadingModel m = FadingModel::rayleigh(10.0);
    CHECK(m.pdf(10.0) == doctest::Approx(std::exp(-1.0) / 10.0).epsilon(1e-12));
    CHECK(quad([&](double g) { return m.pdf(g); }, 0.0, kInf) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(m.pdf(-0.1), std::domain_error);
}

TEST_CASE("cdf endpoints and closed form") {
    const FadingModel m = FadingModel::rayleigh(10.0);
    CHECK(m.cdf(0.0) == 0.0);
    CHECK(m.cdf(10.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(m.cdf(kInf) == 1.0);
    CHECK_THROWS_AS(m.cdf(-1.0), std::domain_error);
}

TEST_CASE("inv_cdf closed form and round trip") {
    const FadingModel unit = FadingModel::rayleigh(1.0);
    CHECK(unit.inv_cdf(0.0) == 0.0);
    CHECK(unit.inv_cdf(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(unit.inv_cdf(1.0), std::domain_error);
    CHECK_THROWS_AS(unit.inv_cdf(-0.1), std::domain_error);
    const FadingModel m = FadingModel::rayleigh(3.7);
    for (double g : {0.1, 1.0, 17.4})
        CHECK(m.inv_cdf(m.cdf(g)) == doctest::Approx(g).epsilon(1e-9));
}

TEST_CASE("prob_mass closed forms") {
    const FadingModel m = FadingModel::rayleigh(10.0);
    CHECK(prob_mass(m, {0.0, kInf}) == doctest::Approx(1.0));
    CHECK(prob_mass(m, {10.0, kInf}) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(prob_mass(m, {2.75, 5.37}) ==
          doctest::Approx(quad([&](double g) { return m.pdf(g); }, 2.75, 5.37))
              .epsilon(1e-9));
}

TEST_CASE("inv_snr_mass closed form vs quadrature") {
    const FadingModel m = FadingModel::rayleigh(10.0);
    CHECK_THROWS_AS(inv_snr_mass(m, {0.0, 1.0}), std::domain_error);
    CHECK(inv_snr_mass(m, {10.0, kInf}) ==
          doctest::Approx(0.1 * exp_integral_e1(1.0)).epsilon(1e-12));
    CHECK(inv_snr_mass(m, {10.0, kInf}) ==
          doctest::Approx(
              quad([&](double g) { return m.pdf(g) / g; }, 10.0, kInf))
              .epsilon(1e-9));
    CHECK(inv_snr_mass(m, {2.75, 17.38}) ==
          doctest::Approx(
              quad([&](double g) { return m.pdf(g) / g; }, 2.75, 17.38))
              .epsilon(1e-9));
}

TEST_CASE("discrete_power_mass") {
    const FadingModel m = FadingModel::rayleigh(10.0);
    SUBCASE("single term") {
        const double edges[] = {2.0, 7.0};
        CHECK(discrete_power_mass(m, edges) ==
              doctest::Approx(prob_mass(m, {2.0, 7.0}) / 2.0).epsilon(1e-15));
    }
    SUBCASE("densifying sub-levels approach the continuous mass") {
        // first-order convergence in K: the K = 256 equi-probable grid sits
        // at 3.9e-3 relative error, quartering each time K quadruples
        const double lo = 2.75, hi = 17.38;
        const double c = inv_snr_mass(m, {lo, hi});
        const double flo = m.cdf(lo), fhi = m.cdf(hi);
        double prev_err = 0.0;
        for (int K : {256, 1024}) {
            std::vector<double> edges(K + 1);
            for (int k = 0; k <= K; ++k)
                edges[k] = m.inv_cdf(flo + (fhi - flo) * k / K);
            edges.back() = hi;
            const double err = std::abs(discrete_power_mass(m, edges) - c);
            CHECK(err <= (K == 256 ? 5e-3 : 1.3e-3) * c);
            if (prev_err > 0.0) CHECK(err <= prev_err / 3.5);
            prev_err = err;
        }
    }
    SUBCASE("unordered edges rejected") {
        const double edges[] = {2.0, 1.5, 3.0};
        CHECK_THROWS_AS(discrete_power_mass(m, edges), std::invalid_argument);
    }
}

TEST_CASE("region integral properties") {
    const FadingModel m = FadingModel::rayleigh(7.3);
    std::uint64_t state = 4242;
    auto next01 = [&state] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state >> 11) * 0x1.0p-53;
    };
    SUBCASE("prob_mass over a partition sums to one") {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> cuts{0.0};
            for (int i = 0; i < 6; ++i)
                cuts.push_back(cuts.back() + 5.0 * next01() + 1e-3);
            cuts.push_back(kInf);
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
                total += prob_mass(m, {cuts[i], cuts[i + 1]});
            CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("inv_snr_mass is additive over adjacent regions") {
        for (int trial = 0; trial < 10; ++trial) {
            const double a = 0.2 + 3.0 * next01();
            const double b = a + 2.0 * next01() + 1e-3;
            const double c = b + 9.0 * next01() + 1e-3;
            CHECK(inv_snr_mass(m, {a, b}) + inv_snr_mass(m, {b, c}) ==
                  doctest::Approx(inv_snr_mass(m, {a, c})).epsilon(1e-12));
        }
    }
    SUBCASE("discrete mass dominates the continuous mass") {
        for (int trial = 0; trial < 20; ++trial) {
            const double lo = 0.3 + 4.0 * next01();
            const double hi = lo + 0.5 + 12.0 * next01();
            std::vector<double> edges{lo};
            for (int k = 0; k < 3; ++k)
                edges.push_back(edges.back() +
                                (hi - edges.back()) * (0.2 + 0.5 * next01()));
            edges.push_back(hi);
            CHECK(discrete_power_mass(m, edges) >= inv_snr_mass(m, {lo, hi}));
        }
    }
}

TEST_CASE("sampler statistics and determinism") {
    const FadingModel m = FadingModel::rayleigh(10.0);
    const std::size_t n = 1000000;
    const std::vector<double> draws = m.sample(2024, n);
    const double mean =
        std::accumulate(draws.begin(), draws.end(), 0.0) / double(n);
    CHECK(mean == doctest::Approx(10.0).epsilon(0.005));  // 3 sigma ~ 0.03
    const double at_mean =
        double(std::count_if(draws.begin(), draws.end(),
                             [](double g) { return g <= 10.0; })) /
        double(n);
    CHECK(at_mean == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.004));

    const std::vector<double> again = m.sample(2024, 1000);
    for (std::size_t i = 0; i < again.size(); ++i) CHECK(draws[i] == again[i]);

    SnrSampler stream(m, 2024);
    for (std::size_t i = 0; i < 100; ++i) CHECK(stream.next() == draws[i]);
}
