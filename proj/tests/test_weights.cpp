#include "doctest.h"

#include <cmath>
#include <random>

#include "zerolab/numerics.hpp"
#include "zerolab/weights.hpp"

using namespace zerolab;

namespace {

SmoothWeight log_half() { return SmoothWeight(LogFamily{0.5}); }

SmoothWeight tabulated_log_half(double t_max = 2e6, int n = 4000) {
    // Log-spaced grid of the alpha = 1/2 log family.
    std::vector<double> ts{0.0}, ps{0.0};
    double t = 1e-4;
    double ratio = std::pow(t_max / t, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i, t *= ratio) {
        ts.push_back(t);
        ps.push_back(0.5 * std::log1p(t));
    }
    return SmoothWeight(TabulatedFamily{ts, ps});
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("phi closed forms") {
    SmoothWeight w = log_half();
    CHECK(w.phi(3.0) == doctest::Approx(0.5 * std::log(4.0)).epsilon(1e-15));
    CHECK(w.phi(0.0) == 0.0);
    SmoothWeight p(PowerFamily{0.5, 1.0});
    CHECK(p.phi(8.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.phi(0.0) == 0.0);
}

TEST_CASE("psi closed forms and inversion") {
    SmoothWeight w = log_half();
    CHECK(w.psi(1.0) == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-15));
    CHECK(w.psi(0.0) == 0.0);
    SmoothWeight p(PowerFamily{0.5, 1.0});
    CHECK(p.psi(2.0) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("inversion property on a log-spaced grid") {
    for (const SmoothWeight& w :
         {log_half(), SmoothWeight(PowerFamily{0.4, 0.7}), tabulated_log_half()}) {
        for (int i = 0; i < 1000; ++i) {
            double t = std::pow(10.0, -3.0 + 9.0 * i / 999.0);  // up to 1e6
            if (std::holds_alternative<TabulatedFamily>(w.family()) && t > 1e6)
                continue;
            double back = w.psi(w.phi(t));
            CHECK(std::abs(back - t) <= 1e-9 * (1.0 + t));
        }
    }
}

TEST_CASE("nu and sigma closed forms") {
    SmoothWeight w = log_half();
    auto [nu, sigma] = w.nu_sigma(10.0);
    CHECK(nu == doctest::Approx(99.0).epsilon(1e-13));
    CHECK(sigma == doctest::Approx(200.0).epsilon(1e-13));

    auto [nu2, sigma2] = w.nu_sigma(std::exp(0.5));
    CHECK(nu2 == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    CHECK(sigma2 == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-13));

    SmoothWeight w1(LogFamily{1.0});  // a(n) ~ 1/n!
    auto [nu3, sigma3] = w1.nu_sigma(100.0);
    CHECK(nu3 == doctest::Approx(99.0).epsilon(1e-13));
    CHECK(sigma3 == doctest::Approx(100.0).epsilon(1e-13));

    CHECK_THROWS_AS((void)w.nu(1.0), validation_error);
}

TEST_CASE("log_mu closed form vs quadrature") {
    SmoothWeight w = log_half();
    double expect = 99.0 / 2.0 - std::log(10.0);
    CHECK(w.log_mu(10.0) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(w.log_mu(1.0) == 0.0);
    SmoothWeight w1(LogFamily{1.0});
    CHECK(w1.log_mu(std::exp(1.0)) ==
          doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-13));
    // Independent quadrature oracle for int_0^{log R} psi.
    double quad = integrate_gk([&](double s) { return w.psi(s); }, 0.0,
                               std::log(10.0), 1e-11);
    CHECK(w.log_mu(10.0) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("coeff_log closed form, quadrature cross-check") {
    SmoothWeight w = log_half();
    CHECK(w.coeff_log(1) ==
          doctest::Approx(-0.5 * (2.0 * std::log(2.0) - 1.0)).epsilon(1e-13));
    CHECK(w.coeff_log(0) == 0.0);
    double expect100 = -0.5 * (101.0 * std::log(101.0) - 100.0);
    CHECK(w.coeff_log(100) == doctest::Approx(expect100).epsilon(1e-13));
    double quad = -integrate_gk([&](double t) { return w.phi(t); }, 0.0, 100.0,
                                1e-11);
    CHECK(w.coeff_log(100) == doctest::Approx(quad).epsilon(1e-12));
    // log a(100) ~ log (100!)^{-1/2} within O(log n).
    double stirling = -0.5 * std::lgamma(101.0);
    CHECK(std::abs(w.coeff_log(100) - stirling) < 0.5 * std::log(101.0) + 3.0);
}

TEST_CASE("omega identities") {
    SmoothWeight w = log_half();
    double nu = w.nu(10.0);
    CHECK(w.omega(10.0, nu) == doctest::Approx(w.log_mu(10.0)).epsilon(1e-12));
    CHECK(w.omega(10.0, 109.0) - w.omega(10.0, 99.0) ==
          doctest::Approx(-0.242044).epsilon(1e-4));
    CHECK(w.omega(10.0, 0.0) == 0.0);
}

TEST_CASE("omega stationarity at nu across random radii") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logR(std::log(2.0), std::log(1000.0));
    for (const SmoothWeight& w :
         {log_half(), SmoothWeight(LogFamily{1.0}), SmoothWeight(PowerFamily{0.5, 1.0})}) {
        for (int i = 0; i < 50; ++i) {
            double R = std::exp(logR(rng));
            auto [nu, sigma] = w.nu_sigma(R);
            // Small step for omega' (truncation-limited), larger step for
            // omega'' (rounding-limited).
            double d1 = 3e-5 * (1.0 + nu);
            double fd1 = (w.omega(R, nu + d1) - w.omega(R, nu - d1)) / (2.0 * d1);
            CHECK(std::abs(fd1) <= 1e-8);
            double d2 = 2e-3 * (1.0 + nu);
            double fd2 = (w.omega(R, nu + d2) - 2.0 * w.omega(R, nu) +
                          w.omega(R, nu - d2)) /
                         (d2 * d2);
            CHECK(std::abs(fd2 + 1.0 / sigma) <= 1e-6 / sigma);
        }
    }
}

TEST_CASE("gamma masses") {
    SmoothWeight w = log_half();
    CHECK(w.gamma_mass(Disk{10.0}) == doctest::Approx(99.0).epsilon(1e-13));
    CHECK(w.gamma_mass(Disk{1.0}) == 0.0);
    CHECK(w.gamma_mass(Disk{0.5}) == 0.0);
    CHECK(w.gamma_mass(AnnulusSector{5.0, 10.0, 0.0, 0.25}) ==
          doctest::Approx(0.25 * (99.0 - 24.0)).epsilon(1e-13));
    CHECK_THROWS_AS((void)w.gamma_mass(AnnulusSector{5.0, 4.0, 0.0, 0.25}),
                    validation_error);
}

TEST_CASE("gamma additivity over sector partitions") {
    SmoothWeight w = log_half();
    double disk = w.gamma_mass(Disk{25.0});
    // Partition {1 < |z| <= 25} into 4 annuli x 8 sectors (gamma vanishes
    // inside the unit disk).
    double sum = 0.0;
    double radii[5] = {1.0, 3.0, 7.5, 14.0, 25.0};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 8; ++k)
            sum += w.gamma_mass(AnnulusSector{radii[i], radii[i + 1], k / 8.0,
                                              (k + 1) / 8.0});
    CHECK(std::abs(disk - sum) <= 1e-9 * disk);
}

TEST_CASE("offset disk gamma agrees with an angular-integral oracle") {
    SmoothWeight w = log_half();
    // Brute-force: integrate the density sigma(r)/(2 pi r^2) over the disk
    // in polar coordinates around the origin.
    double cr = 12.0, rad = 3.0;
    double direct = integrate_gk(
        [&](double s) {
            double cosv = (cr * cr + s * s - rad * rad) / (2.0 * cr * s);
            double lam = std::acos(std::clamp(cosv, -1.0, 1.0));
            return w.sigma(s) / s * lam / pi;
        },
        cr - rad, cr + rad, 1e-9);
    CHECK(w.gamma_disk(cr, rad) == doctest::Approx(direct).epsilon(1e-8));
    // Origin fallback.
    CHECK(w.gamma_disk(0.0, 10.0) == doctest::Approx(99.0).epsilon(1e-12));
}

TEST_CASE("monotonicity of nu, log_mu, sigma") {
    for (const SmoothWeight& w : {log_half(), SmoothWeight(PowerFamily{0.3, 2.0})}) {
        double prev_nu = 0.0, prev_mu = 0.0;
        for (double R = 1.5; R < 500.0; R *= 1.7) {
            double nu = w.nu(R);
            double mu = w.log_mu(R);
            CHECK(nu >= prev_nu);
            CHECK(mu >= prev_mu);
            CHECK(w.sigma(R) > 0.0);
            prev_nu = nu;
            prev_mu = mu;
        }
    }
}

TEST_CASE("cubic Taylor bound for omega with the family constant") {
    SmoothWeight w = log_half();
    double delta = w.delta_regularity(0.0);
    CHECK(delta == doctest::Approx(2.0));
    for (double R : {10.0, 50.0, 300.0}) {
        auto [nu, sigma] = w.nu_sigma(R);
        double tmax = std::sqrt(sigma * std::log(sigma));
        for (int i = 1; i <= 12; ++i) {
            double t = tmax * i / 12.0;
            for (double sgn : {-1.0, 1.0}) {
                double lhs = std::abs(w.omega(R, nu + sgn * t) - w.omega(R, nu) +
                                      0.5 * t * t / sigma);
                double pworst = w.phi_prime(std::max(0.0, nu - t));
                double bound = (1.0 / 6.0) * delta * pworst * pworst * t * t * t;
                CHECK(lhs <= bound * (1.0 + 1e-9) + 1e-12);
            }
        }
    }
}

TEST_CASE("regularity report closed-form row") {
    SmoothWeight w = log_half();
    auto rows = w.regularity_report({3.0, 1000.0}, 0.1);
    CHECK(rows[0].phi_prime == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(rows[0].phi_second == doctest::Approx(-0.03125).epsilon(1e-14));
    CHECK(rows[0].delta_pointwise == doctest::Approx(2.0).epsilon(1e-13));
    for (const auto& r : rows) CHECK_FALSE(r.flagged);
    // Report-only contract for a near-degenerate power family.
    SmoothWeight p(PowerFamily{0.99, 1.0});
    auto prows = p.regularity_report({10.0}, 0.1);
    CHECK(prows.size() == 1);
}

TEST_CASE("tabulated family tracks its parametric source") {
    SmoothWeight tab = tabulated_log_half();
    SmoothWeight ref = log_half();
    for (double R : {5.0, 50.0, 500.0}) {
        CHECK(tab.nu(R) == doctest::Approx(ref.nu(R)).epsilon(1e-6));
        CHECK(tab.sigma(R) == doctest::Approx(ref.sigma(R)).epsilon(1e-4));
        CHECK(tab.log_mu(R) == doctest::Approx(ref.log_mu(R)).epsilon(1e-6));
    }
    CHECK_THROWS_AS((void)tab.phi(5e6), validation_error);
    CHECK_THROWS_AS((void)tab.psi(1e9), validation_error);
}

TEST_CASE("family validation") {
    CHECK_THROWS_AS(SmoothWeight(LogFamily{-1.0}), validation_error);
    CHECK_THROWS_AS(SmoothWeight(PowerFamily{1.5, 1.0}), validation_error);
    CHECK_THROWS_AS(SmoothWeight(TabulatedFamily{{0.0, 1.0}, {0.0, -1.0}}),
                    validation_error);
}

}  // TEST_SUITE
