#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pgn/distribution.hpp"
#include "pgn/quadrature.hpp"
#include "pgn/rng.hpp"
#include "pgn/specfun.hpp"

using namespace pgn;

namespace {

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// k = 4 symmetric case collapses to (x^2 + 1) e^{-x^2/2} / (2 sqrt(2 pi))
double k4_mixture_pdf(double x) {
    return (x * x + 1.0) * std::exp(-0.5 * x * x) / (2.0 * std::sqrt(2.0 * M_PI));
}

double chi_pdf(double k, double x) {
    return std::exp((k - 1.0) * std::log(x) - 0.5 * x * x -
                    (0.5 * k - 1.0) * std::log(2.0) - std::lgamma(0.5 * k));
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(PgnParams(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(PgnParams(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(PgnParams(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(LocScaleParams(0.0, -1.0, PgnParams(0.5, 2.0)), std::domain_error);
}

TEST_CASE("normal special case") {
    const PgnParams p(0.5, 2.0);
    CHECK(pdf(p, 0.0) == doctest::Approx(normal_pdf(0.0)).epsilon(1e-8));
    for (double x : {-3.0, -1.2, 0.4, 1.0, 2.7}) {
        CHECK(pdf(p, x) == doctest::Approx(normal_pdf(x)).epsilon(1e-7));
        CHECK(cdf(p, x) == doctest::Approx(normal_cdf(x)).epsilon(1e-7));
    }
    CHECK(cdf(p, 1.959964) == doctest::Approx(0.975).epsilon(1e-6));
}

TEST_CASE("k=4 mixture identity") {
    const PgnParams p(0.5, 4.0);
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0})
        CHECK(pdf(p, x) == doctest::Approx(k4_mixture_pdf(x)).epsilon(1e-7));
}

TEST_CASE("density limit and pole at the origin") {
    // for k > 1 the two-piece density tends to f_U(1/2) Gamma((k-1)/2) /
    // (sqrt(2) pi Gamma(k/2)); approach from x -> 0 must agree
    const PgnParams p(0.3, 3.0);
    const double at0 = pdf(p, 0.0);
    CHECK(pdf(p, 1e-5) == doctest::Approx(at0).epsilon(1e-3));
    CHECK_THROWS_AS(pdf(PgnParams(0.5, 1.0), 0.0), DensityPole);
    CHECK_THROWS_AS(pdf(PgnParams(0.4, 0.7), 0.0), DensityPole);
    CHECK(pdf(PgnParams(0.4, 0.7), 0.3) > 0.0);  // pole is only at x = 0
}

TEST_CASE("reflection law") {
    pgn::Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const double mu = 0.05 + 0.9 * rng.uniform();
        const double k = 0.5 + 14.0 * rng.uniform();
        const double x = -4.0 + 8.0 * rng.uniform();
        if (std::abs(x) < 1e-3) continue;
        CHECK(pdf(PgnParams(mu, k), x) ==
              doctest::Approx(pdf(PgnParams(1.0 - mu, k), -x)).epsilon(1e-9));
    }
}

TEST_CASE("symmetric closed form agrees with the integral route") {
    for (int k = 1; k <= 11; ++k)
        for (double x : {-2.5, -1.0, 0.3, 0.8, 2.0}) {
            const double a = pdf(PgnParams(0.5, k), x);
            const double b = pdf_symmetric_closed(k, x);
            CHECK(a == doctest::Approx(b).epsilon(1e-7));
        }
    CHECK(pdf_symmetric_closed(2.0, 1.0) ==
          doctest::Approx(normal_pdf(1.0)).epsilon(1e-8));
    CHECK(pdf_symmetric_closed(4.0, 0.5) ==
          doctest::Approx(k4_mixture_pdf(0.5)).epsilon(1e-7));
    CHECK(pdf_symmetric_closed(3.0, 1.4) ==
          doctest::Approx(pdf_symmetric_closed(3.0, -1.4)).epsilon(1e-12));
}

TEST_CASE("normalization across the parameter grid") {
    for (double mu : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (double k : {1.0, 2.0, 5.0, 10.0, 15.0}) {
            const PgnParams p(mu, k);
            QuadConfig cfg;
            cfg.abs_tol = 1e-9;
            auto mass = integrate([&](double x) { return pdf(p, x, cfg); },
                                  {-8.0 - std::sqrt(k) * 3.0, -1.0, 0.0, 1.0,
                                   8.0 + std::sqrt(k) * 3.0},
                                  cfg);
            CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-6));
        }
}

TEST_CASE("cdf differentiates to the pdf") {
    pgn::Rng rng(23);
    for (int rep = 0; rep < 6; ++rep) {
        const PgnParams p(0.1 + 0.8 * rng.uniform(), 1.0 + 9.0 * rng.uniform());
        for (int i = 0; i < 20; ++i) {
            const double x = -3.5 + 7.0 * rng.uniform();
            if (std::abs(x) < 0.02) continue;
            const double h = 1e-4;
            const double deriv = (cdf(p, x + h) - cdf(p, x - h)) / (2.0 * h);
            const double f = pdf(p, x);
            CHECK(std::abs(deriv - f) <= std::max(1e-5, 1e-3 * f));
        }
    }
}

TEST_CASE("cdf anchors and monotonicity") {
    CHECK(cdf(PgnParams(0.5, 2.0), 0.0) == doctest::Approx(0.5).epsilon(1e-10));
    const PgnParams p(0.3, 5.0);
    CHECK(cdf(p, 0.0) ==
          doctest::Approx(1.0 - specfun::inc_beta(0.5, 0.6, 1.4, true)).epsilon(1e-10));
    double prev = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.5) {
        const double v = cdf(p, x);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    CHECK(cdf(p, -40.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(cdf(p, 40.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quantile round trips") {
    CHECK(std::abs(quantile(PgnParams(0.5, 2.0), 0.5)) <= 1e-7);
    CHECK(quantile(PgnParams(0.5, 2.0), 0.975) ==
          doctest::Approx(1.959964).epsilon(1e-5));
    CHECK(std::abs(quantile(PgnParams(0.5, 10.0), 0.5)) <= 1e-6);
    pgn::Rng rng(31);
    for (int i = 0; i < 8; ++i) {
        const PgnParams p(0.15 + 0.7 * rng.uniform(), 1.0 + 8.0 * rng.uniform());
        const double prob = 0.02 + 0.96 * rng.uniform();
        CHECK(cdf(p, quantile(p, prob)) == doctest::Approx(prob).epsilon(1e-8));
    }
    CHECK_THROWS_AS(quantile(PgnParams(0.5, 2.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(quantile(PgnParams(0.5, 2.0), 1.0), std::domain_error);
}

TEST_CASE("sampler moments and determinism") {
    const auto a = sample(PgnParams(0.3, 5.0), 2000, 99);
    const auto b = sample(PgnParams(0.3, 5.0), 2000, 99);
    CHECK(a == b);

    const auto big = sample(PgnParams(0.3, 5.0), 100000, 7);
    double mean = 0.0;
    std::size_t pos = 0;
    for (double x : big) {
        mean += x;
        pos += x > 0.0;
    }
    mean /= big.size();
    CHECK(mean == doctest::Approx(0.9787).epsilon(0.02));
    const double frac_pos = static_cast<double>(pos) / big.size();
    CHECK(frac_pos / (1.0 - frac_pos) ==
          doctest::Approx(phi_ratio(0.3)).epsilon(0.05));

    const auto sym = sample(PgnParams(0.5, 2.0), 100000, 3);
    double m = 0.0, s2 = 0.0;
    for (double x : sym) m += x;
    m /= sym.size();
    for (double x : sym) s2 += (x - m) * (x - m);
    s2 /= sym.size();
    CHECK(std::abs(m) <= 3.0 * std::sqrt(s2 / sym.size()));
}

TEST_CASE("sign-mass ratio phi") {
    CHECK(phi_ratio(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi_ratio(0.3) > 1.0);
    CHECK(phi_ratio(0.7) < 1.0);
    pgn::Rng rng(57);
    for (int i = 0; i < 20; ++i) {
        const double mu = 0.05 + 0.9 * rng.uniform();
        CHECK(phi_ratio(mu) * phi_ratio(1.0 - mu) == doctest::Approx(1.0).epsilon(1e-10));
        const PgnParams p(mu, 2.0 + 6.0 * rng.uniform());
        const double f0 = cdf(p, 0.0);
        CHECK((1.0 - f0) / f0 == doctest::Approx(phi_ratio(mu)).epsilon(1e-8));
    }
}

TEST_CASE("chi limit as mu approaches zero") {
    const PgnParams p(0.02, 3.0);
    double sup = 0.0;
    for (double x = 0.05; x <= 4.0; x += 0.05)
        sup = std::max(sup, std::abs(pdf(p, x) - chi_pdf(3.0, x)));
    CHECK(sup <= 0.02);
    CHECK(cdf(p, 0.0) <= 0.05);  // negative mass nearly gone
}

TEST_CASE("mode census on unambiguous cells") {
    CHECK(count_modes(PgnParams(0.50, 2.0)) == 1);
    CHECK(count_modes(PgnParams(0.50, 3.0)) == 2);
    CHECK(count_modes(PgnParams(0.50, 13.0)) == 2);
    CHECK(count_modes(PgnParams(0.55, 8.0)) == 2);
    CHECK(count_modes(PgnParams(0.90, 5.0)) == 1);
    CHECK(count_modes(PgnParams(0.75, 2.0)) == 1);
    // mirrored parameters agree by the reflection law
    for (double mu : {0.52, 0.60, 0.68})
        for (double k : {2.0, 5.0, 9.0})
            CHECK(count_modes(PgnParams(mu, k)) == count_modes(PgnParams(1.0 - mu, k)));
    CHECK_THROWS_AS(count_modes(PgnParams(0.5, 0.8)), std::domain_error);
}

TEST_CASE("location-scale wrappers") {
    const PgnParams std_p(0.5, 2.0);
    const LocScaleParams ident(0.0, 1.0, std_p);
    for (double x : {-1.5, 0.2, 2.0}) {
        CHECK(loc_scale_pdf(ident, x) == doctest::Approx(pdf(std_p, x)).epsilon(1e-12));
        CHECK(loc_scale_cdf(ident, x) == doctest::Approx(cdf(std_p, x)).epsilon(1e-12));
    }

    const LocScaleParams ls(2.0, 3.0, PgnParams(0.3, 5.0));
    CHECK(loc_scale_pdf(ls, 2.9) ==
          doctest::Approx(pdf(ls.standard, 0.3) / 3.0).epsilon(1e-12));
    CHECK(loc_scale_cdf(ls, 2.9) == doctest::Approx(cdf(ls.standard, 0.3)).epsilon(1e-12));

    // published real-data fit used as a stress configuration
    const LocScaleParams stress(5.752, 1.5655, PgnParams(0.638, 2.921));
    QuadConfig cfg;
    cfg.abs_tol = 1e-9;
    auto mass = integrate([&](double y) { return loc_scale_pdf(stress, y, cfg); },
                          {stress.beta - 12.0 * stress.sigma, stress.beta,
                           stress.beta + 12.0 * stress.sigma},
                          cfg);
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-6));

    const auto draws = loc_scale_sample(LocScaleParams(1.0, 2.0, std_p), 100000, 13);
    double mean = 0.0;
    for (double y : draws) mean += y;
    mean /= draws.size();
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
}
