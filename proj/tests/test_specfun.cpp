#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pgn/quadrature.hpp"
#include "pgn/rng.hpp"
#include "pgn/specfun.hpp"

namespace sf = pgn::specfun;

namespace {

const double kSqrtPi = std::sqrt(M_PI);

// closed forms for U(1/2, (k+1)/2, z), integer k = 1..11
double tricomi_closed(int k, double z) {
    const double k0 = sf::bessel_k(0, 0.5 * z);
    const double k1 = sf::bessel_k(1, 0.5 * z);
    const double ez = std::exp(0.5 * z);
    switch (k) {
        case 1: return ez * k0 / kSqrtPi;
        case 2: return 1.0 / std::sqrt(z);
        case 3: return ez * (k0 + k1) / (2.0 * kSqrtPi);
        case 4: return (2.0 * z + 1.0) / (2.0 * std::pow(z, 1.5));
        case 5: return ez * (z * k0 + (z + 1.0) * k1) / (2.0 * kSqrtPi * z);
        case 6: return (4.0 * z * (z + 1.0) + 3.0) / (4.0 * std::pow(z, 2.5));
        case 7:
            return ez * (z * (2.0 * z + 1.0) * k0 + (z * (2.0 * z + 3.0) + 4.0) * k1) /
                   (4.0 * kSqrtPi * z * z);
        case 8:
            return (2.0 * z * (4.0 * z * z + 6.0 * z + 9.0) + 15.0) /
                   (8.0 * std::pow(z, 3.5));
        case 9:
            return ez *
                   (z * (2.0 * z * (z + 1.0) + 3.0) * k0 +
                    2.0 * (z * (z * (z + 2.0) + 4.0) + 6.0) * k1) /
                   (4.0 * kSqrtPi * z * z * z);
        case 10:
            return (8.0 * z * (z * (2.0 * z * (z + 2.0) + 9.0) + 15.0) + 105.0) /
                   (16.0 * std::pow(z, 4.5));
        case 11:
            return ez *
                   (z * (z * (4.0 * z * z + 6.0 * z + 15.0) + 24.0) * k0 +
                    (z * (z * (2.0 * z * (2.0 * z + 5.0) + 27.0) + 60.0) + 96.0) * k1) /
                   (8.0 * kSqrtPi * z * z * z * z);
    }
    return 0.0;
}

}  // namespace

TEST_CASE("regularized incomplete gamma basics") {
    CHECK(sf::reg_inc_gamma_p(1.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(sf::reg_inc_gamma_p(0.5, 0.0) == 0.0);
    CHECK(sf::reg_inc_gamma_p(3.0, 1e8) == doctest::Approx(1.0));
}

TEST_CASE("incomplete gamma vs direct quadrature") {
    const double s = 2.5, x = 3.0;
    auto r = pgn::integrate(
        [s](double t) { return std::pow(t, s - 1.0) * std::exp(-t); }, 0.0, x);
    CHECK(sf::reg_inc_gamma_p(s, x) ==
          doctest::Approx(r.value / std::tgamma(s)).epsilon(1e-9));
}

TEST_CASE("incomplete gamma monotone and complementary") {
    double prev = -1.0;
    for (double x = 0.0; x <= 12.0; x += 0.25) {
        const double p = sf::reg_inc_gamma_p(1.7, x);
        CHECK(p >= prev);
        CHECK(p + sf::reg_inc_gamma_q(1.7, x) == doctest::Approx(1.0).epsilon(1e-12));
        prev = p;
    }
}

TEST_CASE("incomplete gamma rejects bad input") {
    CHECK_THROWS_AS(sf::reg_inc_gamma_p(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(sf::reg_inc_gamma_p(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(sf::reg_inc_gamma_p(1.0, std::nan("")), std::domain_error);
}

TEST_CASE("incomplete beta closed cases") {
    CHECK(sf::inc_beta(1.0, 2.0, 3.0, false) ==
          doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(sf::inc_beta(0.5, 1.0, 1.0, true) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sf::inc_beta(0.0, 2.0, 2.0, true) == 0.0);
    CHECK_THROWS_AS(sf::inc_beta(1.5, 1.0, 1.0, true), std::domain_error);
}

TEST_CASE("incomplete beta vs direct quadrature") {
    const double a = 0.6, b = 1.4, c = 0.5;
    // substitution u = t^{1/a} tames the u^{a-1} endpoint
    auto r = pgn::integrate(
        [&](double t) {
            const double u = std::pow(t, 1.0 / a);
            return std::pow(1.0 - u, b - 1.0) / a;
        },
        0.0, std::pow(c, a));
    const double oracle = r.value / std::exp(sf::log_beta(a, b));
    CHECK(sf::inc_beta(c, a, b, true) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("incomplete beta complement identity") {
    pgn::Rng rng(91);
    for (int i = 0; i < 30; ++i) {
        const double a = 0.3 + 3.0 * rng.uniform();
        const double b = 0.3 + 3.0 * rng.uniform();
        const double c = rng.uniform();
        const double lower = sf::inc_beta(c, a, b, false);
        const double upper = sf::inc_beta(1.0 - c, b, a, false);  // top piece mirrored
        CHECK(lower + upper ==
              doctest::Approx(std::exp(sf::log_beta(a, b))).epsilon(1e-11));
    }
}

TEST_CASE("beta cosine moments: symmetric zeros and the appendix anchor") {
    CHECK(std::abs(sf::beta_cos_moment(1, 1.0, 1.0)) <= 1e-12);
    CHECK(std::abs(sf::beta_cos_moment(2, 1.0, 1.0)) <= 1e-12);
    // J_1(0.6, 1.4) is the published I_1 row at mu = 0.30
    CHECK(sf::beta_cos_moment(1, 0.6, 1.4) == doctest::Approx(0.4600).epsilon(1.2e-3));
}

TEST_CASE("beta cosine moments bounded and reflection-antisymmetric") {
    pgn::Rng rng(17);
    for (int i = 0; i < 25; ++i) {
        const double a = 0.2 + 4.0 * rng.uniform();
        const double b = 0.2 + 4.0 * rng.uniform();
        const int m = 1 + static_cast<int>(rng.uniform() * 6.0);
        const double j_ab = sf::beta_cos_moment(m, a, b);
        const double j_ba = sf::beta_cos_moment(m, b, a);
        CHECK(std::abs(j_ab) <= 1.0 + 1e-12);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        CHECK(j_ab == doctest::Approx(sign * j_ba).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("tricomi matches every closed form") {
    for (int k = 1; k <= 11; ++k)
        for (double z : {0.5, 1.0, 2.0, 5.0}) {
            const double exact = tricomi_closed(k, z);
            const double got = sf::tricomi_u_half(k, z);
            CHECK(std::abs(got - exact) / exact <= 1e-7);
        }
}

TEST_CASE("tricomi point checks from the published table") {
    CHECK(sf::tricomi_u_half(2.0, 4.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sf::tricomi_u_half(4.0, 2.0) ==
          doctest::Approx(5.0 / (2.0 * std::pow(2.0, 1.5))).epsilon(1e-9));
    CHECK(sf::tricomi_u_half(6.0, 1.0) == doctest::Approx(2.75).epsilon(1e-9));
    CHECK_THROWS_AS(sf::tricomi_u_half(2.0, 0.0), std::domain_error);
}

TEST_CASE("bessel K against integral representations") {
    // K_0(x) = int_0^inf exp(-x cosh t) dt, K_1 adds a cosh t weight
    auto k_oracle = [](int order, double x) {
        return pgn::integrate(
                   [&](double t) {
                       const double w = order == 0 ? 1.0 : std::cosh(t);
                       return std::exp(-x * std::cosh(t)) * w;
                   },
                   0.0, 30.0)
            .value;
    };
    CHECK(sf::bessel_k(0, 1.0) == doctest::Approx(0.4210244382).epsilon(1e-9));
    CHECK(sf::bessel_k(1, 1.0) == doctest::Approx(0.6019072302).epsilon(1e-9));
    for (double x : {0.3, 1.0, 2.5}) {
        CHECK(sf::bessel_k(0, x) == doctest::Approx(k_oracle(0, x)).epsilon(1e-9));
        CHECK(sf::bessel_k(1, x) == doctest::Approx(k_oracle(1, x)).epsilon(1e-9));
    }
    CHECK(1e-4 * sf::bessel_k(1, 1e-4) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(sf::bessel_k(0, -1.0), std::domain_error);
}
