#include "pgn/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "pgn/specfun.hpp"

namespace pgn::moments {

namespace {

double binom(int n, int r) {
    double v = 1.0;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

}  // namespace

double cos_power_moment(int m, double a, double b, const QuadConfig& cfg) {
    if (m < 1) throw std::domain_error("cos_power_moment: m must be >= 1");
    if (a < 0.0 || b < 0.0)
        throw std::domain_error("cos_power_moment: a, b must be nonnegative");
    if (a == 0.0) return 1.0;                        // U degenerate at 0
    if (b == 0.0) return (m % 2 == 0) ? 1.0 : -1.0;  // U degenerate at 1

    // cos^m(x) = 2^-m * [ sum_{j < m/2} C(m,j) * 2*cos((m-2j)x) + (m even) C(m,m/2) ]
    double sum = 0.0;
    for (int j = 0; 2 * j < m; ++j)
        sum += binom(m, j) * 2.0 * specfun::beta_cos_moment(m - 2 * j, a, b, cfg);
    if (m % 2 == 0) sum += binom(m, m / 2);
    return std::ldexp(sum, -m);
}

double raw_moment(const PgnParams& params, int m, const QuadConfig& cfg) {
    if (m < 1) throw std::domain_error("raw_moment: m must be >= 1");
    const double radial = std::exp(std::lgamma(0.5 * (params.k + m)) -
                                   std::lgamma(0.5 * params.k) + 0.5 * m * std::log(2.0));
    return radial * cos_power_moment(m, params.beta_a(), params.beta_b(), cfg);
}

std::pair<double, double> mean_and_variance(const PgnParams& params, const QuadConfig& cfg) {
    const double mean = raw_moment(params, 1, cfg);
    const double var = raw_moment(params, 2, cfg) - mean * mean;
    return {mean, var};
}

McEstimate mc_moment_oracle(const PgnParams& params, int m, std::size_t n,
                            std::uint64_t seed) {
    if (m < 1) throw std::domain_error("mc_moment_oracle: m must be >= 1");
    if (n < 1000) throw std::domain_error("mc_moment_oracle: n must be >= 1000");
    Rng rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xm = std::pow(sample_one(params, rng), m);
        sum += xm;
        sum_sq += xm * xm;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

}  // namespace pgn::moments
