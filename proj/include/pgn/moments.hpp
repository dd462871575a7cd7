#pragma once

#include <cstdint>
#include <utility>

#include "pgn/distribution.hpp"
#include "pgn/quadrature.hpp"

namespace pgn::moments {

/// I_m(a, b) = E[cos^m(pi*U)] for U ~ Beta(a, b), via the cosine-power
/// expansion over J-moments. The degenerate limits a -> 0 (point mass at
/// u = 0) and b -> 0 (point mass at u = 1) return 1 and (-1)^m.
double cos_power_moment(int m, double a, double b, const QuadConfig& cfg = {});

/// E[X^m] = Gamma((k+m)/2)/Gamma(k/2) * 2^{m/2} * I_m(2mu, 2(1-mu)).
double raw_moment(const PgnParams& params, int m, const QuadConfig& cfg = {});

std::pair<double, double> mean_and_variance(const PgnParams& params,
                                            const QuadConfig& cfg = {});

struct McEstimate {
    double estimate;
    double std_error;
};

/// Monte Carlo check on E[X^m] from n exact draws.
McEstimate mc_moment_oracle(const PgnParams& params, int m, std::size_t n,
                            std::uint64_t seed);

}  // namespace pgn::moments
