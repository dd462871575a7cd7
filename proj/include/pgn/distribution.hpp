#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pgn/quadrature.hpp"
#include "pgn/rng.hpp"

namespace pgn {

/// Thrown when the density is evaluated at a point where it diverges
/// (x = 0 with peak parameter k <= 1).
class DensityPole : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Parameters of the standard law: X = sqrt(V) * cos(pi * U) with
/// V ~ chi^2_k and U ~ Beta(2*mu, 2*(1-mu)).
struct PgnParams {
    PgnParams(double mu, double k);

    double mu;  // asymmetry, strictly inside (0, 1)
    double k;   // peak parameter, > 0

    double beta_a() const { return 2.0 * mu; }
    double beta_b() const { return 2.0 * (1.0 - mu); }
};

/// Location-scale extension Y = beta + sigma * X.
struct LocScaleParams {
    LocScaleParams(double beta, double sigma, PgnParams standard);

    double beta;
    double sigma;
    PgnParams standard;
};

double pdf(const PgnParams& params, double x, const QuadConfig& cfg = {});

/// Closed form for the symmetric case mu = 1/2, built on Tricomi's U.
double pdf_symmetric_closed(double k, double x, const QuadConfig& cfg = {});

double cdf(const PgnParams& params, double x, const QuadConfig& cfg = {});

/// Inverse cdf by exponential bracketing + bisection; |cdf(x) - p| <= 1e-8.
double quantile(const PgnParams& params, double p, const QuadConfig& cfg = {});

double sample_one(const PgnParams& params, Rng& rng);
std::vector<double> sample(const PgnParams& params, std::size_t n, std::uint64_t seed);

/// phi(mu) = P(X > 0) / P(X < 0); a function of mu alone.
double phi_ratio(double mu);

/// Numeric mode census: 1 (unimodal) or 2 (bimodal). Throws if more than
/// two strict local maxima survive refinement.
int count_modes(const PgnParams& params, const QuadConfig& cfg = {});

double loc_scale_pdf(const LocScaleParams& ls, double y, const QuadConfig& cfg = {});
double loc_scale_cdf(const LocScaleParams& ls, double y, const QuadConfig& cfg = {});
std::vector<double> loc_scale_sample(const LocScaleParams& ls, std::size_t n,
                                     std::uint64_t seed);

}  // namespace pgn
