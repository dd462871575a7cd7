#pragma once

#include <cstdint>
#include <random>

namespace pgn {

/// Seeded random source with hand-rolled variate transforms, so identical
/// seeds give identical streams regardless of standard-library vendor
/// (std::*_distribution output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// Exponential with the given mean.
    double exponential(double mean);

    /// Gamma(shape, scale) via Marsaglia-Tsang squeeze (with the power
    /// boost for shape < 1). Exact, rejection-based.
    double gamma(double shape, double scale);

    double chi_square(double df) { return gamma(0.5 * df, 2.0); }

    /// Beta(a, b) as the usual ratio of two gamma variates.
    double beta(double a, double b);

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Stateless 64-bit mix (splitmix64 finalizer); used to derive independent
/// worker seeds from (master seed, task index) pairs.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace pgn
