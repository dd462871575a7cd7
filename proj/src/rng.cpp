#include "pgn/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pgn {

double Rng::uniform() {
    // 53 random bits; reject 0 so log() and powers stay finite.
    while (true) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    while (true) {
        const double v1 = 2.0 * uniform() - 1.0;
        const double v2 = 2.0 * uniform() - 1.0;
        const double s = v1 * v1 + v2 * v2;
        if (s >= 1.0 || s == 0.0) continue;
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_normal_ = v2 * factor;
        has_spare_ = true;
        return v1 * factor;
    }
}

double Rng::exponential(double mean) {
    if (!(mean > 0.0)) throw std::domain_error("Rng::exponential: mean must be positive");
    return -mean * std::log(uniform());
}

double Rng::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::domain_error("Rng::gamma: shape and scale must be positive");
    if (shape < 1.0) {
        const double boost = std::pow(uniform(), 1.0 / shape);
        return gamma(shape + 1.0, scale) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double Rng::beta(double a, double b) {
    const double g1 = gamma(a, 1.0);
    const double g2 = gamma(b, 1.0);
    return g1 / (g1 + g2);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace pgn
