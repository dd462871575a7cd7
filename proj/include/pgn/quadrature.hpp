#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>

namespace pgn {

/// Tolerances and limits for the adaptive integrators.
struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdiv = 200;
    bool split_at_half = true;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

/// Thrown when the subdivision budget is exhausted before the error
/// contract err <= max(abs_tol, rel_tol*|value|) is met.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadConfig& cfg = {});

/// Same, but with interior break points seeded into the initial subdivision
/// (known kinks or near-singular spots).
QuadResult integrate(const std::function<double(double)>& f,
                     std::initializer_list<double> knots, const QuadConfig& cfg = {});

}  // namespace pgn
