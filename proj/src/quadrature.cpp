#include "pgn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace pgn {

void QuadConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("QuadConfig: tolerances must be positive");
    if (max_subdiv < 1)
        throw std::domain_error("QuadConfig: max_subdiv must be >= 1");
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kr_nodes[8] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01};

constexpr double kr_weights[8] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02};

constexpr double g_weights[4] = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01};

struct Segment {
    double a, b;
    double value;
    double error;
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double kronrod = kr_weights[0] * f0;
    double gauss = g_weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kr_nodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kr_weights[i] * fsum;
        if (i % 2 == 0) gauss += g_weights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;

    // QUADPACK-style sharpening: |K15-G7| grossly overestimates the K15
    // error once a segment has converged.
    const double diff = std::abs(kronrod - gauss);
    double err = diff;
    if (diff > 0.0 && 200.0 * diff < 1.0) err = diff * std::sqrt(200.0 * diff);
    return {a, b, kronrod, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f,
                     std::initializer_list<double> knots, const QuadConfig& cfg) {
    cfg.validate();
    std::vector<double> pts(knots);
    if (pts.size() < 2) throw std::domain_error("integrate: need at least two break points");
    std::sort(pts.begin(), pts.end());
    for (double p : pts)
        if (!std::isfinite(p)) throw std::domain_error("integrate: non-finite break point");

    std::vector<Segment> segs;
    std::size_t evals = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i] == pts[i + 1]) continue;
        segs.push_back(gauss_kronrod(f, pts[i], pts[i + 1]));
        evals += 15;
    }
    if (segs.empty()) return {0.0, 0.0, 0};

    auto totals = [&segs]() {
        double v = 0.0, e = 0.0;
        for (const auto& s : segs) {
            v += s.value;
            e += s.error;
        }
        return std::pair<double, double>(v, e);
    };

    while (true) {
        auto [value, error] = totals();
        if (!std::isfinite(value))
            throw QuadratureError("integrate: non-finite integrand value encountered");
        if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)))
            return {value, error, evals};
        if (static_cast<int>(segs.size()) >= cfg.max_subdiv)
            throw QuadratureError("integrate: subdivision limit reached, error estimate " +
                                  std::to_string(error));

        // Bisect the segment with the largest error estimate.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b)
            throw QuadratureError("integrate: interval collapsed below machine precision");
        segs[worst] = gauss_kronrod(f, s.a, mid);
        segs.push_back(gauss_kronrod(f, mid, s.b));
        evals += 30;
    }
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadConfig& cfg) {
    return integrate(f, {a, b}, cfg);
}

}  // namespace pgn
