#include "pgn/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pgn/specfun.hpp"

namespace pgn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double xtol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// integral over u in (0, hi) of w(u) * u^{p-1} du, removing the power-law
// endpoint at u = 0 by u = t^{1/p} when p < 1. `knots` are interior u
// locations worth seeding into the subdivision.
double weighted_half_integral(const std::function<double(double)>& w, double p, double hi,
                              const std::vector<double>& knots, const QuadConfig& cfg) {
    std::vector<double> pts;
    if (p >= 1.0) {
        auto f = [&](double u) { return w(u) * std::pow(u, p - 1.0); };
        pts.push_back(0.0);
        for (double u : knots)
            if (u > 0.0 && u < hi) pts.push_back(u);
        pts.push_back(hi);
        std::sort(pts.begin(), pts.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            total += integrate(f, pts[i], pts[i + 1], cfg).value;
        return total;
    }
    const double top = std::pow(hi, p);
    auto f = [&](double t) { return w(std::pow(t, 1.0 / p)) / p; };
    pts.push_back(0.0);
    for (double u : knots)
        if (u > 0.0 && u < hi) pts.push_back(std::pow(u, p));
    pts.push_back(top);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], cfg).value;
    return total;
}

}  // namespace

PgnParams::PgnParams(double mu_, double k_) : mu(mu_), k(k_) {
    if (!std::isfinite(mu) || !std::isfinite(k))
        throw std::domain_error("PgnParams: non-finite parameter");
    if (!(mu > 0.0) || !(mu < 1.0))
        throw std::domain_error("PgnParams: mu must lie strictly inside (0, 1)");
    if (!(k > 0.0)) throw std::domain_error("PgnParams: k must be positive");
}

LocScaleParams::LocScaleParams(double beta_, double sigma_, PgnParams standard_)
    : beta(beta_), sigma(sigma_), standard(standard_) {
    if (!std::isfinite(beta) || !std::isfinite(sigma))
        throw std::domain_error("LocScaleParams: non-finite parameter");
    if (!(sigma > 0.0)) throw std::domain_error("LocScaleParams: sigma must be positive");
}

double pdf(const PgnParams& params, double x, const QuadConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(x)) throw std::domain_error("pdf: x must be finite");
    const double a = params.beta_a();
    const double b = params.beta_b();
    const double k = params.k;

    if (x == 0.0) {
        // Limit of the u-mixture as x -> 0: mass concentrates at u = 1/2,
        // leaving f(0) = f_U(1/2) * E[1/R] / pi with R the chi_k radius.
        // E[1/R] = Gamma((k-1)/2) / (sqrt(2) Gamma(k/2)), finite only for k > 1.
        if (k <= 1.0)
            throw DensityPole("pdf: density diverges at x = 0 for k <= 1");
        const double log_fu_half = -specfun::log_beta(a, b);  // 0.5^{a+b-2} = 1
        return std::exp(log_fu_half + std::lgamma(0.5 * (k - 1.0)) - std::lgamma(0.5 * k)) /
               (std::sqrt(2.0) * kPi);
    }

    const double ax = std::abs(x);
    const double p = (x > 0.0) ? a : b;  // Beta weight exponent active at u -> 0
    const double q = (x > 0.0) ? b : a;

    // Truncate the essential singularity at u = 1/2: pick eps so the cut
    // sits below the integrand's interior peak (c* = |x|/sqrt(k)) and the
    // discarded tail is provably below abs_tol/10 on the pdf scale.
    const double logpre = (k - 1.0) * std::log(ax) - std::lgamma(0.5 * k) -
                          (0.5 * k - 1.0) * std::log(2.0) - specfun::log_beta(a, b);
    const double c_peak = std::min(1.0, ax / std::sqrt(k));
    const double peak_log = -k * std::log(c_peak) - x * x / (2.0 * c_peak * c_peak);
    const double shift = (logpre + peak_log > 300.0) ? peak_log : 0.0;

    double eps = std::min(0.25, std::asin(std::min(1.0, ax / std::sqrt(k + 2.0))) / kPi);
    const double log_w_bound = std::log(16.0);  // sup of the Beta kernel near u = 1/2
    for (int i = 0; i < 2000 && eps > 0.0; ++i) {
        const double ce = std::sin(kPi * eps);
        const double tail_log = std::log(eps) - k * std::log(ce) - x * x / (2.0 * ce * ce) +
                                log_w_bound + logpre;
        if (tail_log < std::log(cfg.abs_tol) - std::log(10.0)) break;
        eps *= 0.5;
    }
    const double hi = 0.5 - eps;
    if (!(hi > 0.0)) return 0.0;

    const double u_peak = std::acos(c_peak) / kPi;
    auto w = [&](double u) {
        const double c = std::cos(kPi * u);
        const double e = -k * std::log(c) - x * x / (2.0 * c * c) - shift;
        return std::exp(e) * std::pow(1.0 - u, q - 1.0);
    };
    const double integral = weighted_half_integral(w, p, hi, {0.25, u_peak}, cfg);
    return std::exp(logpre + shift) * integral;
}

double pdf_symmetric_closed(double k, double x, const QuadConfig& cfg) {
    if (!(k > 0.0)) throw std::domain_error("pdf_symmetric_closed: k must be positive");
    if (!std::isfinite(x)) throw std::domain_error("pdf_symmetric_closed: x must be finite");
    if (x == 0.0) {
        if (k <= 1.0)
            throw DensityPole("pdf_symmetric_closed: density diverges at x = 0 for k <= 1");
        return std::exp(std::lgamma(0.5 * (k - 1.0)) - std::lgamma(0.5 * k)) /
               (std::sqrt(2.0) * kPi);
    }
    const double x2 = x * x;
    const double logpre = 0.5 * (k - 1.0) * std::log(x2) - 0.5 * x2 -
                          0.5 * std::log(kPi) - std::lgamma(0.5 * k) -
                          0.5 * k * std::log(2.0);
    return std::exp(logpre) * specfun::tricomi_u_half(k, 0.5 * x2, cfg);
}

double cdf(const PgnParams& params, double x, const QuadConfig& cfg) {
    cfg.validate();
    const double a = params.beta_a();
    const double b = params.beta_b();
    const double k = params.k;

    // F(0) = P(U > 1/2)
    const double base = 1.0 - specfun::inc_beta(0.5, a, b, true);
    if (std::isnan(x)) throw std::domain_error("cdf: x must not be NaN");
    if (x == 0.0) return base;
    if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;

    const double p = (x > 0.0) ? a : b;
    const double q = (x > 0.0) ? b : a;
    auto w = [&](double u) {
        const double c = std::cos(kPi * u);
        return specfun::reg_inc_gamma_p(0.5 * k, x * x / (2.0 * c * c)) *
               std::pow(1.0 - u, q - 1.0);
    };
    const double integral =
        weighted_half_integral(w, p, 0.5, {0.25}, cfg) * std::exp(-specfun::log_beta(a, b));
    const double f = (x > 0.0) ? base + integral : base - integral;
    return std::clamp(f, 0.0, 1.0);
}

double quantile(const PgnParams& params, double p, const QuadConfig& cfg) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("quantile: p must lie strictly inside (0, 1)");
    QuadConfig tight = cfg;
    tight.abs_tol = std::min(cfg.abs_tol, 1e-11);
    tight.rel_tol = std::min(cfg.rel_tol, 1e-10);
    tight.max_subdiv = std::max(cfg.max_subdiv, 400);

    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 80 && cdf(params, lo, tight) > p; ++i) lo *= 2.0;
    for (int i = 0; i < 80 && cdf(params, hi, tight) < p; ++i) hi *= 2.0;

    double mid = 0.0;
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        const double f = cdf(params, mid, tight);
        if (std::abs(f - p) <= 1e-9) return mid;
        if (f < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return mid;
}

double sample_one(const PgnParams& params, Rng& rng) {
    const double v = rng.chi_square(params.k);
    const double u = rng.beta(params.beta_a(), params.beta_b());
    return std::sqrt(v) * std::cos(kPi * u);
}

std::vector<double> sample(const PgnParams& params, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample: n must be >= 1");
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) x = sample_one(params, rng);
    return out;
}

double phi_ratio(double mu) {
    if (!(mu > 0.0) || !(mu < 1.0))
        throw std::domain_error("phi_ratio: mu must lie strictly inside (0, 1)");
    const double below = specfun::inc_beta(0.5, 2.0 * mu, 2.0 * (1.0 - mu), true);
    return below / (1.0 - below);
}

int count_modes(const PgnParams& params, const QuadConfig& cfg) {
    if (params.k < 1.0) throw std::domain_error("count_modes: requires k >= 1");
    const double q_hi = quantile(params, 0.999, cfg);
    const double q_lo = quantile(params, 0.001, cfg);
    const double q = std::max({std::abs(q_lo), std::abs(q_hi), 0.5});

    // k = 1 has an (integrable) pole at x = 0; score it as +inf so the
    // census sees one central peak there.
    auto f = [&](double x) {
        try {
            return pdf(params, x, cfg);
        } catch (const DensityPole&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    constexpr int n_grid = 2048;
    std::vector<double> xs(n_grid), ys(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        xs[i] = -q + 2.0 * q * i / (n_grid - 1);
        ys[i] = f(xs[i]);
    }
    std::vector<double> modes;
    for (int i = 1; i + 1 < n_grid; ++i) {
        if (ys[i] > ys[i - 1] && ys[i] > ys[i + 1]) {
            const double m = golden_section_max(f, xs[i - 1], xs[i + 1], 1e-8);
            if (modes.empty() || m - modes.back() > 1e-5) modes.push_back(m);
        }
    }
    if (modes.empty()) modes.push_back(0.0);  // monotone-to-center spike (k = 1)
    if (modes.size() > 2)
        throw std::runtime_error("count_modes: more than two maxima detected "
                                 "(grid or tolerance failure)");
    return static_cast<int>(modes.size());
}

double loc_scale_pdf(const LocScaleParams& ls, double y, const QuadConfig& cfg) {
    return pdf(ls.standard, (y - ls.beta) / ls.sigma, cfg) / ls.sigma;
}

double loc_scale_cdf(const LocScaleParams& ls, double y, const QuadConfig& cfg) {
    return cdf(ls.standard, (y - ls.beta) / ls.sigma, cfg);
}

std::vector<double> loc_scale_sample(const LocScaleParams& ls, std::size_t n,
                                     std::uint64_t seed) {
    std::vector<double> out = sample(ls.standard, n, seed);
    for (auto& y : out) y = ls.beta + ls.sigma * y;
    return out;
}

}  // namespace pgn
