#include "pgn/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pgn/specfun.hpp"

namespace pgn::bayes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793238462643383279502884;

double log_beta_density(double x, double a, double b) {
    if (!(x > 0.0 && x < 1.0)) return kNegInf;
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
           specfun::log_beta(a, b);
}

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    auto mid = v.begin() + n / 2;
    std::nth_element(v.begin(), mid, v.end());
    double hi = *mid;
    if (n % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), mid);
    return 0.5 * (lo + hi);
}

// Metropolis accept with guards against -inf/-inf comparisons.
bool accept_log_ratio(double log_target_prop, double log_target_cur,
                      double log_hastings, Rng& rng) {
    if (log_target_prop == kNegInf) return false;
    if (log_target_cur == kNegInf) return true;
    const double log_alpha = log_target_prop - log_target_cur + log_hastings;
    if (log_alpha >= 0.0) return true;
    return std::log(rng.uniform()) < log_alpha;
}

}  // namespace

void PriorSpec::validate() const {
    if (!(k0 > 0.0) || !(k1 > 0.0))
        throw std::domain_error("prior: k0 and k1 must be positive");
    if (!(c > 0.0)) throw std::domain_error("prior: c must be positive");
    if (!(tau0 > 0.0) || !(tau1 > 0.0))
        throw std::domain_error("prior: tau0 and tau1 must be positive");
    if (!std::isfinite(beta0)) throw std::domain_error("prior: beta0 must be finite");
}

double PriorSpec::log_prior_k(double k) const {
    if (!(k > 0.0)) return kNegInf;
    return k0 * std::log(k1) - std::lgamma(k0) + (k0 - 1.0) * std::log(k) - k1 * k;
}

double PriorSpec::log_prior_beta_sigma(double beta, double sigma) const {
    if (!(sigma > 0.0)) return kNegInf;
    const double var = c * sigma * sigma;
    const double lp_beta = -0.5 * std::log(2.0 * kPi * var) -
                           (beta - beta0) * (beta - beta0) / (2.0 * var);
    // tau = sigma^-2 ~ gamma(tau0, rate tau1); Jacobian |dtau/dsigma| = 2 sigma^-3.
    const double tau = 1.0 / (sigma * sigma);
    const double lp_tau = tau0 * std::log(tau1) - std::lgamma(tau0) +
                          (tau0 - 1.0) * std::log(tau) - tau1 * tau;
    const double lp_sigma = lp_tau + std::log(2.0) - 3.0 * std::log(sigma);
    return lp_beta + lp_sigma;
}

void McmcConfig::validate() const {
    if (n_keep < 1) throw std::domain_error("mcmc: n_iter must be >= 1");
    if (burn_in < 0) throw std::domain_error("mcmc: burn_in must be >= 0");
    if (thin < 1) throw std::domain_error("mcmc: thin must be >= 1");
    if (!(init.mu > 0.0 && init.mu < 1.0))
        throw std::domain_error("mcmc: init mu must lie in (0, 1)");
    if (!(init.k > 0.0)) throw std::domain_error("mcmc: init k must be positive");
    if (init.sigma && !(*init.sigma > 0.0))
        throw std::domain_error("mcmc: init sigma must be positive");
}

double log_cond_density_x_given_u(double x, double u, double k) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("log_cond_density_x_given_u: u must lie in (0, 1)");
    if (!(k > 0.0))
        throw std::domain_error("log_cond_density_x_given_u: k must be positive");
    if (x * (0.5 - u) <= 0.0) return kNegInf;  // sign mismatch, or x = 0
    const double c = std::abs(std::cos(kPi * u));
    if (c <= 0.0) return kNegInf;
    const double r = std::abs(x) / c;
    // chi_k density of the radius r, divided by the Jacobian |cos(pi u)|
    return (k - 1.0) * std::log(r) - 0.5 * r * r - (0.5 * k - 1.0) * std::log(2.0) -
           std::lgamma(0.5 * k) - std::log(c);
}

double log_beta_proposal(double value, double center) {
    return log_beta_density(value, 2.0 * center, 2.0 * (1.0 - center));
}

double log_u_target(double x, double u, double mu, double k) {
    if (!(u > 0.0 && u < 1.0)) return kNegInf;
    return log_cond_density_x_given_u(x, u, k) +
           log_beta_density(u, 2.0 * mu, 2.0 * (1.0 - mu));
}

double log_k_target(double k, const std::vector<double>& u,
                    const std::vector<double>& x_std, const PriorSpec& priors) {
    if (!(k > 0.0)) return kNegInf;
    if (u.size() != x_std.size())
        throw std::invalid_argument("log_k_target: u and data sizes differ");
    double lp = priors.log_prior_k(k);
    for (std::size_t i = 0; i < u.size(); ++i)
        lp += log_cond_density_x_given_u(x_std[i], u[i], k);
    return lp;
}

double log_mu_target(double mu, const std::vector<double>& u) {
    if (!(mu > 0.0 && mu < 1.0)) return kNegInf;
    double lp = 0.0;
    for (double ui : u) lp += log_beta_density(ui, 2.0 * mu, 2.0 * (1.0 - mu));
    return lp;
}

double log_accept_u(double x, double u_cur, double u_prop, double mu, double k) {
    return log_u_target(x, u_prop, mu, k) - log_u_target(x, u_cur, mu, k) +
           log_beta_proposal(u_cur, u_prop) - log_beta_proposal(u_prop, u_cur);
}

double log_accept_k(double k_cur, double k_prop, const std::vector<double>& u,
                    const std::vector<double>& x_std, const PriorSpec& priors) {
    // proposal k* ~ Exp(mean = k_cur): log q(k*|k) = -log k - k*/k
    const double log_q_fwd = -std::log(k_cur) - k_prop / k_cur;
    const double log_q_rev = -std::log(k_prop) - k_cur / k_prop;
    return log_k_target(k_prop, u, x_std, priors) -
           log_k_target(k_cur, u, x_std, priors) + log_q_rev - log_q_fwd;
}

double log_accept_mu(double mu_cur, double mu_prop, const std::vector<double>& u) {
    return log_mu_target(mu_prop, u) - log_mu_target(mu_cur, u) +
           log_beta_proposal(mu_cur, mu_prop) - log_beta_proposal(mu_prop, mu_cur);
}

bool mh_update_u(std::size_t i, GibbsState& state, const std::vector<double>& data,
                 Rng& rng) {
    const double x = (data[i] - state.beta) / state.sigma;
    const double u = state.u[i];
    const double u_prop = rng.beta(2.0 * u, 2.0 * (1.0 - u));
    if (!(u_prop > 0.0 && u_prop < 1.0)) return false;
    const double lt_prop = log_u_target(x, u_prop, state.mu, state.k);
    const double lt_cur = log_u_target(x, u, state.mu, state.k);
    const double lh = log_beta_proposal(u, u_prop) - log_beta_proposal(u_prop, u);
    if (accept_log_ratio(lt_prop, lt_cur, lh, rng)) {
        state.u[i] = u_prop;
        return true;
    }
    return false;
}

bool mh_update_k(GibbsState& state, const std::vector<double>& data,
                 const PriorSpec& priors, Rng& rng) {
    std::vector<double> x_std(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        x_std[i] = (data[i] - state.beta) / state.sigma;
    const double k_prop = rng.exponential(state.k);
    if (!(k_prop > 0.0)) return false;
    const double lt_prop = log_k_target(k_prop, state.u, x_std, priors);
    const double lt_cur = log_k_target(state.k, state.u, x_std, priors);
    const double lh = (-std::log(k_prop) - state.k / k_prop) -
                      (-std::log(state.k) - k_prop / state.k);
    if (accept_log_ratio(lt_prop, lt_cur, lh, rng)) {
        state.k = k_prop;
        return true;
    }
    return false;
}

bool mh_update_mu(GibbsState& state, Rng& rng) {
    const double mu = state.mu;
    const double mu_prop = rng.beta(2.0 * mu, 2.0 * (1.0 - mu));
    if (!(mu_prop > 0.0 && mu_prop < 1.0)) return false;
    const double lt_prop = log_mu_target(mu_prop, state.u);
    const double lt_cur = log_mu_target(mu, state.u);
    const double lh = log_beta_proposal(mu, mu_prop) - log_beta_proposal(mu_prop, mu);
    if (accept_log_ratio(lt_prop, lt_cur, lh, rng)) {
        state.mu = mu_prop;
        return true;
    }
    return false;
}

namespace {

double log_post_loc_scale(double beta, double log_sigma, const GibbsState& state,
                          const std::vector<double>& data, const PriorSpec& priors) {
    const double sigma = std::exp(log_sigma);
    double lp = priors.log_prior_beta_sigma(beta, sigma) + log_sigma;  // d sigma/d log sigma
    if (lp == kNegInf) return kNegInf;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double lc =
            log_cond_density_x_given_u((data[i] - beta) / sigma, state.u[i], state.k);
        if (lc == kNegInf) return kNegInf;
        lp += lc - log_sigma;  // scale Jacobian of y = beta + sigma x
    }
    return lp;
}

}  // namespace

std::pair<bool, bool> mh_update_loc_scale(GibbsState& state,
                                          const std::vector<double>& data,
                                          const PriorSpec& priors, Rng& rng,
                                          double step_beta, double step_log_sigma) {
    bool acc_beta = false, acc_sigma = false;
    double log_sigma = std::log(state.sigma);

    double lt_cur = log_post_loc_scale(state.beta, log_sigma, state, data, priors);
    const double beta_prop = state.beta + step_beta * rng.normal();
    const double lt_b = log_post_loc_scale(beta_prop, log_sigma, state, data, priors);
    if (accept_log_ratio(lt_b, lt_cur, 0.0, rng)) {
        state.beta = beta_prop;
        lt_cur = lt_b;
        acc_beta = true;
    }

    const double ls_prop = log_sigma + step_log_sigma * rng.normal();
    const double lt_s = log_post_loc_scale(state.beta, ls_prop, state, data, priors);
    if (accept_log_ratio(lt_s, lt_cur, 0.0, rng)) {
        state.sigma = std::exp(ls_prop);
        acc_sigma = true;
    }
    return {acc_beta, acc_sigma};
}

PosteriorChain run_gibbs(const std::vector<double>& data, const PriorSpec& priors,
                         const McmcConfig& cfg, bool loc_scale) {
    priors.validate();
    cfg.validate();
    const std::size_t n = data.size();
    if (n == 0) throw std::invalid_argument("run_gibbs: empty data");
    for (double x : data)
        if (!std::isfinite(x)) throw std::invalid_argument("run_gibbs: non-finite data");

    GibbsState state;
    state.mu = cfg.init.mu;
    state.k = cfg.init.k;
    if (loc_scale) {
        state.beta = cfg.init.beta ? *cfg.init.beta : median_of(data);
        if (cfg.init.sigma) {
            state.sigma = *cfg.init.sigma;
        } else {
            std::vector<double> dev(n);
            for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(data[i] - state.beta);
            state.sigma = 1.4826 * median_of(dev);
            if (!(state.sigma > 0.0)) state.sigma = 1.0;
        }
    } else {
        for (double x : data)
            if (x == 0.0)
                throw std::invalid_argument(
                    "run_gibbs: exact zeros carry no likelihood in the standard model");
    }

    state.u.resize(n);
    auto reset_latent = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = (data[i] - state.beta) / state.sigma;
            state.u[i] = x > 0.0 ? 0.25 : 0.75;
        }
    };
    reset_latent();
    // A residual can sit exactly at zero right after initialization from the
    // sample median; nudge the location off the data point in that case.
    if (loc_scale && !cfg.init.beta) {
        for (double x : data)
            if (x == state.beta) {
                state.beta += 1e-9 * std::max(1.0, std::abs(state.beta));
                reset_latent();
                break;
            }
    }

    Rng rng(cfg.seed);
    const long total = cfg.burn_in + static_cast<long>(cfg.n_keep) * cfg.thin;

    double step_beta = 0.2 * state.sigma;
    double step_ls = 0.2;
    long acc_u = 0, acc_k = 0, acc_mu = 0, acc_beta = 0, acc_sigma = 0;
    long adapt_acc_beta = 0, adapt_acc_sigma = 0;
    long kept_sweeps = 0;

    PosteriorChain out;
    out.loc_scale = loc_scale;
    out.mu.reserve(cfg.n_keep);
    out.k.reserve(cfg.n_keep);
    if (loc_scale) {
        out.beta.reserve(cfg.n_keep);
        out.sigma.reserve(cfg.n_keep);
    }

    for (long sweep = 0; sweep < total; ++sweep) {
        const bool post_burn = sweep >= cfg.burn_in;
        long sweep_acc_u = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mh_update_u(i, state, data, rng)) ++sweep_acc_u;
        const bool k_ok = mh_update_k(state, data, priors, rng);
        const bool mu_ok = mh_update_mu(state, rng);
        bool b_ok = false, s_ok = false;
        if (loc_scale) {
            auto [ab, as] = mh_update_loc_scale(state, data, priors, rng, step_beta,
                                                step_ls);
            b_ok = ab;
            s_ok = as;
        }

        if (post_burn) {
            ++kept_sweeps;
            acc_u += sweep_acc_u;
            acc_k += k_ok;
            acc_mu += mu_ok;
            acc_beta += b_ok;
            acc_sigma += s_ok;
            const long since = sweep - cfg.burn_in + 1;
            if (since % cfg.thin == 0) {
                out.mu.push_back(state.mu);
                out.k.push_back(state.k);
                if (loc_scale) {
                    out.beta.push_back(state.beta);
                    out.sigma.push_back(state.sigma);
                }
                if (cfg.keep_latent_u) out.latent_u.push_back(state.u);
            }
        } else if (loc_scale) {
            // scale the random-walk steps toward a mid-range acceptance rate,
            // frozen once burn-in ends
            adapt_acc_beta += b_ok;
            adapt_acc_sigma += s_ok;
            if ((sweep + 1) % 50 == 0) {
                step_beta *= std::exp(adapt_acc_beta / 50.0 - 0.35);
                step_ls *= std::exp(adapt_acc_sigma / 50.0 - 0.35);
                step_beta = std::clamp(step_beta, 1e-8 * state.sigma, 1e3 * state.sigma);
                step_ls = std::clamp(step_ls, 1e-6, 10.0);
                adapt_acc_beta = adapt_acc_sigma = 0;
            }
        }
    }

    const double denom = static_cast<double>(kept_sweeps);
    out.accept_u = acc_u / (denom * n);
    out.accept_k = acc_k / denom;
    out.accept_mu = acc_mu / denom;
    if (loc_scale) {
        out.accept_beta = acc_beta / denom;
        out.accept_sigma = acc_sigma / denom;
    }
    out.ess_mu = effective_sample_size(out.mu);
    out.ess_k = effective_sample_size(out.k);
    if (loc_scale) {
        out.ess_beta = effective_sample_size(out.beta);
        out.ess_sigma = effective_sample_size(out.sigma);
    }
    return out;
}

std::pair<double, double> hpd_interval(std::vector<double> samples, double prob) {
    if (!(prob > 0.0 && prob < 1.0))
        throw std::domain_error("hpd_interval: prob must lie in (0, 1)");
    const std::size_t n = samples.size();
    const auto need = static_cast<std::size_t>(std::ceil(prob * n));
    if (n < 100 || need < 2)
        throw std::domain_error("hpd_interval: too few samples");
    std::sort(samples.begin(), samples.end());
    std::size_t best = 0;
    double best_width = samples[need - 1] - samples[0];
    for (std::size_t i = 1; i + need <= n; ++i) {
        const double w = samples[i + need - 1] - samples[i];
        if (w < best_width) {  // strict: leftmost window wins ties
            best_width = w;
            best = i;
        }
    }
    return {samples[best], samples[best + need - 1]};
}

double effective_sample_size(const std::vector<double>& chain) {
    const std::size_t n = chain.size();
    if (n < 4) return static_cast<double>(n);
    const double mean = std::accumulate(chain.begin(), chain.end(), 0.0) / n;
    double c0 = 0.0;
    for (double x : chain) c0 += (x - mean) * (x - mean);
    c0 /= n;
    if (c0 <= 0.0) return static_cast<double>(n);  // constant chain

    // Geyer initial monotone-ish truncation: stop once a lag pair goes nonpositive.
    double tau = 1.0;
    const std::size_t max_lag = n / 2;
    for (std::size_t t = 1; t + 1 <= max_lag; t += 2) {
        double rho_a = 0.0, rho_b = 0.0;
        for (std::size_t i = 0; i + t < n; ++i)
            rho_a += (chain[i] - mean) * (chain[i + t] - mean);
        for (std::size_t i = 0; i + t + 1 < n; ++i)
            rho_b += (chain[i] - mean) * (chain[i + t + 1] - mean);
        const double pair = (rho_a / (n * c0)) + (rho_b / (n * c0));
        if (pair <= 0.0) break;
        tau += 2.0 * pair;
    }
    return std::clamp(n / tau, 1.0, static_cast<double>(n));
}

}  // namespace pgn::bayes
