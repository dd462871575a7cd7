#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pgn/rng.hpp"

namespace pgn::bayes {

struct PriorSpec {
    // gamma(shape k0, rate k1) prior on the peak parameter
    double k0 = 2.0;
    double k1 = 1.0;
    // beta | sigma^2 ~ Normal(beta0, c * sigma^2)
    double beta0 = 0.0;
    double c = 100.0;
    // tau = 1/sigma^2 ~ gamma(shape tau0, rate tau1)
    double tau0 = 0.01;
    double tau1 = 0.01;

    void validate() const;
    double log_prior_k(double k) const;
    /// Joint log prior density of (beta, sigma) induced by the normal-on-beta
    /// and gamma-on-precision specification, expressed in sigma.
    double log_prior_beta_sigma(double beta, double sigma) const;
};

struct McmcInit {
    double mu = 0.5;
    double k = 2.0;
    std::optional<double> beta;   // default: sample median
    std::optional<double> sigma;  // default: 1.4826 * MAD
};

struct McmcConfig {
    int n_keep = 2000;  // posterior draws retained
    int burn_in = 1000; // discarded sweeps before retention starts
    int thin = 10;      // sweeps per retained draw
    std::uint64_t seed = 0;
    McmcInit init;
    bool keep_latent_u = false;

    void validate() const;
};

struct PosteriorChain {
    std::vector<double> mu, k, beta, sigma;
    std::vector<std::vector<double>> latent_u;  // kept only on request

    double accept_u = 0.0;
    double accept_k = 0.0;
    double accept_mu = 0.0;
    double accept_beta = 0.0;
    double accept_sigma = 0.0;

    double ess_mu = 0.0, ess_k = 0.0, ess_beta = 0.0, ess_sigma = 0.0;
    bool loc_scale = false;
};

/// Log conditional density of X given U = u under peak parameter k: the
/// chi_k radius law pushed through x = +-r*|cos(pi*u)|, gated by the
/// sign-compatibility indicator sign(x) = sign(1/2 - u). Returns -inf off
/// the support.
double log_cond_density_x_given_u(double x, double u, double k);

/// Log density of Beta(2*center, 2*(1-center)) at value, the proposal
/// family shared by the u- and mu-blocks.
double log_beta_proposal(double value, double center);

// Unnormalized log full conditionals (also the quadrature-oracle kernels).
double log_u_target(double x, double u, double mu, double k);
double log_k_target(double k, const std::vector<double>& u,
                    const std::vector<double>& x_std, const PriorSpec& priors);
double log_mu_target(double mu, const std::vector<double>& u);

// Log Metropolis-Hastings acceptance ratios, proposal correction included.
double log_accept_u(double x, double u_cur, double u_prop, double mu, double k);
double log_accept_k(double k_cur, double k_prop, const std::vector<double>& u,
                    const std::vector<double>& x_std, const PriorSpec& priors);
double log_accept_mu(double mu_cur, double mu_prop, const std::vector<double>& u);

struct GibbsState {
    double mu = 0.5;
    double k = 2.0;
    double beta = 0.0;
    double sigma = 1.0;
    std::vector<double> u;
};

bool mh_update_u(std::size_t i, GibbsState& state, const std::vector<double>& data,
                 Rng& rng);
bool mh_update_k(GibbsState& state, const std::vector<double>& data,
                 const PriorSpec& priors, Rng& rng);
bool mh_update_mu(GibbsState& state, Rng& rng);

/// Random-walk updates of beta and log(sigma) against the latent-conditional
/// likelihood times the location/precision priors. Returns (beta accepted,
/// sigma accepted).
std::pair<bool, bool> mh_update_loc_scale(GibbsState& state,
                                          const std::vector<double>& data,
                                          const PriorSpec& priors, Rng& rng,
                                          double step_beta, double step_log_sigma);

PosteriorChain run_gibbs(const std::vector<double>& data, const PriorSpec& priors,
                         const McmcConfig& cfg, bool loc_scale);

/// Shortest interval containing ceil(prob * n) of the sorted samples.
std::pair<double, double> hpd_interval(std::vector<double> samples, double prob);

/// Effective sample size via the truncated autocorrelation sum.
double effective_sample_size(const std::vector<double>& chain);

}  // namespace pgn::bayes
