#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgn/mcmc.hpp"
#include "pgn/quadrature.hpp"

namespace pgn::harness {

/// One numeric column from a headered CSV. Throws std::runtime_error naming
/// the offending row for NA or unparseable cells, and for a missing column.
std::vector<double> read_csv_column(const std::string& path,
                                    const std::string& column);

struct FitSettings {
    bayes::PriorSpec prior;
    bayes::McmcConfig mcmc;
    bool loc_scale = true;
    bool beta0_from_data = true;  // set beta0 to the sample mean unless given
};

/// Parse the config JSON ({prior:{...}, mcmc:{...}, model:{loc_scale}}).
/// Missing fields keep their defaults; unknown keys are rejected.
FitSettings parse_fit_config(const nlohmann::json& j);

struct FitResult {
    bayes::PosteriorChain chain;
    nlohmann::json report;
};

FitResult run_fit(const std::vector<double>& data, FitSettings settings);

void write_chain_csv(const bayes::PosteriorChain& chain, const std::string& path);

struct SimStudyConfig {
    std::vector<double> mu_grid;
    std::vector<double> k_grid;
    int n_obs = 50;
    int n_reps = 100;
    bayes::PriorSpec prior;
    bayes::McmcConfig mcmc;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0: hardware concurrency
};

struct SimStudyCell {
    double mu_true = 0.0, k_true = 0.0;
    double mean_mu = 0.0, bias_mu = 0.0, sd_mu = 0.0, rmse_mu = 0.0;
    double mean_k = 0.0, bias_k = 0.0, sd_k = 0.0, rmse_k = 0.0;
    int failures = 0;
};

/// Replication study over the (mu, k) grid: simulate standard-model samples,
/// fit each, and summarize posterior means. Replications are parallel with
/// seeds derived from (master_seed, cell index, replication index), so the
/// output is independent of scheduling.
std::vector<SimStudyCell> run_simstudy(const SimStudyConfig& cfg);

void write_simstudy_csv(const std::vector<SimStudyCell>& cells,
                        const std::string& path);

struct BimodalMap {
    std::vector<double> mu_grid;
    std::vector<double> k_grid;
    std::vector<std::vector<std::string>> cells;  // "1", "2", or "?"
};

BimodalMap bimodal_map(const std::vector<double>& mu_grid,
                       const std::vector<double>& k_grid,
                       const QuadConfig& quad = {});

/// The published mode-count table: rows mu = 0.50..0.69 (+ the 0.69-1.00
/// catch-all behaviour), columns k = 1..13.
BimodalMap reference_bimodal_map();

void write_bimodal_csv(const BimodalMap& map, const std::string& path);

struct ImomentRow {
    double mu;
    std::vector<double> values;  // I_m for m = 1..m_max
};

std::vector<ImomentRow> imoment_table(double mu_step, int m_max,
                                      const QuadConfig& quad = {});

/// 4-decimal fixed-point rendering, matching the published appendix table.
void write_imoment_csv(const std::vector<ImomentRow>& rows, const std::string& path);

}  // namespace pgn::harness
