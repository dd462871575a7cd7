#include "pgn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pgn/distribution.hpp"
#include "pgn/moments.hpp"

namespace pgn::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

void require_keys(const nlohmann::json& j, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) ok = true;
        if (!ok)
            throw std::runtime_error("config: unknown key \"" + it.key() + "\" in " +
                                     where);
    }
}

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> read_csv_column(const std::string& path,
                                    const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty file, expected a header row");
    const auto header = split_csv_row(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;
    if (col == header.size())
        throw std::runtime_error(path + ": no column named \"" + column + "\"");

    std::vector<double> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_row(line);
        if (col >= cells.size())
            throw std::runtime_error(path + ": row " + std::to_string(row) +
                                     " has too few cells");
        const std::string& cell = cells[col];
        if (cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" ||
            cell == "nan")
            throw std::runtime_error(path + ": missing value at row " +
                                     std::to_string(row));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cell.size() || !std::isfinite(v))
            throw std::runtime_error(path + ": cannot parse \"" + cell +
                                     "\" at row " + std::to_string(row));
        out.push_back(v);
    }
    return out;
}

FitSettings parse_fit_config(const nlohmann::json& j) {
    FitSettings s;
    require_keys(j, "top level", {"prior", "mcmc", "model"});
    if (j.contains("prior")) {
        const auto& p = j.at("prior");
        require_keys(p, "prior", {"k0", "k1", "beta0", "c", "tau0", "tau1"});
        if (p.contains("k0")) s.prior.k0 = p.at("k0").get<double>();
        if (p.contains("k1")) s.prior.k1 = p.at("k1").get<double>();
        if (p.contains("beta0")) {
            s.prior.beta0 = p.at("beta0").get<double>();
            s.beta0_from_data = false;
        }
        if (p.contains("c")) s.prior.c = p.at("c").get<double>();
        if (p.contains("tau0")) s.prior.tau0 = p.at("tau0").get<double>();
        if (p.contains("tau1")) s.prior.tau1 = p.at("tau1").get<double>();
    }
    if (j.contains("mcmc")) {
        const auto& m = j.at("mcmc");
        require_keys(m, "mcmc", {"n_iter", "burn_in", "thin", "seed", "init"});
        if (m.contains("n_iter")) s.mcmc.n_keep = m.at("n_iter").get<int>();
        if (m.contains("burn_in")) s.mcmc.burn_in = m.at("burn_in").get<int>();
        if (m.contains("thin")) s.mcmc.thin = m.at("thin").get<int>();
        if (m.contains("seed")) s.mcmc.seed = m.at("seed").get<std::uint64_t>();
        if (m.contains("init")) {
            const auto& i = m.at("init");
            require_keys(i, "mcmc.init", {"mu", "k", "beta", "sigma"});
            if (i.contains("mu")) s.mcmc.init.mu = i.at("mu").get<double>();
            if (i.contains("k")) s.mcmc.init.k = i.at("k").get<double>();
            if (i.contains("beta")) s.mcmc.init.beta = i.at("beta").get<double>();
            if (i.contains("sigma")) s.mcmc.init.sigma = i.at("sigma").get<double>();
        }
    }
    if (j.contains("model")) {
        const auto& m = j.at("model");
        require_keys(m, "model", {"loc_scale"});
        if (m.contains("loc_scale")) s.loc_scale = m.at("loc_scale").get<bool>();
    }
    return s;
}

FitResult run_fit(const std::vector<double>& data, FitSettings settings) {
    if (data.size() < 10)
        throw std::runtime_error("refusing to fit: need at least 10 observations, got " +
                                 std::to_string(data.size()));
    if (settings.loc_scale && settings.beta0_from_data)
        settings.prior.beta0 = mean_of(data);

    FitResult res;
    res.chain = bayes::run_gibbs(data, settings.prior, settings.mcmc,
                                 settings.loc_scale);

    auto summarize = [](const std::vector<double>& draws) {
        auto [lo, hi] = bayes::hpd_interval(draws, 0.95);
        return nlohmann::json{{"mean", mean_of(draws)}, {"hpd", {lo, hi}}};
    };

    nlohmann::json params;
    params["mu"] = summarize(res.chain.mu);
    params["k"] = summarize(res.chain.k);
    nlohmann::json ess{{"mu", res.chain.ess_mu}, {"k", res.chain.ess_k}};
    nlohmann::json accept{{"u", res.chain.accept_u},
                          {"k", res.chain.accept_k},
                          {"mu", res.chain.accept_mu}};
    if (settings.loc_scale) {
        params["beta"] = summarize(res.chain.beta);
        params["sigma"] = summarize(res.chain.sigma);
        ess["beta"] = res.chain.ess_beta;
        ess["sigma"] = res.chain.ess_sigma;
        accept["beta"] = res.chain.accept_beta;
        accept["sigma"] = res.chain.accept_sigma;
    }

    nlohmann::json echo;
    echo["prior"] = {{"k0", settings.prior.k0},   {"k1", settings.prior.k1},
                     {"beta0", settings.prior.beta0}, {"c", settings.prior.c},
                     {"tau0", settings.prior.tau0},   {"tau1", settings.prior.tau1}};
    echo["prior"]["beta0_from_data"] = settings.loc_scale && settings.beta0_from_data;
    echo["mcmc"] = {{"n_iter", settings.mcmc.n_keep},
                    {"burn_in", settings.mcmc.burn_in},
                    {"thin", settings.mcmc.thin},
                    {"seed", settings.mcmc.seed},
                    {"init", {{"mu", settings.mcmc.init.mu}, {"k", settings.mcmc.init.k}}}};
    if (settings.mcmc.init.beta) echo["mcmc"]["init"]["beta"] = *settings.mcmc.init.beta;
    if (settings.mcmc.init.sigma)
        echo["mcmc"]["init"]["sigma"] = *settings.mcmc.init.sigma;
    echo["model"] = {{"loc_scale", settings.loc_scale}};
    echo["n_obs"] = data.size();

    res.report = {{"params", params},
                  {"diagnostics", {{"ess", ess}, {"accept", accept}}},
                  {"config_echo", echo}};
    return res;
}

void write_chain_csv(const bayes::PosteriorChain& chain, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "iter,mu,k,beta,sigma,accept_u_rate,accept_k_rate,accept_mu_rate,"
           "accept_beta_rate,accept_sigma_rate\n";
    for (std::size_t i = 0; i < chain.mu.size(); ++i) {
        const double beta = chain.loc_scale ? chain.beta[i] : 0.0;
        const double sigma = chain.loc_scale ? chain.sigma[i] : 1.0;
        out << i + 1 << ',' << fmt(chain.mu[i]) << ',' << fmt(chain.k[i]) << ','
            << fmt(beta) << ',' << fmt(sigma) << ',' << fmt(chain.accept_u) << ','
            << fmt(chain.accept_k) << ',' << fmt(chain.accept_mu) << ','
            << fmt(chain.accept_beta) << ',' << fmt(chain.accept_sigma) << '\n';
    }
}

std::vector<SimStudyCell> run_simstudy(const SimStudyConfig& cfg) {
    if (cfg.mu_grid.empty() || cfg.k_grid.empty())
        throw std::invalid_argument("simstudy: empty parameter grid");
    if (cfg.n_obs < 10 || cfg.n_reps < 1)
        throw std::invalid_argument("simstudy: need n_obs >= 10 and n_reps >= 1");

    struct Task {
        std::size_t cell, rep;
    };
    std::vector<std::pair<double, double>> grid;
    for (double k : cfg.k_grid)
        for (double mu : cfg.mu_grid) grid.emplace_back(mu, k);

    std::vector<Task> tasks;
    for (std::size_t c = 0; c < grid.size(); ++c)
        for (int r = 0; r < cfg.n_reps; ++r)
            tasks.push_back({c, static_cast<std::size_t>(r)});

    const double nan = std::nan("");
    std::vector<std::vector<double>> mu_hat(grid.size()), k_hat(grid.size());
    for (auto& v : mu_hat) v.assign(cfg.n_reps, nan);
    for (auto& v : k_hat) v.assign(cfg.n_reps, nan);

    auto worker_body = [&](std::size_t t) {
        const auto [cell, rep] = tasks[t];
        const auto [mu, k] = grid[cell];
        const std::uint64_t cell_seed = mix_seed(cfg.master_seed, cell);
        const std::uint64_t data_seed = mix_seed(cell_seed, 2 * rep);
        const std::uint64_t chain_seed = mix_seed(cell_seed, 2 * rep + 1);
        try {
            const auto data = sample(PgnParams(mu, k), cfg.n_obs, data_seed);
            bayes::McmcConfig mcmc = cfg.mcmc;
            mcmc.seed = chain_seed;
            const auto chain = bayes::run_gibbs(data, cfg.prior, mcmc, false);
            mu_hat[cell][rep] = mean_of(chain.mu);
            k_hat[cell][rep] = mean_of(chain.k);
        } catch (const std::exception&) {
            // replication recorded as failed, summarized below
        }
    };

    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    n_threads = std::min<unsigned>(n_threads, tasks.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t t = next.fetch_add(1); t < tasks.size();
                 t = next.fetch_add(1))
                worker_body(t);
        });
    for (auto& th : pool) th.join();

    std::vector<SimStudyCell> out(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        SimStudyCell& cell = out[c];
        cell.mu_true = grid[c].first;
        cell.k_true = grid[c].second;
        std::vector<double> mus, ks;
        for (int r = 0; r < cfg.n_reps; ++r) {
            if (std::isnan(mu_hat[c][r])) {
                ++cell.failures;
                continue;
            }
            mus.push_back(mu_hat[c][r]);
            ks.push_back(k_hat[c][r]);
        }
        if (mus.empty()) continue;
        auto summarize = [&](const std::vector<double>& est, double truth,
                             double& mean, double& bias, double& sd, double& rmse) {
            mean = mean_of(est);
            bias = mean - truth;
            double ss = 0.0, se = 0.0;
            for (double e : est) {
                ss += (e - mean) * (e - mean);
                se += (e - truth) * (e - truth);
            }
            sd = est.size() > 1 ? std::sqrt(ss / (est.size() - 1)) : 0.0;
            rmse = std::sqrt(se / est.size());
        };
        summarize(mus, cell.mu_true, cell.mean_mu, cell.bias_mu, cell.sd_mu,
                  cell.rmse_mu);
        summarize(ks, cell.k_true, cell.mean_k, cell.bias_k, cell.sd_k, cell.rmse_k);
    }
    return out;
}

void write_simstudy_csv(const std::vector<SimStudyCell>& cells,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "mu_true,k_true,mean_mu,bias_mu,sd_mu,rmse_mu,"
           "mean_k,bias_k,sd_k,rmse_k,failures\n";
    for (const auto& c : cells)
        out << fmt(c.mu_true, "%.2f") << ',' << fmt(c.k_true, "%g") << ','
            << fmt(c.mean_mu, "%.4f") << ',' << fmt(c.bias_mu, "%.4f") << ','
            << fmt(c.sd_mu, "%.4f") << ',' << fmt(c.rmse_mu, "%.4f") << ','
            << fmt(c.mean_k, "%.4f") << ',' << fmt(c.bias_k, "%.4f") << ','
            << fmt(c.sd_k, "%.4f") << ',' << fmt(c.rmse_k, "%.4f") << ','
            << c.failures << '\n';
}

BimodalMap bimodal_map(const std::vector<double>& mu_grid,
                       const std::vector<double>& k_grid, const QuadConfig& quad) {
    for (double mu : mu_grid)
        if (!(mu > 0.0 && mu < 1.0))
            throw std::domain_error("bimodal_map: mu grid must lie in (0, 1)");
    for (double k : k_grid)
        if (!(k >= 1.0)) throw std::domain_error("bimodal_map: k grid must be >= 1");

    BimodalMap map;
    map.mu_grid = mu_grid;
    map.k_grid = k_grid;
    for (double mu : mu_grid) {
        std::vector<std::string> row;
        for (double k : k_grid) {
            try {
                row.push_back(std::to_string(count_modes(PgnParams(mu, k), quad)));
            } catch (const std::exception&) {
                row.push_back("?");
            }
        }
        map.cells.push_back(std::move(row));
    }
    return map;
}

BimodalMap reference_bimodal_map() {
    BimodalMap map;
    for (int i = 0; i <= 19; ++i) map.mu_grid.push_back(0.50 + 0.01 * i);
    for (int k = 1; k <= 13; ++k) map.k_grid.push_back(k);
    // k at which each row first reads "2"; 0 means the row is all "1"
    auto first_two = [](double mu) -> int {
        if (mu < 0.565) return 3;   // 0.50 - 0.56
        if (mu < 0.605) return 4;   // 0.57 - 0.60
        if (mu < 0.625) return 5;   // 0.61 - 0.62
        if (mu < 0.635) return 6;   // 0.63
        if (mu < 0.645) return 7;   // 0.64
        if (mu < 0.655) return 8;   // 0.65
        if (mu < 0.665) return 9;   // 0.66
        if (mu < 0.675) return 11;  // 0.67
        if (mu < 0.685) return 13;  // 0.68
        return 0;                   // 0.69 and beyond
    };
    for (double mu : map.mu_grid) {
        const int boundary = first_two(mu);
        std::vector<std::string> row;
        for (int k = 1; k <= 13; ++k)
            row.push_back(boundary != 0 && k >= boundary ? "2" : "1");
        map.cells.push_back(std::move(row));
    }
    return map;
}

void write_bimodal_csv(const BimodalMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "mu,mirror_mu";
    for (double k : map.k_grid) out << ",k=" << fmt(k, "%g");
    out << '\n';
    for (std::size_t i = 0; i < map.mu_grid.size(); ++i) {
        out << fmt(map.mu_grid[i], "%.2f") << ','
            << fmt(1.0 - map.mu_grid[i], "%.2f");
        for (const auto& cell : map.cells[i]) out << ',' << cell;
        out << '\n';
    }
}

std::vector<ImomentRow> imoment_table(double mu_step, int m_max,
                                      const QuadConfig& quad) {
    if (m_max < 1) throw std::domain_error("imoment_table: m_max must be >= 1");
    if (!(mu_step > 0.0 && mu_step < 1.0))
        throw std::domain_error("imoment_table: step must lie in (0, 1)");
    const int n_steps = static_cast<int>(std::lround(1.0 / mu_step));
    if (std::abs(n_steps * mu_step - 1.0) > 1e-9)
        throw std::domain_error("imoment_table: step must divide the unit interval");

    std::vector<ImomentRow> rows;
    for (int i = 0; i <= n_steps; ++i) {
        ImomentRow row;
        row.mu = static_cast<double>(i) / n_steps;
        for (int m = 1; m <= m_max; ++m)
            row.values.push_back(moments::cos_power_moment(
                m, 2.0 * row.mu, 2.0 * (1.0 - row.mu), quad));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_imoment_csv(const std::vector<ImomentRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "mu";
    if (!rows.empty())
        for (std::size_t m = 1; m <= rows.front().values.size(); ++m)
            out << ",I" << m;
    out << '\n';
    for (const auto& row : rows) {
        out << fmt(row.mu, "%.2f");
        for (double v : row.values) {
            if (std::abs(v) < 5e-5) v = 0.0;  // avoid "-0.0000"
            out << ',' << fmt(v, "%.4f");
        }
        out << '\n';
    }
}

}  // namespace pgn::harness
