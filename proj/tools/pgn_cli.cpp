#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgn/distribution.hpp"
#include "pgn/harness.hpp"
#include "pgn/moments.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    pgn::QuadConfig quad;
    bool verbose = false;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

// --at accepts a comma-separated list or @path with one value per line
std::vector<double> parse_points(const std::string& spec) {
    std::vector<double> pts;
    auto push = [&](const std::string& tok) {
        if (tok.empty()) return;
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::runtime_error("cannot parse evaluation point \"" + tok + "\"");
        pts.push_back(v);
    };
    if (!spec.empty() && spec.front() == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw std::runtime_error("cannot open " + spec.substr(1));
        std::string line;
        while (std::getline(in, line)) push(line);
    } else {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) push(tok);
    }
    if (pts.empty()) throw std::runtime_error("--at produced no points");
    return pts;
}

void add_sample(CLI::App& app, GlobalOpts& g) {
    auto* cmd = app.add_subcommand("sample", "Draw from the distribution");
    auto mu = std::make_shared<double>(0.5);
    auto k = std::make_shared<double>(2.0);
    auto beta = std::make_shared<double>(0.0);
    auto sigma = std::make_shared<double>(1.0);
    auto n = std::make_shared<std::size_t>(100);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out_path = std::make_shared<std::string>();
    auto seed_opt = cmd->add_option("--seed", *seed, "Sampling seed");
    cmd->add_option("--mu", *mu, "Asymmetry parameter")->required();
    cmd->add_option("--k", *k, "Peak parameter")->required();
    cmd->add_option("--beta", *beta, "Location");
    cmd->add_option("--sigma", *sigma, "Scale");
    cmd->add_option("--n", *n, "Number of draws")->required();
    cmd->add_option("--out", *out_path, "Output path, one draw per line")->required();
    cmd->callback([=, &g] {
        const pgn::LocScaleParams params(*beta, *sigma, pgn::PgnParams(*mu, *k));
        const std::uint64_t s = seed_opt->count() ? *seed : g.seed;
        const auto draws = pgn::loc_scale_sample(params, *n, s);
        auto out = open_out(*out_path);
        out.precision(17);
        for (double d : draws) out << d << '\n';
        if (g.verbose) std::cerr << "wrote " << draws.size() << " draws\n";
    });
}

void add_eval(CLI::App& app, GlobalOpts& g) {
    auto* cmd = app.add_subcommand("eval", "Tabulate pdf, cdf, or quantile values");
    auto mu = std::make_shared<double>(0.5);
    auto k = std::make_shared<double>(2.0);
    auto what = std::make_shared<std::string>();
    auto at = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--mu", *mu, "Asymmetry parameter")->required();
    cmd->add_option("--k", *k, "Peak parameter")->required();
    cmd->add_option("--what", *what, "pdf, cdf, or quantile")
        ->required()
        ->check(CLI::IsMember({"pdf", "cdf", "quantile"}));
    cmd->add_option("--at", *at, "Comma-separated points, or @file")->required();
    cmd->add_option("--out", *out_path, "Output TSV path")->required();
    cmd->callback([=, &g] {
        const pgn::PgnParams params(*mu, *k);
        const auto pts = parse_points(*at);
        auto out = open_out(*out_path);
        out.precision(12);
        for (double x : pts) {
            out << x << '\t';
            try {
                double v = 0.0;
                if (*what == "pdf") v = pgn::pdf(params, x, g.quad);
                else if (*what == "cdf") v = pgn::cdf(params, x, g.quad);
                else v = pgn::quantile(params, x, g.quad);
                out << v << '\n';
            } catch (const std::exception& e) {
                out << "ERROR\n";
                if (g.verbose) std::cerr << "at " << x << ": " << e.what() << '\n';
            }
        }
    });
}

void add_fit(CLI::App& app, GlobalOpts& g) {
    auto* cmd = app.add_subcommand("fit", "Bayesian fit to a CSV column");
    auto data_path = std::make_shared<std::string>();
    auto column = std::make_shared<std::string>();
    auto config_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto chain_path = std::make_shared<std::string>();
    auto prior_k_mean = std::make_shared<double>(0.0);
    auto pkm_opt =
        cmd->add_option("--prior-k-mean", *prior_k_mean,
                        "Set the prior mean of k (rescales the gamma rate)");
    cmd->add_option("--data", *data_path, "Input CSV")->required();
    cmd->add_option("--column", *column, "Column name")->required();
    cmd->add_option("--config", *config_path, "Config JSON");
    cmd->add_option("--out", *out_path, "Fit report JSON path")->required();
    cmd->add_option("--chain", *chain_path, "Chain CSV path");
    cmd->callback([=, &g] {
        const auto data = pgn::harness::read_csv_column(*data_path, *column);
        json cfg_json = config_path->empty() ? json::object() : load_json(*config_path);
        auto settings = pgn::harness::parse_fit_config(cfg_json);
        if (pkm_opt->count()) {
            if (!(*prior_k_mean > 0.0))
                throw std::runtime_error("--prior-k-mean must be positive");
            settings.prior.k1 = settings.prior.k0 / *prior_k_mean;
        }
        if (!cfg_json.contains("mcmc") || !cfg_json["mcmc"].contains("seed"))
            settings.mcmc.seed = g.seed;
        const auto res = pgn::harness::run_fit(data, settings);
        auto out = open_out(*out_path);
        out << res.report.dump(2) << '\n';
        if (!chain_path->empty())
            pgn::harness::write_chain_csv(res.chain, *chain_path);
        if (g.verbose)
            std::cerr << "fit done: mu mean "
                      << res.report["params"]["mu"]["mean"].get<double>() << '\n';
    });
}

void add_simstudy(CLI::App& app, GlobalOpts& g) {
    auto* cmd = app.add_subcommand("simstudy", "Replication study over a (mu, k) grid");
    auto config_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--config", *config_path, "Study config JSON")->required();
    cmd->add_option("--out", *out_path, "Summary CSV path")->required();
    cmd->callback([=, &g] {
        const json j = load_json(*config_path);
        pgn::harness::SimStudyConfig cfg;
        cfg.master_seed = g.seed;
        if (j.contains("mu_grid")) cfg.mu_grid = j["mu_grid"].get<std::vector<double>>();
        if (j.contains("k_grid")) cfg.k_grid = j["k_grid"].get<std::vector<double>>();
        if (j.contains("n_obs")) cfg.n_obs = j["n_obs"].get<int>();
        if (j.contains("n_reps")) cfg.n_reps = j["n_reps"].get<int>();
        if (j.contains("seed")) cfg.master_seed = j["seed"].get<std::uint64_t>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        json sub = json::object();
        if (j.contains("prior")) sub["prior"] = j["prior"];
        if (j.contains("mcmc")) sub["mcmc"] = j["mcmc"];
        const auto fit = pgn::harness::parse_fit_config(sub);
        cfg.prior = fit.prior;
        cfg.mcmc = fit.mcmc;
        const auto cells = pgn::harness::run_simstudy(cfg);
        pgn::harness::write_simstudy_csv(cells, *out_path);
        if (g.verbose) std::cerr << cells.size() << " cells summarized\n";
    });
}

void add_bimodal_map(CLI::App& app, GlobalOpts& g) {
    auto* cmd = app.add_subcommand("bimodal-map", "Mode-count matrix over (mu, k)");
    auto mu_grid = std::make_shared<std::vector<double>>();
    auto k_grid = std::make_shared<std::vector<double>>();
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--mu-grid", *mu_grid, "Mu values (default 0.50..0.69)");
    cmd->add_option("--k-grid", *k_grid, "k values (default 1..13)");
    cmd->add_option("--out", *out_path, "Output CSV path")->required();
    cmd->callback([=, &g] {
        auto mus = *mu_grid;
        auto ks = *k_grid;
        if (mus.empty())
            for (int i = 0; i <= 19; ++i) mus.push_back(0.50 + 0.01 * i);
        if (ks.empty())
            for (int k = 1; k <= 13; ++k) ks.push_back(k);
        const auto map = pgn::harness::bimodal_map(mus, ks, g.quad);
        pgn::harness::write_bimodal_csv(map, *out_path);
    });
}

void add_imoment_table(CLI::App& app, GlobalOpts& g) {
    auto* cmd = app.add_subcommand("imoment-table",
                                   "Tabulate I_m(2mu, 2(1-mu)) over mu");
    auto mu_step = std::make_shared<double>(0.01);
    auto m_max = std::make_shared<int>(4);
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--mu-step", *mu_step, "Grid step in mu");
    cmd->add_option("--m-max", *m_max, "Highest moment order");
    cmd->add_option("--out", *out_path, "Output CSV path")->required();
    cmd->callback([=, &g] {
        const auto rows = pgn::harness::imoment_table(*mu_step, *m_max, g.quad);
        pgn::harness::write_imoment_csv(rows, *out_path);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polar-generalized normal distribution toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_option("--quad-abs-tol", g.quad.abs_tol, "Quadrature absolute tolerance");
    app.add_option("--quad-rel-tol", g.quad.rel_tol, "Quadrature relative tolerance");
    app.add_flag("--verbose", g.verbose, "Progress output on stderr");

    add_sample(app, g);
    add_eval(app, g);
    add_fit(app, g);
    add_simstudy(app, g);
    add_bimodal_map(app, g);
    add_imoment_table(app, g);

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
