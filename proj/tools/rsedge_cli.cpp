// rsedge: sampling laboratory for edge statistics of 1D random Schrodinger
// operators with vanishing potentials.
//
// Subcommands: spectrum | continuum | trace | theta | tw | tails
// Exit codes: 0 ok, 1 config error, 2 gate failure, 3 runtime error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsedge/continuum.hpp"
#include "rsedge/edge_stats.hpp"
#include "rsedge/eigen.hpp"
#include "rsedge/feynman_kac.hpp"
#include "rsedge/io.hpp"
#include "rsedge/noise.hpp"
#include "rsedge/potential.hpp"
#include "rsedge/rng.hpp"
#include "rsedge/tridiag.hpp"
#include "rsedge/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_dir = "out";
};

/// Config precedence: built-in defaults < JSON config file < CLI flags.
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    return json::parse(in);
}

fs::path make_artifact_dir(const std::string& base, const std::string& command,
                           std::uint64_t seed) {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y%m%dT%H%M%S", std::gmtime(&t));
    fs::path dir = fs::path(base) / command / (std::string(stamp) + "-" + std::to_string(seed));
    fs::create_directories(dir);
    return dir;
}

void write_summary(const fs::path& dir, const json& summary) {
    std::ofstream out(dir / "summary.json", std::ios::binary);
    out << summary.dump(2) << "\n";
}

json quantile_summary(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
        double idx = p * static_cast<double>(v.size() - 1);
        auto lo = static_cast<std::size_t>(idx);
        std::size_t hi = std::min(lo + 1, v.size() - 1);
        double f = idx - static_cast<double>(lo);
        return v[lo] * (1.0 - f) + v[hi] * f;
    };
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size() > 1 ? v.size() - 1 : 1);
    return json{{"count", v.size()},
                {"mean", mean},
                {"stderr", std::sqrt(var / static_cast<double>(v.size()))},
                {"q05", q(0.05)}, {"q25", q(0.25)}, {"q50", q(0.5)},
                {"q75", q(0.75)}, {"q95", q(0.95)}};
}

double jget(const json& cfg, const char* key, double fallback) {
    return cfg.contains(key) ? cfg.at(key).get<double>() : fallback;
}
std::size_t jget(const json& cfg, const char* key, std::size_t fallback) {
    return cfg.contains(key) ? cfg.at(key).get<std::size_t>() : fallback;
}
std::string jget(const json& cfg, const char* key, const std::string& fallback) {
    return cfg.contains(key) ? cfg.at(key).get<std::string>() : fallback;
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(const CommonArgs& common, const json& cfg) {
    std::size_t n = jget(cfg, "n", std::size_t{2000});
    double sigma = jget(cfg, "sigma", 1.0);
    double alpha = jget(cfg, "alpha", 1.5);
    std::string family = jget(cfg, "family", std::string("gaussian"));
    std::size_t replicas = jget(cfg, "replicas", std::size_t{1000});
    std::size_t k = jget(cfg, "k", std::size_t{1});

    rsedge::PotentialSpec spec;
    spec.family = rsedge::parse_family(family);
    spec.sigma = sigma;
    spec.alpha = alpha;

    std::vector<std::vector<double>> rows(replicas);
    rsedge::parallel_for(replicas, common.workers, [&](std::size_t r) {
        rsedge::RngStream stream = rsedge::new_stream(common.seed, r);
        auto draws = rsedge::sample_potential(spec, n, stream);
        rsedge::OperatorConfig config{n, spec, 2.0, 0};
        auto hn = rsedge::build_hn(config, draws);
        auto top = rsedge::eigen_extreme(hn, k, rsedge::SpectrumSide::largest, 0.0);
        auto batch = rsedge::rescale_edge(top, n, 2.0, 2.0, +1);
        rows[r] = batch.values;  // Lambda-side: n^2 (2 - lambda_i)
    });

    fs::path dir = make_artifact_dir(common.out_dir, "spectrum", common.seed);
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < k; ++i) cols.push_back("lambda_side_rank" + std::to_string(i));
    rsedge::write_matrix_csv(dir / "samples.csv", cols, rows);

    json summary;
    summary["command"] = "spectrum";
    summary["config"] = {{"n", n}, {"sigma", sigma}, {"alpha", alpha}, {"family", family},
                         {"replicas", replicas}, {"k", k}, {"seed", common.seed},
                         {"workers", common.workers}};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<double> col(replicas);
        for (std::size_t r = 0; r < replicas; ++r) col[r] = rows[r][i];
        summary["rank" + std::to_string(i)] = quantile_summary(col);
    }
    write_summary(dir, summary);
    std::cout << dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- continuum

int run_continuum(const CommonArgs& common, const json& cfg) {
    double sigma = jget(cfg, "sigma", 1.0);
    std::size_t k = jget(cfg, "k", std::size_t{1});
    std::string method = jget(cfg, "method", std::string("discretize"));
    std::size_t replicas = jget(cfg, "replicas", std::size_t{200});
    rsedge::ContinuumOptions opts;
    opts.m = jget(cfg, "m", opts.m);
    opts.riccati_grid = jget(cfg, "riccati_grid", opts.riccati_grid);
    opts.riccati_tol = jget(cfg, "riccati_tol", opts.riccati_tol);
    double agree_tol = jget(cfg, "cross_method_tol", 0.1);

    bool both = method == "both";
    bool use_disc = both || method == "discretize";
    bool use_ric = both || method == "riccati";
    if (!use_disc && !use_ric)
        throw CLI::ValidationError("--method", "must be discretize, riccati or both");

    std::vector<std::vector<double>> rows(replicas);
    rsedge::parallel_for(replicas, common.workers, [&](std::size_t r) {
        rsedge::RngStream stream = rsedge::new_stream(common.seed, r);
        rsedge::NoisePath noise =
            rsedge::brownian_path(1.0, 1.0 / static_cast<double>(opts.m), stream);
        std::vector<double>& row = rows[r];
        if (use_disc) {
            auto l = rsedge::g_sigma_eigen_from_path(sigma, k, rsedge::ContinuumMethod::discretize,
                                                     noise, opts);
            row.insert(row.end(), l.begin(), l.end());
        }
        if (use_ric) {
            auto l = rsedge::g_sigma_eigen_from_path(sigma, k, rsedge::ContinuumMethod::riccati,
                                                     noise, opts);
            row.insert(row.end(), l.begin(), l.end());
        }
    });

    fs::path dir = make_artifact_dir(common.out_dir, "continuum", common.seed);
    std::vector<std::string> cols;
    if (use_disc)
        for (std::size_t i = 0; i < k; ++i) cols.push_back("discretize_lambda" + std::to_string(i));
    if (use_ric)
        for (std::size_t i = 0; i < k; ++i) cols.push_back("riccati_lambda" + std::to_string(i));
    rsedge::write_matrix_csv(dir / "samples.csv", cols, rows);

    json summary;
    summary["command"] = "continuum";
    summary["config"] = {{"sigma", sigma}, {"k", k}, {"method", method},
                         {"replicas", replicas}, {"m", opts.m},
                         {"riccati_grid", opts.riccati_grid}, {"riccati_tol", opts.riccati_tol},
                         {"seed", common.seed}, {"workers", common.workers}};
    bool gate_ok = true;
    if (both) {
        std::size_t disagreements = 0;
        double max_gap = 0.0;
        for (const auto& row : rows) {
            double gap = std::abs(row[0] - row[k]);
            max_gap = std::max(max_gap, gap);
            if (gap > agree_tol) ++disagreements;
        }
        double frac = static_cast<double>(disagreements) / static_cast<double>(replicas);
        summary["cross_method"] = {{"tolerance", agree_tol},
                                   {"disagreements", disagreements},
                                   {"max_gap_lambda0", max_gap},
                                   {"disagreement_fraction", frac}};
        gate_ok = frac <= 0.05;
        summary["cross_method"]["pass"] = gate_ok;
    }
    write_summary(dir, summary);
    std::cout << dir.string() << "\n";
    return gate_ok ? 0 : 2;
}

// ---------------------------------------------------------------- trace

int run_trace(const CommonArgs& common, const json& cfg) {
    std::size_t n = jget(cfg, "n", std::size_t{2000});
    double sigma = jget(cfg, "sigma", 1.0);
    double T = jget(cfg, "T", 1.0);
    std::string family = jget(cfg, "family", std::string("gaussian"));
    std::size_t replicas = jget(cfg, "replicas", std::size_t{1000});
    std::size_t x_grid = jget(cfg, "x_grid", std::size_t{24});
    std::size_t realizations = jget(cfg, "realizations", std::size_t{1});
    rsedge::FkOptions fk;
    fk.bridge_cells = jget(cfg, "bridge_cells", fk.bridge_cells);

    rsedge::PotentialSpec spec;
    spec.family = rsedge::parse_family(family);
    spec.sigma = sigma;

    std::vector<rsedge::CouplingReport> reports(realizations);
    rsedge::parallel_for(realizations, common.workers, [&](std::size_t r) {
        rsedge::RngStream stream = rsedge::new_stream(common.seed, r);
        reports[r] = rsedge::pathwise_coupling_check(n, sigma, T, spec, replicas, x_grid,
                                                     stream, fk);
    });

    fs::path dir = make_artifact_dir(common.out_dir, "trace", common.seed);
    std::vector<std::vector<double>> rows(realizations);
    for (std::size_t r = 0; r < realizations; ++r)
        rows[r] = {reports[r].eigen_sum, reports[r].trace, reports[r].trace_stderr,
                   reports[r].discrepancy};
    rsedge::write_matrix_csv(dir / "samples.csv",
                             {"eigen_sum", "trace", "trace_stderr", "discrepancy"}, rows);

    std::vector<double> gaps(realizations);
    for (std::size_t r = 0; r < realizations; ++r) gaps[r] = reports[r].discrepancy;
    json summary;
    summary["command"] = "trace";
    summary["config"] = {{"n", n}, {"sigma", sigma}, {"T", T}, {"family", family},
                         {"replicas", replicas}, {"x_grid", x_grid},
                         {"realizations", realizations}, {"bridge_cells", fk.bridge_cells},
                         {"seed", common.seed}, {"workers", common.workers}};
    summary["discrepancy"] = quantile_summary(gaps);
    write_summary(dir, summary);
    std::cout << dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- theta

int run_theta(const CommonArgs& common, const json& cfg) {
    double T = jget(cfg, "T", 1.0);
    std::size_t replicas = jget(cfg, "replicas", std::size_t{100000});
    rsedge::FkOptions fk;
    fk.bridge_cells = jget(cfg, "bridge_cells", fk.bridge_cells);

    rsedge::RngStream stream = rsedge::new_stream(common.seed, 0);
    rsedge::ThetaCheck check = rsedge::theta_check(T, replicas, stream, fk);
    bool pass = std::abs(check.lhs - check.rhs) < 3.0 * check.stderr_value;

    fs::path dir = make_artifact_dir(common.out_dir, "theta", common.seed);
    json summary;
    summary["command"] = "theta";
    summary["config"] = {{"T", T}, {"replicas", replicas}, {"bridge_cells", fk.bridge_cells},
                         {"seed", common.seed}};
    summary["lhs_series"] = check.lhs;
    summary["rhs_monte_carlo"] = check.rhs;
    summary["stderr"] = check.stderr_value;
    summary["pass_3sigma"] = pass;
    write_summary(dir, summary);
    std::cout << dir.string() << "\n";
    return pass ? 0 : 2;
}

// ---------------------------------------------------------------- tw

int run_tw(const CommonArgs& common, const json& cfg) {
    std::size_t n = jget(cfg, "n", std::size_t{8000});
    std::size_t m = jget(cfg, "m", std::size_t{20});
    double beta = jget(cfg, "beta", 2.0);
    std::size_t replicas = jget(cfg, "replicas", std::size_t{3000});
    double L = jget(cfg, "L", 10.0);
    std::size_t sao_m = jget(cfg, "sao_m", std::size_t{400});
    double ks_gate = jget(cfg, "ks_gate", 0.07);

    rsedge::PotentialSpec spec;
    spec.family = rsedge::parse_family(jget(cfg, "family", std::string("gaussian")));

    std::vector<std::vector<double>> rows(replicas);
    rsedge::parallel_for(replicas, common.workers, [&](std::size_t r) {
        rsedge::RngStream stream = rsedge::new_stream(common.seed, r);
        auto draws = rsedge::sample_potential(spec, n, stream);
        rsedge::OperatorConfig config{n, spec, beta, m};
        auto mat = rsedge::build_hn_beta(config, draws);
        double top = rsedge::eigen_extreme(mat, 1, rsedge::SpectrumSide::largest, 0.0)[0];
        double md = static_cast<double>(m);
        double edge = md * md * (2.0 - top);  // m^2 (2 - lambda_1)

        rsedge::RngStream sao_stream = rsedge::new_stream(common.seed, (1ULL << 32) + r);
        double sao0 = rsedge::sao_eigen_sample(beta, 1, L, sao_m, sao_stream)[0];
        rows[r] = {edge, sao0};
    });

    std::vector<double> edge_batch(replicas), sao_batch(replicas);
    for (std::size_t r = 0; r < replicas; ++r) {
        edge_batch[r] = rows[r][0];
        sao_batch[r] = rows[r][1];
    }
    double ks = rsedge::ks_distance(edge_batch, sao_batch);
    bool pass = ks < ks_gate;

    fs::path dir = make_artifact_dir(common.out_dir, "tw", common.seed);
    rsedge::write_matrix_csv(dir / "samples.csv", {"hnbeta_edge", "sao_lambda0"}, rows);
    json summary;
    summary["command"] = "tw";
    summary["config"] = {{"n", n}, {"m", m}, {"beta", beta}, {"replicas", replicas},
                         {"L", L}, {"sao_m", sao_m}, {"ks_gate", ks_gate},
                         {"seed", common.seed}, {"workers", common.workers}};
    summary["ks_distance"] = ks;
    summary["pass"] = pass;
    summary["hnbeta_edge"] = quantile_summary(edge_batch);
    summary["sao_lambda0"] = quantile_summary(sao_batch);
    write_summary(dir, summary);
    std::cout << dir.string() << "\n";
    return pass ? 0 : 2;
}

// ---------------------------------------------------------------- tails

int run_tails(const CommonArgs& common, const json& cfg) {
    double sigma = jget(cfg, "sigma", 1.0);
    std::string side_name = jget(cfg, "side", std::string("right"));
    std::size_t replicas = jget(cfg, "replicas", std::size_t{100000});
    double grid_step = jget(cfg, "grid_step", 1.0 / 2048.0);
    std::vector<double> a_grid;
    if (cfg.contains("a_grid"))
        a_grid = cfg.at("a_grid").get<std::vector<double>>();
    else
        a_grid = (side_name == "left") ? std::vector<double>{3.0, 5.0, 7.0}
                                       : std::vector<double>{3.0, 4.5, 6.0};

    rsedge::TailSide side =
        side_name == "left" ? rsedge::TailSide::left : rsedge::TailSide::right;
    double exponent = side == rsedge::TailSide::right ? 1.5 : 2.0;

    std::vector<rsedge::TailEstimate> estimates(a_grid.size());
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        estimates[i] = rsedge::rso_tail_probability(sigma, a_grid[i], side, replicas, common.seed,
                                                    i * (replicas + 1), grid_step, common.workers);
    }

    fs::path dir = make_artifact_dir(common.out_dir, "tails", common.seed);
    std::vector<std::vector<double>> rows(a_grid.size());
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        rows[i] = {a_grid[i], estimates[i].estimate, estimates[i].stderr_value,
                   static_cast<double>(estimates[i].successes)};
    rsedge::write_matrix_csv(dir / "samples.csv", {"a", "p", "stderr", "successes"}, rows);

    json summary;
    summary["command"] = "tails";
    summary["config"] = {{"sigma", sigma}, {"side", side_name}, {"replicas", replicas},
                         {"grid_step", grid_step}, {"a_grid", a_grid},
                         {"seed", common.seed}, {"workers", common.workers}};
    json pts = json::array();
    bool all_nonzero = true;
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        pts.push_back({{"a", a_grid[i]},
                       {"p", estimates[i].estimate},
                       {"stderr", estimates[i].stderr_value},
                       {"successes", estimates[i].successes},
                       {"low_information", estimates[i].low_information},
                       {"ci_upper", estimates[i].ci_upper}});
        if (estimates[i].successes == 0) all_nonzero = false;
    }
    summary["points"] = pts;

    if (all_nonzero) {
        std::vector<rsedge::TailPoint> fit_pts;
        for (std::size_t i = 0; i < a_grid.size(); ++i)
            fit_pts.push_back({a_grid[i], estimates[i].estimate, replicas});
        rsedge::RngStream boot = rsedge::new_stream(common.seed, 0xB007);
        rsedge::TailFit fit = rsedge::tail_fit(fit_pts, exponent, boot);
        summary["fit"] = {{"exponent", fit.exponent}, {"coefficient", fit.coefficient},
                          {"intercept", fit.intercept}, {"ci_low", fit.ci_low},
                          {"ci_high", fit.ci_high}};
    } else {
        summary["fit"] = nullptr;
    }
    write_summary(dir, summary);
    std::cout << dir.string() << "\n";
    return all_nonzero ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge statistics laboratory for 1D random Schrodinger operators"};
    app.require_subcommand(1);

    CommonArgs common;
    json file_cfg;

    // Every subcommand shares --config/--seed/--workers/--out; per-command
    // keys mirror JSON config keys, with flags taking precedence.
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "JSON config file");
        sub->add_option("--seed", common.seed, "root seed");
        sub->add_option("--workers", common.workers, "worker threads");
        sub->add_option("--out", common.out_dir, "output directory");
    };

    std::vector<std::pair<std::string, int (*)(const CommonArgs&, const json&)>> commands = {
        {"spectrum", run_spectrum}, {"continuum", run_continuum}, {"trace", run_trace},
        {"theta", run_theta},       {"tw", run_tw},               {"tails", run_tails}};

    std::vector<std::pair<CLI::App*, int (*)(const CommonArgs&, const json&)>> subs;
    for (auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        sub->allow_extras();  // per-command keys arrive as --key value pairs
        subs.emplace_back(sub, fn);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& [sub, fn] : subs) {
            if (!sub->parsed()) continue;
            json cfg = load_config(common.config_path);
            // fold extras (--key value) into the config, overriding the file
            auto extras = sub->remaining();
            for (std::size_t i = 0; i + 1 < extras.size(); i += 2) {
                std::string key = extras[i];
                if (key.rfind("--", 0) != 0) throw CLI::ValidationError(key, "expected --key value");
                key = key.substr(2);
                const std::string& val = extras[i + 1];
                try {
                    cfg[key] = json::parse(val);
                } catch (const json::parse_error&) {
                    cfg[key] = val;  // bare strings (e.g. family names)
                }
            }
            if (extras.size() % 2 != 0)
                throw CLI::ValidationError(extras.back(), "missing value for option");
            if (cfg.contains("seed") && sub->count("--seed") == 0)
                common.seed = cfg.at("seed").get<std::uint64_t>();
            if (cfg.contains("workers") && sub->count("--workers") == 0)
                common.workers = cfg.at("workers").get<unsigned>();
            return fn(common, cfg);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
