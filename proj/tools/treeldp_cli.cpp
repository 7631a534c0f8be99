// treeldp: free energies and large-deviation rate functions of
// multiplicative Ising models on Markov-Cayley trees.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeldp/free_energy.hpp"
#include "treeldp/ising_blocks.hpp"
#include "treeldp/ldp_rate.hpp"
#include "treeldp/oracle.hpp"

using nlohmann::json;
using namespace treeldp;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGrowth = 3;
constexpr int kExitSizeLimit = 4;
constexpr int kExitOracleMismatch = 5;

struct RunConfig {
    std::vector<std::vector<int>> raw_matrix;
    std::optional<TransitionMatrix> matrix;
    std::optional<ModelSpec> model;
    Level exact_cap = kDefaultExactCap;
    double tol_gamma = 1e-12;
    double branch_threshold = kDefaultBranchThreshold;
};

void reject_unknown(const json& obj, std::initializer_list<const char*> keys,
                    const std::string& where) {
    for (auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* k : keys) known |= key == k;
        if (!known)
            throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(j, {"matrix", "p", "model", "numeric"}, "config");

    RunConfig cfg;
    if (!j.contains("matrix") || !j["matrix"].is_array())
        throw ConfigError("\"matrix\" must be an array of integer rows");
    for (const auto& row : j["matrix"]) {
        if (!row.is_array()) throw ConfigError("matrix rows must be arrays");
        cfg.raw_matrix.emplace_back();
        for (const auto& e : row) {
            if (!e.is_number_integer())
                throw ConfigError("matrix entries must be integers");
            cfg.raw_matrix.back().push_back(e.get<int>());
        }
    }
    if (!j.contains("p") || !j["p"].is_number())
        throw ConfigError("\"p\" must be a number");
    double p = j["p"].get<double>();
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("p must lie strictly inside (0,1)");

    if (!j.contains("model") || !j["model"].is_object())
        throw ConfigError("\"model\" must be an object");
    const json& jm = j["model"];
    reject_unknown(jm, {"kind", "alpha", "q"}, "model");
    if (!jm.contains("kind") || !jm["kind"].is_string())
        throw ConfigError("model.kind must be \"power\" or \"linear\"");
    std::string kind = jm["kind"].get<std::string>();
    if (kind == "power") {
        if (!jm.contains("alpha") || !jm["alpha"].is_number_integer())
            throw ConfigError("model.alpha must be an integer >= 2");
        cfg.model = ModelSpec::power(jm["alpha"].get<int>(), p);
    } else if (kind == "linear") {
        if (!jm.contains("q") || !jm["q"].is_number_integer())
            throw ConfigError("model.q must be an integer >= 2");
        cfg.model = ModelSpec::linear(jm["q"].get<int>(), p);
    } else {
        throw ConfigError("unknown model kind \"" + kind + "\"");
    }

    if (j.contains("numeric")) {
        const json& jn = j["numeric"];
        if (!jn.is_object()) throw ConfigError("\"numeric\" must be an object");
        reject_unknown(jn, {"exact_cap", "tol_gamma", "branch_threshold"},
                       "numeric");
        if (jn.contains("exact_cap"))
            cfg.exact_cap = jn["exact_cap"].get<Level>();
        if (jn.contains("tol_gamma"))
            cfg.tol_gamma = jn["tol_gamma"].get<double>();
        if (jn.contains("branch_threshold"))
            cfg.branch_threshold = jn["branch_threshold"].get<double>();
    }

    try {
        cfg.matrix = TransitionMatrix::validate(cfg.raw_matrix);
    } catch (const MatrixValidationError& e) {
        throw ConfigError(std::string("invalid matrix: ") + e.what());
    }
    return cfg;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::Subcritical: return "subcritical";
        case Branch::Critical: return "critical";
        case Branch::Supercritical: return "supercritical";
    }
    return "?";
}

// All CSV goes to --out or stdout; logs go to stderr.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

Level default_sweep_n(const ModelSpec& model) {
    return model.kind() == ModelKind::LinearQ ? 24 : 8;
}

int cmd_info(const RunConfig& cfg) {
    const TransitionMatrix& m = *cfg.matrix;
    GrowthEstimate g = growth_rate(m, cfg.tol_gamma);
    std::printf("d: %d\n", m.dim());
    std::printf("gamma: %.10f\n", g.gamma);
    std::printf("iterations: %d\n", g.iterations);
    std::printf("residual: %.3e\n", g.residual);
    std::printf("\nratio convergence ||M^(n+1)||/||M^n||:\n");
    for (Level n = 1; n <= 10; ++n) {
        BigInt a = matrix_norm_power(m, n, cfg.exact_cap);
        BigInt b = matrix_norm_power(m, n + 1, cfg.exact_cap);
        std::printf("  n=%-2lld  %.12f\n", static_cast<long long>(n),
                    static_cast<double>(b) / static_cast<double>(a));
    }
    std::printf("\nlevel counts:\n");
    for (Level n = 0; n <= 12 && n <= cfg.exact_cap; ++n) {
        std::printf("  n=%-2lld  |T_n|=%-12s |Delta_n|=%s\n",
                    static_cast<long long>(n),
                    level_count(m, n, cfg.exact_cap).str().c_str(),
                    delta_count(m, n, cfg.exact_cap).str().c_str());
    }
    return 0;
}

int cmd_free_energy(const RunConfig& cfg, double beta_min, double beta_max,
                    int steps, Level n, const std::string& out_path) {
    const TransitionMatrix& m = *cfg.matrix;
    const ModelSpec& model = *cfg.model;
    if (n <= 0) n = default_sweep_n(model);
    double gamma = growth_rate(m, cfg.tol_gamma).gamma;

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# treeldp free-energy sweep\n";
    os << "# model=" << model.name() << " p=" << fmt(model.p())
       << " N=" << n << " gamma=" << fmt(gamma) << "\n";
    os << "# beta grid: [" << fmt(beta_min) << ", " << fmt(beta_max)
       << "] with " << steps << " steps\n";
    os << "beta,F_finite,F_closed,G_finite,G_closed,branch,abs_diff\n";
    for (int i = 0; i < steps; ++i) {
        double beta =
            steps == 1 ? beta_min
                       : beta_min + (beta_max - beta_min) * i / (steps - 1);
        FreeEnergyResult fin = finite_free_energy(model, m, n, beta);
        FreeEnergyResult cl = closed_form_free_energy(model, gamma, beta);
        os << fmt(beta) << ',' << fmt(fin.value) << ',' << fmt(cl.value)
           << ',' << fmt(fin.g_term) << ',' << fmt(cl.g_term) << ','
           << branch_name(cl.branch) << ','
           << fmt(std::abs(fin.value - cl.value)) << "\n";
    }
    return 0;
}

int cmd_rate(const RunConfig& cfg, std::vector<double> xs,
             const std::string& grid, const std::string& out_path) {
    const TransitionMatrix& m = *cfg.matrix;
    const ModelSpec& model = *cfg.model;
    double gamma = growth_rate(m, cfg.tol_gamma).gamma;

    if (!grid.empty()) {
        double lo, hi;
        int steps;
        if (std::sscanf(grid.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3 ||
            steps < 2)
            throw ConfigError("--x-grid expects min:max:steps");
        for (int i = 0; i < steps; ++i)
            xs.push_back(lo + (hi - lo) * i / (steps - 1));
    }
    if (xs.empty()) {
        double c = effective_domain_halfwidth(model, gamma);
        for (int i = 0; i < 81; ++i)
            xs.push_back(-0.99 * c + 1.98 * c * i / 80);
    }

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# treeldp rate-function sweep\n";
    os << "# model=" << model.name() << " p=" << fmt(model.p())
       << " gamma=" << fmt(gamma) << "\n";
    os << "x,I,eta,finite\n";
    for (double x : xs) {
        RatePoint r = rate_function(model, gamma, x);
        os << fmt(x) << ',' << fmt(r.value) << ',' << fmt(r.eta) << ','
           << (r.finite ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_oracle_check(const RunConfig& cfg, Level n,
                     const std::string& out_path) {
    const TransitionMatrix& m = *cfg.matrix;
    const ModelSpec& model = *cfg.model;
    growth_rate(m, cfg.tol_gamma);

    if (n <= 0) {
        // largest N whose subtree fits under the enumeration cap
        n = 0;
        for (Level cand = 1;; ++cand) {
            try {
                build_arena(m, model.target_level(cand));
            } catch (const SizeLimitExceeded&) {
                break;
            }
            n = cand;
        }
        if (n == 0)
            throw SizeLimitExceeded(
                "no N admits exact enumeration for this tree");
    }

    constexpr double kTol = 1e-10;
    const double betas[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# treeldp oracle check: exact enumeration vs factorized product\n";
    os << "# model=" << model.name() << " p=" << fmt(model.p()) << " N=" << n
       << " tol=" << fmt(kTol) << "\n";
    os << "p,beta,log_mgf_enum,log_mgf_factorized,rel_err\n";
    double worst = 0.0;
    for (double beta : betas) {
        double enumerated = log_exact_mgf(model, m, n, beta, true);
        double factorized =
            log_truncated_mgf_factorized(model, m, n, beta, cfg.exact_cap);
        double rel = std::abs(enumerated - factorized) /
                     std::max({1.0, std::abs(enumerated), std::abs(factorized)});
        worst = std::max(worst, rel);
        os << fmt(model.p()) << ',' << fmt(beta) << ',' << fmt(enumerated)
           << ',' << fmt(factorized) << ',' << fmt(rel) << "\n";
    }
    os << "# max_rel_err=" << fmt(worst) << " => "
       << (worst <= kTol ? "PASS" : "FAIL") << "\n";
    if (worst > kTol) {
        std::cerr << "error[oracle]: max relative error " << fmt(worst)
                  << " exceeds tolerance " << fmt(kTol) << "\n";
        return kExitOracleMismatch;
    }
    return 0;
}

int cmd_mc(const RunConfig& cfg, Level n, std::uint64_t samples,
           std::uint64_t seed, const std::string& out_path) {
    const TransitionMatrix& m = *cfg.matrix;
    const ModelSpec& model = *cfg.model;
    growth_rate(m, cfg.tol_gamma);
    if (n <= 0) n = 1;

    McHistogram hist = mc_sample(model, m, n, samples, seed);
    double delta = static_cast<double>(hist.delta_size);
    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# treeldp Monte Carlo histogram of S/|Delta|\n";
    os << "# model=" << model.name() << " p=" << fmt(model.p()) << " N=" << n
       << " samples=" << samples << " seed=" << seed
       << " delta_size=" << hist.delta_size << "\n";
    os << "S,value,count,frequency,neg_log_phat_normalized\n";
    for (const auto& [s, count] : hist.counts) {
        double freq = static_cast<double>(count) / static_cast<double>(samples);
        os << s << ',' << fmt(static_cast<double>(s) / delta) << ',' << count
           << ',' << fmt(freq) << ',' << fmt(-std::log(freq) / delta) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Free energies and LDP rate functions of multiplicative Ising "
        "models on Markov-Cayley trees"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration")
        ->required();

    auto* info = app.add_subcommand(
        "info", "Tree diagnostics: gamma, ratio table, level counts");

    double beta_min = -3.0, beta_max = 3.0;
    int steps = 121;
    Level n_fe = 0;
    std::string fe_out;
    auto* fe = app.add_subcommand("free-energy",
                                  "Sweep finite and closed-form free energy");
    fe->add_option("--beta-min", beta_min, "grid start (default -3)");
    fe->add_option("--beta-max", beta_max, "grid end (default 3)");
    fe->add_option("--steps", steps, "grid size (default 121)");
    fe->add_option("--N", n_fe, "truncation index (default 24 linear, 8 power)");
    fe->add_option("--out", fe_out, "CSV output path (default stdout)");

    std::vector<double> xs;
    std::string x_grid, rate_out;
    auto* rate = app.add_subcommand("rate", "Legendre-transform rate function");
    rate->add_option("--x", xs, "query point(s)");
    rate->add_option("--x-grid", x_grid, "min:max:steps");
    rate->add_option("--out", rate_out, "CSV output path (default stdout)");

    Level n_oc = 0;
    std::string oc_out;
    auto* oc = app.add_subcommand(
        "oracle-check", "Exact enumeration vs factorized truncated MGF");
    oc->add_option("--N", n_oc, "truncation index (default: largest exact)");
    oc->add_option("--out", oc_out, "CSV output path (default stdout)");

    Level n_mc = 1;
    std::uint64_t samples = 1000000, seed = 12345;
    std::string mc_out;
    auto* mc = app.add_subcommand("mc", "Seeded Monte Carlo histogram");
    mc->add_option("--N", n_mc, "number of coupling terms (default 1)");
    mc->add_option("--samples", samples, "sample count (default 1e6)");
    mc->add_option("--seed", seed, "RNG seed (default 12345)");
    mc->add_option("--out", mc_out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = parse_config(config_path);
        if (info->parsed()) return cmd_info(cfg);
        if (fe->parsed())
            return cmd_free_energy(cfg, beta_min, beta_max, steps, n_fe,
                                   fe_out);
        if (rate->parsed()) return cmd_rate(cfg, xs, x_grid, rate_out);
        if (oc->parsed()) return cmd_oracle_check(cfg, n_oc, oc_out);
        if (mc->parsed()) return cmd_mc(cfg, n_mc, samples, seed, mc_out);
    } catch (const ConfigError& e) {
        std::cerr << "error[config]: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GrowthConditionViolated& e) {
        std::cerr << "error[growth]: " << e.what() << "\n";
        return kExitGrowth;
    } catch (const SizeLimitExceeded& e) {
        std::cerr << "error[size-limit]: " << e.what() << "\n";
        return kExitSizeLimit;
    } catch (const Error& e) {
        std::cerr << "error[runtime]: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
