#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jgl/cli.hpp"

namespace {

struct FunctionFlags {
    std::string kind;
    std::optional<double> alpha;
    std::optional<double> center;
    std::optional<double> frequency;
    std::optional<double> phase;
};

void add_common_flags(CLI::App* cmd, jgl::cli::RunConfig& cfg, FunctionFlags& fn,
                      std::string& config_path, std::vector<double>& interval_flag) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--out", cfg.out, "output file (default: stdout)");
    cmd->add_option("--format", cfg.format, "csv | svg | json")
        ->check(CLI::IsMember({"csv", "svg", "json"}));
    cmd->add_option("--tol", cfg.tol, "numerical tolerance");
    cmd->add_option("--interval", interval_flag, "interval endpoints a b")->expected(2);
    cmd->add_option("--function", fn.kind, "exp | sgn | sine")
        ->check(CLI::IsMember({"exp", "sgn", "sine"}));
    cmd->add_option("--alpha", fn.alpha, "exponential rate");
    cmd->add_option("--center", fn.center, "signum jump location");
    cmd->add_option("--frequency", fn.frequency, "sine angular frequency");
    cmd->add_option("--phase", fn.phase, "sine phase");
    cmd->add_flag("--log-y", cfg.log_y, "logarithmic y axis for SVG output");
}

// Flags override whatever the config file set.
void finalize_config(jgl::cli::RunConfig& cfg, const FunctionFlags& fn,
                     const std::string& config_path,
                     const std::vector<double>& interval_flag) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw jgl::ConfigError("cannot open config file: " + config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw jgl::ConfigError(std::string("config parse error: ") + e.what());
        }
        jgl::cli::apply_config(j, cfg);
    }
    if (!interval_flag.empty()) {
        try {
            cfg.interval = jgl::Interval(interval_flag[0], interval_flag[1]);
        } catch (const jgl::Error& e) {
            throw jgl::ConfigError(std::string("invalid interval: ") + e.what());
        }
    }
    if (!fn.kind.empty()) {
        const jgl::Interval domain = cfg.interval.value_or(jgl::Interval(0.0, 1.0));
        if (fn.kind == "exp") {
            cfg.function = jgl::FunctionSpec::exponential(fn.alpha.value_or(1.0));
        } else if (fn.kind == "sgn") {
            cfg.function =
                jgl::FunctionSpec::signum(fn.center.value_or(domain.midpoint()));
        } else if (fn.kind == "sine") {
            cfg.function = jgl::FunctionSpec::sine(fn.frequency.value_or(1.0),
                                                   fn.phase.value_or(0.0));
        }
    }
    if (!(cfg.tol > 0.0)) throw jgl::ConfigError("tolerance must be positive");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jensen gap library: exact gaps, Gruss bounds, fragmentation scans, "
                 "and the affine bound family"};
    app.require_subcommand(1);

    jgl::cli::RunConfig cfg;
    try {
        cfg.tol = jgl::cli::default_tolerance();
    } catch (const jgl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return jgl::cli::kConfigError;
    }

    FunctionFlags fn;
    std::string config_path;
    std::vector<double> interval_flag;

    auto* scan = app.add_subcommand("scan", "fragment-count convergence scan");
    add_common_flags(scan, cfg, fn, config_path, interval_flag);
    scan->add_option("--scheme", cfg.scheme, "uniform | geometric | custom")
        ->check(CLI::IsMember({"uniform", "geometric", "custom"}));
    scan->add_option("--points", cfg.custom_points,
                     "breakpoints for the custom scheme");
    scan->add_option("--eps", cfg.eps, "geometric scheme decay parameter");
    scan->add_option("--n-max", cfg.n_max, "largest fragment count");

    auto* gruss = app.add_subcommand("gruss", "evaluate both sides of the Gruss bound");
    add_common_flags(gruss, cfg, fn, config_path, interval_flag);

    auto* lemma = app.add_subcommand("lemma", "randomized completion-of-squares suite");
    add_common_flags(lemma, cfg, fn, config_path, interval_flag);
    lemma->add_option("--seed", cfg.seed, "random seed");
    lemma->add_option("--trials", cfg.trials, "number of random triples");
    lemma->add_option("--max-dim", cfg.max_dim, "largest matrix dimension");

    auto* family = app.add_subcommand("family", "bound family checks and measure sweep");
    add_common_flags(family, cfg, fn, config_path, interval_flag);
    family->add_option("--mus", cfg.mus, "measures to sweep (descending)");

    std::vector<double> straddle_eps;
    auto* straddle = app.add_subcommand("straddle", "gap under the straddle partition");
    add_common_flags(straddle, cfg, fn, config_path, interval_flag);
    straddle->add_option("--eps", straddle_eps, "window widths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return jgl::cli::kConfigError;
    }

    try {
        finalize_config(cfg, fn, config_path, interval_flag);
        if (!straddle_eps.empty()) cfg.eps_list = straddle_eps;
    } catch (const jgl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return jgl::cli::kConfigError;
    }

    if (scan->parsed()) return jgl::cli::cmd_scan(cfg, std::cout, std::cerr);
    if (gruss->parsed()) return jgl::cli::cmd_gruss(cfg, std::cout, std::cerr);
    if (lemma->parsed()) return jgl::cli::cmd_lemma(cfg, std::cout, std::cerr);
    if (family->parsed()) return jgl::cli::cmd_family(cfg, std::cout, std::cerr);
    if (straddle->parsed()) return jgl::cli::cmd_straddle(cfg, std::cout, std::cerr);
    return jgl::cli::kConfigError;
}
