#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jgl/bounds.hpp"
#include "jgl/csv.hpp"
#include "jgl/errors.hpp"
#include "jgl/functions.hpp"
#include "jgl/gap.hpp"
#include "jgl/interval.hpp"
#include "jgl/matrix.hpp"
#include "jgl/partition.hpp"
#include "jgl/suites.hpp"
#include "jgl/svg.hpp"

namespace jgl::cli {

enum ExitCode {
    kOk = 0,
    kConfigError = 2,
    kNumericalFailure = 3,
    kInequalityViolated = 4,
    kIoError = 5,
};

inline double default_tolerance() {
    if (const char* env = std::getenv("JGL_DEFAULT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) {
            throw ConfigError("JGL_DEFAULT_TOL must be a positive number");
        }
        return v;
    }
    return 1e-10;
}

struct RunConfig {
    std::optional<FunctionSpec> function;
    std::optional<Interval> interval;  // commands fall back to their own default
    std::string scheme = "uniform";
    double eps = 1e-4;                      // geometric decay parameter
    std::vector<double> eps_list;           // straddle widths
    std::vector<double> custom_points;      // breakpoints of a custom partition
    int n_max = 50;
    std::uint64_t seed = 7;
    int trials = 100;
    int max_dim = 6;
    double tol = 1e-10;
    std::string out;                        // empty: write to the output stream
    std::string format = "csv";             // csv | svg | json
    bool log_y = false;
    std::optional<Mat> mat_r;
    std::optional<Mat> mat_m;
    std::optional<Mat> mat_slack;
    std::vector<double> mus;
};

namespace detail {

inline void require_keys(const nlohmann::json& j,
                         std::initializer_list<const char*> allowed,
                         const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

inline double number_at(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError(where + " requires numeric '" + std::string(key) + "'");
    }
    return j.at(key).get<double>();
}

inline std::vector<double> number_list(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace jgl::cli::detail

inline Mat mat_from_json(const nlohmann::json& j, const std::string& where) {
    detail::require_keys(j, {"rows", "cols", "data"}, where);
    const int rows = static_cast<int>(detail::number_at(j, "rows", where));
    const int cols = static_cast<int>(detail::number_at(j, "cols", where));
    if (!j.contains("data")) throw ConfigError(where + " requires 'data'");
    const auto data = detail::number_list(j.at("data"), where + ".data");
    if (static_cast<int>(data.size()) != rows * cols) {
        throw ConfigError(where + ".data length must equal rows*cols");
    }
    return Mat(rows, cols, data);
}

inline nlohmann::json mat_to_json(const Mat& m) {
    return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

inline FunctionSpec function_from_json(const nlohmann::json& j) {
    detail::require_keys(j,
                         {"kind", "alpha", "center", "frequency", "phase", "amplitudes",
                          "coeffs", "knots", "values"},
                         "function");
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw ConfigError("function requires a string 'kind'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    VecValue amps{1.0};
    if (j.contains("amplitudes")) {
        amps = detail::number_list(j.at("amplitudes"), "function.amplitudes");
    }
    try {
        if (kind == "exponential") {
            return FunctionSpec::exponential(detail::number_at(j, "alpha", "function"), amps);
        }
        if (kind == "signum") {
            return FunctionSpec::signum(detail::number_at(j, "center", "function"), amps);
        }
        if (kind == "sine") {
            const double phase =
                j.contains("phase") ? detail::number_at(j, "phase", "function") : 0.0;
            return FunctionSpec::sine(detail::number_at(j, "frequency", "function"), phase,
                                      amps);
        }
        if (kind == "polynomial") {
            if (!j.contains("coeffs") || !j.at("coeffs").is_array()) {
                throw ConfigError("polynomial requires 'coeffs' (array of arrays)");
            }
            std::vector<std::vector<double>> coeffs;
            for (const auto& row : j.at("coeffs")) {
                coeffs.push_back(detail::number_list(row, "function.coeffs[]"));
            }
            return FunctionSpec::polynomial(std::move(coeffs));
        }
        if (kind == "piecewise_linear") {
            if (!j.contains("knots") || !j.contains("values")) {
                throw ConfigError("piecewise_linear requires 'knots' and 'values'");
            }
            const auto knots = detail::number_list(j.at("knots"), "function.knots");
            if (!j.at("values").is_array()) {
                throw ConfigError("function.values must be an array of arrays");
            }
            std::vector<std::vector<double>> values;
            for (const auto& row : j.at("values")) {
                values.push_back(detail::number_list(row, "function.values[]"));
            }
            return FunctionSpec::piecewise_linear(knots, std::move(values));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid function parameters: ") + e.what());
    }
    throw ConfigError("unknown function kind '" + kind + "'");
}

// Applies a config file onto defaults. Top-level keys are fixed; anything
// else is rejected outright.
inline void apply_config(const nlohmann::json& j, RunConfig& cfg) {
    detail::require_keys(j, {"function", "interval", "scheme", "matrices", "output"},
                         "config");
    if (j.contains("function")) cfg.function = function_from_json(j.at("function"));
    if (j.contains("interval")) {
        const auto& ji = j.at("interval");
        detail::require_keys(ji, {"a", "b"}, "interval");
        try {
            cfg.interval = Interval(detail::number_at(ji, "a", "interval"),
                                    detail::number_at(ji, "b", "interval"));
        } catch (const Error& e) {
            throw ConfigError(std::string("invalid interval: ") + e.what());
        }
    }
    if (j.contains("scheme")) {
        const auto& js = j.at("scheme");
        detail::require_keys(js, {"kind", "eps", "n_max", "eps_list", "points"}, "scheme");
        if (js.contains("kind")) {
            if (!js.at("kind").is_string()) throw ConfigError("scheme.kind must be a string");
            cfg.scheme = js.at("kind").get<std::string>();
        }
        if (js.contains("eps")) cfg.eps = detail::number_at(js, "eps", "scheme");
        if (js.contains("n_max")) {
            cfg.n_max = static_cast<int>(detail::number_at(js, "n_max", "scheme"));
        }
        if (js.contains("eps_list")) {
            cfg.eps_list = detail::number_list(js.at("eps_list"), "scheme.eps_list");
        }
        if (js.contains("points")) {
            cfg.custom_points = detail::number_list(js.at("points"), "scheme.points");
        }
    }
    if (j.contains("matrices")) {
        const auto& jm = j.at("matrices");
        detail::require_keys(jm, {"R", "M", "slack", "mus"}, "matrices");
        if (jm.contains("R")) cfg.mat_r = mat_from_json(jm.at("R"), "matrices.R");
        if (jm.contains("M")) cfg.mat_m = mat_from_json(jm.at("M"), "matrices.M");
        if (jm.contains("slack")) {
            cfg.mat_slack = mat_from_json(jm.at("slack"), "matrices.slack");
        }
        if (jm.contains("mus")) cfg.mus = detail::number_list(jm.at("mus"), "matrices.mus");
    }
    if (j.contains("output")) {
        const auto& jo = j.at("output");
        detail::require_keys(jo, {"path", "format", "tol", "log_y"}, "output");
        if (jo.contains("path")) {
            if (!jo.at("path").is_string()) throw ConfigError("output.path must be a string");
            cfg.out = jo.at("path").get<std::string>();
        }
        if (jo.contains("format")) {
            if (!jo.at("format").is_string()) {
                throw ConfigError("output.format must be a string");
            }
            cfg.format = jo.at("format").get<std::string>();
        }
        if (jo.contains("tol")) cfg.tol = detail::number_at(jo, "tol", "output");
        if (jo.contains("log_y")) {
            if (!jo.at("log_y").is_boolean()) throw ConfigError("output.log_y must be a bool");
            cfg.log_y = jo.at("log_y").get<bool>();
        }
    }
    if (!(cfg.tol > 0.0)) throw ConfigError("tolerance must be positive");
}

namespace detail {

inline double opt_cell(const std::optional<double>& v) {
    return v.has_value() ? *v : std::nan("");
}

inline nlohmann::json table_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r[i];
        rows.push_back(obj);
    }
    return rows;
}

// Emit a table in the configured format; series_columns names the columns
// plotted against the first column when SVG is requested.
inline int emit_table(const Table& t, const RunConfig& cfg,
                      const std::vector<std::string>& series_columns,
                      const std::string& title, std::ostream& out) {
    std::string payload;
    if (cfg.format == "csv") {
        payload = to_csv(t);
    } else if (cfg.format == "json") {
        payload = table_json(t).dump(2) + "\n";
    } else if (cfg.format == "svg") {
        std::vector<SvgSeries> series;
        for (const auto& name : series_columns) {
            std::size_t col = t.columns.size();
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                if (t.columns[i] == name) col = i;
            }
            if (col == t.columns.size()) continue;
            SvgSeries s;
            s.name = name;
            for (const auto& row : t.rows) s.points.emplace_back(row[0], row[col]);
            series.push_back(std::move(s));
        }
        SvgSpec spec;
        spec.title = title;
        spec.x_label = t.columns.empty() ? "" : t.columns[0];
        spec.log_y = cfg.log_y;
        payload = render_svg(series, spec);
    } else {
        throw ConfigError("unknown output format '" + cfg.format + "'");
    }
    if (cfg.out.empty()) {
        out << payload;
    } else {
        write_file_atomic(cfg.out, payload);
    }
    return kOk;
}

}  // namespace jgl::cli::detail

// Fragment-count sweep: CSV columns N, jensen_sum, exact, normalized, gap,
// e1, e2, ratio_next; SVG overlays normalized with the e1/e2 curves.
inline int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const FunctionSpec f =
            cfg.function.has_value() ? *cfg.function : FunctionSpec::exponential(1.0);
        const Interval domain = cfg.interval.value_or(Interval(0.0, 1.0));
        Table t;
        t.columns = {"N",   "jensen_sum", "exact", "normalized",
                     "gap", "e1",         "e2",    "ratio_next"};

        if (cfg.scheme == "custom") {
            // single-row report for caller-supplied breakpoints
            if (cfg.custom_points.size() < 2) {
                throw ConfigError("scan: custom scheme requires scheme.points");
            }
            const Partition p = [&] {
                try {
                    return Partition::custom(cfg.custom_points);
                } catch (const Error& e) {
                    throw ConfigError(std::string("scan: invalid custom partition: ") +
                                      e.what());
                }
            }();
            const GapReport r = fragmented_report(f, p);
            const double exact = -exact_phi_integral(f, p.hull());
            t.rows.push_back({static_cast<double>(p.fragment_count()),
                              r.normalized_jensen_sum, exact,
                              r.normalized_jensen_sum / exact, r.total_gap, r.e1,
                              detail::opt_cell(r.e2), std::nan("")});
            return detail::emit_table(t, cfg, {"normalized", "e1", "e2"},
                                      "Jensen bound, custom partition", out);
        }

        Scheme scheme;
        if (cfg.scheme == "uniform") {
            scheme.kind = SchemeKind::Uniform;
        } else if (cfg.scheme == "geometric") {
            scheme.kind = SchemeKind::Geometric;
            scheme.eps = cfg.eps;
        } else {
            throw ConfigError("scan: scheme must be 'uniform', 'geometric' or 'custom'");
        }
        if (cfg.n_max < 2) throw ConfigError("scan: n_max must be >= 2");

        const auto rows = convergence_scan(f, domain, scheme, cfg.n_max);
        for (const auto& r : rows) {
            t.rows.push_back({static_cast<double>(r.n), r.jensen_sum, r.exact,
                              r.normalized, r.gap, r.e1, detail::opt_cell(r.e2),
                              detail::opt_cell(r.ratio_next)});
        }
        return detail::emit_table(t, cfg, {"normalized", "e1", "e2"},
                                  "Jensen bound convergence", out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

// Both sides of the Gruss inequality for a pair of identical functions.
inline int cmd_gruss(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Interval domain = cfg.interval.value_or(Interval(0.0, 1.0));
        const FunctionSpec f = cfg.function.has_value()
                                   ? *cfg.function
                                   : FunctionSpec::signum(domain.midpoint());
        const GrussResult r = gruss_check(f, f, domain, std::min(cfg.tol, 1e-12));
        out << "lhs=" << format_cell(r.lhs) << " rhs=" << format_cell(r.rhs)
            << " slack=" << format_cell(r.slack()) << "\n";
        if (r.lhs > r.rhs + cfg.tol) {
            err << "inequality violated: lhs exceeds rhs by "
                << format_cell(r.lhs - r.rhs) << "\n";
            return kInequalityViolated;
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

// Randomized completion-of-squares suite plus the scalar reference triple.
inline int cmd_lemma(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.trials < 1) throw ConfigError("lemma: trials must be >= 1");
        if (cfg.max_dim < 1) throw ConfigError("lemma: max-dim must be >= 1");
        const CompletionSuiteResult res =
            completion_equivalence_suite(cfg.seed, cfg.trials, cfg.max_dim);

        const CompletionTriple scalar(Mat{{0.0}}, Mat{{1.0}}, Mat{{1.0}});
        out << "reference triple (A,B,C)=(0,1,1): N*="
            << format_cell(n_star(scalar)(0, 0)) << " M1=" << format_cell(m1(scalar)(0, 0))
            << "\n";
        out << "trials=" << cfg.trials
            << " max_discrepancy=" << format_cell(res.max_minimizer_gap)
            << " max_identity_error=" << format_cell(res.max_identity_error)
            << " min_residual_eig=" << format_cell(res.min_residual_eig) << "\n";
        if (!res.pass()) {
            err << "equivalence suite failed tolerances\n";
            return kNumericalFailure;
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

// Trajectory bound chain plus the well-posedness sweep over shrinking
// measures. CSV columns: mu, affine_norm, rational_norm ('inf' at mu = 0).
inline int cmd_family(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Mat r = cfg.mat_r.has_value() ? *cfg.mat_r : Mat{{1.0}};
        const int n = r.rows();
        const Interval traj_interval = cfg.interval.value_or(Interval(0.0, 0.5));
        const FunctionSpec x = cfg.function.has_value()
                                   ? *cfg.function
                                   : FunctionSpec::exponential(1.0);
        if (x.dimension() != n) {
            throw ConfigError("family: trajectory dimension must match R");
        }

        const BoundProblem traj_problem(
            bound_instance(BoundShape::SampledDifference, n, traj_interval.measure(), r));
        const Mat slack =
            cfg.mat_slack.has_value() ? *cfg.mat_slack : optimal_slack(traj_problem);

        const TrajectoryCheck tc =
            trajectory_check(x, r, traj_interval, slack, std::min(cfg.tol, 1e-10));
        out << "true=" << format_cell(tc.true_integral)
            << " rational=" << format_cell(tc.rational)
            << " affine=" << format_cell(tc.affine) << "\n";
        const bool traj_ok =
            tc.true_integral <= tc.rational + cfg.tol && tc.rational <= tc.affine + cfg.tol;

        std::vector<double> mus = cfg.mus;
        if (mus.empty()) {
            for (int k = 0; k >= -12; --k) mus.push_back(std::pow(10.0, k));
            mus.push_back(0.0);
        }
        const Mat sweep_m = cfg.mat_m.has_value()
                                ? *cfg.mat_m
                                : bound_instance(BoundShape::SampledDifference, n, 1.0, r).m;
        const BoundProblem sweep_base(sweep_m, r, 0.0);
        const auto rows = wellposedness_sweep(sweep_base, slack, mus);

        Table t;
        t.columns = {"mu", "affine_norm", "rational_norm"};
        for (const auto& row : rows) {
            t.rows.push_back({row.mu, row.affine_norm,
                              row.rational_norm.has_value()
                                  ? *row.rational_norm
                                  : std::numeric_limits<double>::infinity()});
        }

        // contract: affine norm deviates from its mu = 0 value by at most
        // mu * |N^T R^-1 N|_F (a rounding allowance on top), and the rational
        // norm scales as 1/mu.
        const double affine_at_zero =
            frobenius_norm(affine_bound(BoundProblem(sweep_m, r, 0.0), slack));
        const double curvature =
            frobenius_norm(transpose(slack) * solve_spd(r, slack));
        const double rational_scale = frobenius_norm(transpose(sweep_m) * (r * sweep_m));
        bool sweep_ok = true;
        for (const auto& row : rows) {
            const double slack_term = 1e-12 * (1.0 + affine_at_zero);
            if (std::abs(row.affine_norm - affine_at_zero) >
                row.mu * curvature + slack_term) {
                sweep_ok = false;
            }
            if (row.rational_norm.has_value() && rational_scale > 0.0) {
                const double predicted = rational_scale / row.mu;
                if (std::abs(*row.rational_norm - predicted) > 0.01 * predicted) {
                    sweep_ok = false;
                }
            }
        }

        const int code = detail::emit_table(t, cfg, {"affine_norm", "rational_norm"},
                                            "Bound norms vs measure", out);
        if (code != kOk) return code;
        if (!traj_ok) {
            err << "trajectory bound ordering violated\n";
            return kNumericalFailure;
        }
        if (!sweep_ok) {
            err << "well-posedness sweep contract violated\n";
            return kNumericalFailure;
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

// Gap of the midpoint-jump function under the straddle partition; the exact
// value is eps^2 for every width in the list.
inline int cmd_straddle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        std::vector<double> widths = cfg.eps_list;
        if (widths.empty()) widths = {0.1, 0.01, 0.001};
        const Interval domain = cfg.interval.value_or(Interval(0.0, 1.0));
        const FunctionSpec f = FunctionSpec::signum(domain.midpoint());

        Table t;
        t.columns = {"eps", "gap"};
        bool exact_ok = true;
        for (double eps : widths) {
            Partition p = [&] {
                try {
                    return Partition::straddle(domain, eps);
                } catch (const InvalidEpsilon& e) {
                    throw ConfigError(std::string("straddle: ") + e.what());
                }
            }();
            const GapReport rep = fragmented_report(f, p);
            t.rows.push_back({eps, rep.total_gap});
            if (std::abs(rep.total_gap - eps * eps) > 1e-12) exact_ok = false;
        }
        const int code = detail::emit_table(t, cfg, {"gap"}, "Straddle gap", out);
        if (code != kOk) return code;
        if (!exact_ok) {
            err << "straddle gap is not eps^2 to within 1e-12\n";
            return kNumericalFailure;
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

}  // namespace jgl::cli
