// catforge: command line front end emitting plot-ready CSV/JSON for the
// cat-state protocol toolkit. Quadratures are in canonical units (hbar = 1,
// vacuum variance 1/2); Wigner normalization has vacuum peak 2/pi.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "catforge/catforge.hpp"

using json = nlohmann::json;
using namespace catforge;

namespace {

struct Report {
    std::string command;
    json params = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_csv(const Report& r, std::ostream& os) {
    for (std::size_t c = 0; c < r.columns.size(); ++c)
        os << r.columns[c] << (c + 1 < r.columns.size() ? "," : "\r\n");
    for (const auto& row : r.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            os << format_value(row[c]) << (c + 1 < row.size() ? "," : "\r\n");
}

void emit_json(const Report& r, std::ostream& os) {
    json j;
    j["meta"] = {{"tool", "catforge"},
                 {"version", kVersion},
                 {"command", r.command},
                 {"seed", r.seed},
                 {"wall_time_s", r.wall_time_s},
                 {"units", "canonical (hbar = 1, vacuum quadrature variance 1/2)"}};
    j["params"] = r.params;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    os << j.dump(2) << "\n";
}

std::vector<double> parse_grid(const std::string& text) {
    double a = 0.0, b = 0.0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1)
        throw CLI::ValidationError("grid", "expected start:stop:steps with steps >= 1");
    std::vector<double> g(steps);
    if (steps == 1) {
        g[0] = a;
        return g;
    }
    for (int i = 0; i < steps; ++i) g[i] = a + (b - a) * i / (steps - 1.0);
    return g;
}

using AnyState = std::variant<FockVector, FockMatrix, CoherentMix>;

struct NoiseFlags {
    double tau = -1.0;     // loss transmissivity, <0 means absent
    double coop = -1.0;    // cavity cooperativity
    double eta = -1.0;     // escape efficiency
    double pd = -1.0;      // phase damping rate
    double ad = -1.0;      // amplitude damping probability
};

struct StateSpec {
    std::string base;     // target-cat | gp | dispersive
    std::string variant;  // ideal | imp | pd | ad
};

StateSpec parse_state_spec(const std::string& text) {
    StateSpec s;
    const auto colon = text.find(':');
    s.base = text.substr(0, colon);
    s.variant = (colon == std::string::npos) ? "ideal" : text.substr(colon + 1);
    if (s.base != "target-cat" && s.base != "gp" && s.base != "dispersive")
        throw CLI::ValidationError("--state", "expected target-cat | gp | dispersive[:...]");
    if (s.base != "dispersive" && s.variant != "ideal")
        throw CLI::ValidationError("--state", "noise variants exist only for dispersive");
    if (s.variant != "ideal" && s.variant != "imp" && s.variant != "pd" && s.variant != "ad")
        throw CLI::ValidationError("--state", "variant must be ideal | imp | pd | ad");
    return s;
}

CoherentMix dispersive_state(double alpha, const StateSpec& spec, const NoiseFlags& nf) {
    if (spec.variant == "imp") {
        if (nf.coop <= 0.0 || nf.eta <= 0.0)
            throw CLI::ValidationError("--state", "dispersive:imp needs --coop and --eta");
        return imperfect_protocol(alpha, ImperfectCoupling(nf.coop, nf.eta)).state;
    }
    if (spec.variant == "pd") {
        if (nf.pd < 0.0) throw CLI::ValidationError("--state", "dispersive:pd needs --pd");
        return qubit_damped_protocol(alpha, QubitChannel::phase_damping(nf.pd)).state;
    }
    if (spec.variant == "ad") {
        if (nf.ad < 0.0) throw CLI::ValidationError("--state", "dispersive:ad needs --ad");
        return qubit_damped_protocol(alpha, QubitChannel::amplitude_damping(nf.ad)).state;
    }
    return ideal_protocol(alpha).state;
}

/// States for each grid alpha. GP states come from one warm-started
/// continuation pass; dispersive family states are closed-form per point.
std::vector<AnyState> build_states(const StateSpec& spec, const std::vector<double>& alphas,
                                   const NoiseFlags& nf, int n, std::uint64_t seed,
                                   int fock_dim) {
    std::vector<AnyState> states;
    states.reserve(alphas.size());
    if (spec.base == "gp") {
        GpOptimizerConfig cfg;
        cfg.seed = seed;
        auto optima = gp_optimize_grid(alphas, n, cfg);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            auto out = gp_output_state(optima[i].params, fock_dim > 0 ? fock_dim : -1);
            if (nf.tau >= 0.0)
                states.emplace_back(loss_fock(out.state, nf.tau));
            else
                states.emplace_back(std::move(out.state));
        }
        return states;
    }
    for (double alpha : alphas) {
        if (spec.base == "target-cat") {
            CoherentMix m = cat_mix(alpha, Parity::Even);
            if (nf.tau >= 0.0) m = loss_mix(m, nf.tau);
            states.emplace_back(std::move(m));
        } else {
            CoherentMix m = dispersive_state(alpha, spec, nf);
            if (nf.tau >= 0.0) m = loss_mix(m, nf.tau);
            states.emplace_back(std::move(m));
        }
    }
    return states;
}

int to_fock_dim(const CoherentMix& m, int fock_dim_override) {
    if (fock_dim_override > 0) return fock_dim_override;
    double b = 0.0;
    for (int i = 0; i < m.rank(); ++i) b = std::max(b, std::abs(m.betas[i]));
    return fock_dim_for(b);
}

// Tiny shims so std::visit picks the right backend.
double wigner_fock_or_mix(const FockVector& v, double x, double y) { return wigner_fock(v, x, y); }
double wigner_fock_or_mix(const FockMatrix& v, double x, double y) { return wigner_fock(v, x, y); }
double wigner_fock_or_mix(const CoherentMix& v, double x, double y) { return wigner_mix(v, x, y); }

double state_wigner(const AnyState& s, double x, double y) {
    return std::visit([&](const auto& v) { return wigner_fock_or_mix(v, x, y); }, s);
}

double state_pdf(const AnyState& s, double y) {
    return std::visit([&](const auto& v) { return homodyne_pdf(v, y); }, s);
}

DistillableReport state_distill(const AnyState& s) {
    return std::visit([](const auto& v) { return distillable_variance(v); }, s);
}

double state_fisher(const AnyState& s) {
    return std::visit([](const auto& v) { return homodyne_fisher(v); }, s);
}

double state_qfi(const AnyState& s, int fock_dim_override) {
    if (std::holds_alternative<FockVector>(s)) return qfi_displacement(std::get<FockVector>(s));
    if (std::holds_alternative<FockMatrix>(s)) return qfi_displacement(std::get<FockMatrix>(s));
    const auto& m = std::get<CoherentMix>(s);
    return qfi_displacement(to_fock(m, to_fock_dim(m, fock_dim_override)));
}

struct CommonOpts {
    bool as_json = false;
    std::string out_path;
    std::uint64_t seed = 12345;
    int fock_dim = 0;
};

void write_report(Report& r, const CommonOpts& opts,
                  std::chrono::steady_clock::time_point t0) {
    r.seed = opts.seed;
    r.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path, std::ios::binary);
        if (!file) throw CLI::ValidationError("--out", "cannot open output file");
        os = &file;
    }
    if (opts.as_json)
        emit_json(r, *os);
    else
        emit_csv(r, *os);
}

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"catforge: cat-state generation protocols, phase-space diagnostics and "
                 "displacement metrology"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOpts common;
    NoiseFlags noise;
    std::string protocol = "dispersive";
    std::string state_text = "target-cat";
    std::string alpha_grid_text, ygrid_text, xgrid_text;
    double alpha = 1.0;
    int n = 1;
    bool with_qfi = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", common.as_json, "emit a JSON report instead of CSV");
        cmd->add_option("--out", common.out_path, "write to a file instead of stdout");
        cmd->add_option("--seed", common.seed, "optimizer seed")->capture_default_str();
        cmd->add_option("--fock-dim", common.fock_dim,
                        "override the automatic Fock truncation");
    };
    auto add_noise = [&](CLI::App* cmd) {
        cmd->add_option("--tau", noise.tau, "loss transmissivity applied to the output state");
        cmd->add_option("--coop", noise.coop, "cavity cooperativity (dispersive:imp)");
        cmd->add_option("--eta", noise.eta, "escape efficiency (dispersive:imp)");
        cmd->add_option("--pd", noise.pd, "qubit phase damping rate (dispersive:pd)");
        cmd->add_option("--ad", noise.ad, "qubit amplitude damping probability (dispersive:ad)");
    };

    auto* fid = app.add_subcommand("fidelity-curve",
                                   "fidelity and success probability over an alpha grid");
    fid->add_option("--protocol", protocol, "gp | ps | pa | dispersive | dispersive-prob")
        ->required();
    fid->add_option("--n", n, "herald order (gp family)")->capture_default_str();
    fid->add_option("--alpha-grid", alpha_grid_text, "start:stop:steps")->required();
    fid->add_option("--tau", noise.tau, "loss transmissivity applied before the fidelity");
    add_common(fid);

    auto* gpopt = app.add_subcommand("gp-optimize", "optimized circuit parameters at one alpha");
    gpopt->add_option("--alpha", alpha, "target cat amplitude")->required();
    gpopt->add_option("--n", n, "herald order")->capture_default_str();
    add_common(gpopt);

    auto* wig = app.add_subcommand("wigner-cut", "Wigner function cut along the y (or x) axis");
    wig->add_option("--state", state_text, "target-cat | gp | dispersive[:ideal|imp|pd|ad]")
        ->required();
    wig->add_option("--alpha", alpha, "target cat amplitude")->required();
    wig->add_option("--ygrid", ygrid_text, "start:stop:steps along y at x = 0");
    wig->add_option("--xgrid", xgrid_text, "start:stop:steps along x at y = 0");
    wig->add_option("--n", n, "herald order (gp)")->capture_default_str();
    add_noise(wig);
    add_common(wig);

    auto* hom = app.add_subcommand("homodyne", "y-quadrature probability density");
    hom->add_option("--state", state_text, "target-cat | gp | dispersive[:ideal|imp|pd|ad]")
        ->required();
    hom->add_option("--alpha", alpha, "target cat amplitude")->required();
    hom->add_option("--ygrid", ygrid_text, "start:stop:steps")->required();
    hom->add_option("--n", n, "herald order (gp)")->capture_default_str();
    add_noise(hom);
    add_common(hom);

    auto* dis = app.add_subcommand("distill", "distillable squeezing variance over alpha");
    dis->add_option("--state", state_text, "target-cat | gp | dispersive[:ideal|imp|pd|ad]")
        ->required();
    dis->add_option("--alpha-grid", alpha_grid_text, "start:stop:steps")->required();
    dis->add_option("--n", n, "herald order (gp)")->capture_default_str();
    add_noise(dis);
    add_common(dis);

    auto* fis = app.add_subcommand("fisher", "minimum resolvable displacement over alpha");
    fis->add_option("--state", state_text, "target-cat | gp | dispersive[:ideal|imp|pd|ad]")
        ->required();
    fis->add_option("--alpha-grid", alpha_grid_text, "start:stop:steps")->required();
    fis->add_flag("--qfi", with_qfi, "also emit the quantum-limited bound");
    fis->add_option("--n", n, "herald order (gp)")->capture_default_str();
    add_noise(fis);
    add_common(fis);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    report.command = join_argv(argc, argv);

    try {
        if (*fid) {
            const auto grid = parse_grid(alpha_grid_text);
            report.params = {{"protocol", protocol}, {"n", n}, {"alpha_grid", alpha_grid_text}};
            if (noise.tau >= 0.0) report.params["tau"] = noise.tau;
            report.columns = {"alpha", "fidelity", "success_prob"};

            if (protocol == "gp" || protocol == "ps" || protocol == "pa") {
                const GpFamily family = protocol == "gp"   ? GpFamily::Full
                                        : protocol == "ps" ? GpFamily::Subtraction
                                                           : GpFamily::Addition;
                GpOptimizerConfig cfg;
                cfg.seed = common.seed;
                auto optima = gp_optimize_grid(grid, n, cfg, family);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    double f = optima[i].fidelity;
                    double p = optima[i].probability;
                    if (protocol == "ps") p = ps_success_rescale(p, n);
                    if (noise.tau >= 0.0) {
                        auto out = gp_output_state(optima[i].params,
                                                   common.fock_dim > 0 ? common.fock_dim : -1);
                        const FockMatrix rho = loss_fock(out.state, noise.tau);
                        const FockVector cat = cat_fock(grid[i], Parity::Even, rho.dim());
                        f = (cat.amps.adjoint() * rho.elems * cat.amps)(0).real();
                    }
                    report.rows.push_back({grid[i], f, p});
                }
            } else if (protocol == "dispersive") {
                report.rows.resize(grid.size());
                parallel_for(grid.size(), [&](std::size_t i) {
                    double f;
                    if (noise.tau >= 0.0) {
                        auto st = ideal_protocol(grid[i]);
                        f = fidelity_with_cat(loss_mix(st.state, noise.tau), grid[i],
                                              Parity::Even);
                    } else {
                        f = optimize_gamma(grid[i]).fidelity;
                    }
                    report.rows[i] = {grid[i], f, 1.0};
                });
            } else if (protocol == "dispersive-prob") {
                GpOptimizerConfig cfg;
                cfg.seed = common.seed;
                auto optima = gp_optimize_grid(grid, n, cfg);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    auto res = probabilistic_protocol(grid[i], optima[i].fidelity);
                    report.rows.push_back({grid[i], res.fidelity, res.success});
                }
            } else {
                throw CLI::ValidationError("--protocol",
                                           "expected gp | ps | pa | dispersive | dispersive-prob");
            }
        } else if (*gpopt) {
            GpOptimizerConfig cfg;
            cfg.seed = common.seed;
            auto best = gp_optimize(alpha, n, cfg);
            report.params = {{"alpha", alpha}, {"n", n}};
            report.columns = {"alpha",   "r1",      "r2",      "r3",       "T",
                              "beta",    "lambda1", "lambda2", "lambda3",  "fidelity",
                              "success_prob"};
            const GpDerived d(best.params);
            report.rows.push_back({alpha, best.params.r1, best.params.r2, best.params.r3,
                                   best.params.T, best.params.beta, d.lambda1, d.lambda2,
                                   d.lambda3, best.fidelity, best.probability});
        } else if (*wig || *hom) {
            const StateSpec spec = parse_state_spec(state_text);
            const bool xcut = *wig && !xgrid_text.empty();
            if (*wig && ygrid_text.empty() && xgrid_text.empty())
                throw CLI::ValidationError("wigner-cut", "one of --ygrid/--xgrid is required");
            const auto grid = parse_grid(xcut ? xgrid_text : ygrid_text);
            auto states = build_states(spec, {alpha}, noise, n, common.seed, common.fock_dim);
            report.params = {{"state", state_text}, {"alpha", alpha}};
            report.columns = {xcut ? "x_canonical" : "y_canonical", *wig ? "wigner" : "pdf"};
            report.rows.resize(grid.size());
            parallel_for(grid.size(), [&](std::size_t i) {
                const double v = *wig ? (xcut ? state_wigner(states[0], grid[i], 0.0)
                                              : state_wigner(states[0], 0.0, grid[i]))
                                      : state_pdf(states[0], grid[i]);
                report.rows[i] = {grid[i], v};
            });
        } else if (*dis) {
            const StateSpec spec = parse_state_spec(state_text);
            const auto grid = parse_grid(alpha_grid_text);
            auto states = build_states(spec, grid, noise, n, common.seed, common.fock_dim);
            report.params = {{"state", state_text}, {"alpha_grid", alpha_grid_text}};
            report.columns = {"alpha", "variance_canonical"};
            report.rows.resize(grid.size());
            parallel_for(grid.size(), [&](std::size_t i) {
                report.rows[i] = {grid[i], state_distill(states[i]).variance};
            });
        } else if (*fis) {
            const StateSpec spec = parse_state_spec(state_text);
            const auto grid = parse_grid(alpha_grid_text);
            auto states = build_states(spec, grid, noise, n, common.seed, common.fock_dim);
            report.params = {{"state", state_text}, {"alpha_grid", alpha_grid_text}};
            report.columns = with_qfi
                                 ? std::vector<std::string>{"alpha", "eps_min", "eps_tilde_min"}
                                 : std::vector<std::string>{"alpha", "eps_min"};
            report.rows.resize(grid.size());
            parallel_for(grid.size(), [&](std::size_t i) {
                const double f = state_fisher(states[i]);
                if (with_qfi) {
                    const auto rep = make_fisher_report(f, state_qfi(states[i], common.fock_dim));
                    report.rows[i] = {grid[i], rep.eps_min, rep.eps_tilde_min};
                } else {
                    report.rows[i] = {grid[i], min_resolvable(f)};
                }
            });
        }
        write_report(report, common, t0);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "catforge failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
