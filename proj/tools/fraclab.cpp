// fraclab: command-line front end.
// Exit codes: 0 ok / converged, 1 usage, 2 diverged, 3 inconclusive,
// 4 construction or hypothesis failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <list>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fraclab/asymptotics.hpp"
#include "fraclab/cases.hpp"
#include "fraclab/classifier.hpp"
#include "fraclab/experiment.hpp"
#include "fraclab/kernel.hpp"
#include "fraclab/parallel.hpp"
#include "fraclab/semigroup.hpp"
#include "fraclab/solver.hpp"
#include "fraclab/supersolution.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace fraclab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDiverged = 2, kInconclusive = 3, kConstruction = 4 };

struct Binding {
    std::string key;
    std::string value;
    CLI::Option* opt = nullptr;
};

// Options shared by every subcommand; each maps onto one config key.
struct Common {
    std::string config_file;
    std::vector<std::string> sets;
    bool svg = false, no_csv = false;
    std::list<Binding> binds;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "INI config file")->check(CLI::ExistingFile);
        app->add_option("--set", sets, "override, section.key=value (repeatable)");
        app->add_flag("--svg", svg, "also write SVG plots");
        app->add_flag("--no-csv", no_csv, "skip CSV output");
        static const std::vector<std::pair<const char*, const char*>> keys{
            {"--N", "problem.N"},
            {"--theta", "problem.theta"},
            {"--p", "problem.p"},
            {"--q", "problem.q"},
            {"--L", "problem.L"},
            {"--data", "data.kind"},
            {"--case", "data.case"},
            {"--coefficient", "data.coefficient"},
            {"--R", "data.R"},
            {"--K", "data.K"},
            {"--atoms", "data.atoms"},
            {"--mollify-time", "data.mollify_time"},
            {"--half-width", "solver.half_width"},
            {"--points", "solver.points"},
            {"--T", "solver.T"},
            {"--M", "solver.M"},
            {"--m", "solver.m"},
            {"--n", "solver.n"},
            {"--sweeps", "solver.K"},
            {"--U-max", "solver.U_max"},
            {"--tol", "solver.tolerance"},
            {"--c-lo", "sweep.c_lo"},
            {"--c-hi", "sweep.c_hi"},
            {"--sweep-tol", "sweep.tolerance"},
            {"--workers", "sweep.workers"},
            {"--U-max-check", "sweep.U_max_check"},
            {"--family", "super.family"},
            {"--super-R", "super.R"},
            {"--super-L", "super.L"},
            {"--alpha", "super.alpha"},
            {"--d", "super.d"},
            {"--tau-max", "super.tau_max"},
            {"--verify-M", "super.verify_M"},
            {"--cond-alpha", "conditions.alpha"},
            {"--epsilon", "conditions.epsilon"},
            {"--C", "conditions.C"},
            {"--k0", "conditions.sigma_k0"},
            {"--k1", "conditions.sigma_k1"},
            {"--output-dir", "output.dir"},
        };
        for (auto [flag, key] : keys) {
            binds.push_back({key, "", nullptr});
            binds.back().opt = app->add_option(flag, binds.back().value, std::string("config ") + key);
        }
    }

    // defaults < FRACLAB_* environment < config file < flags < --set
    ExperimentConfig resolve() const {
        ConfigMap cfg = default_config();
        if (!config_file.empty()) load_config_file(config_file, cfg);
        for (const auto& b : binds)
            if (b.opt->count() > 0) set_value(cfg, b.key, b.value);
        for (const auto& s : sets) apply_override(s, cfg);
        if (svg) set_value(cfg, "output.svg", "true");
        if (no_csv) set_value(cfg, "output.csv", "false");
        ExperimentConfig e = ExperimentConfig::from_map(cfg);
        if (e.workers > 0) set_worker_count(e.workers);
        return e;
    }
};

fs::path out_path(const ExperimentConfig& e, const std::string& name) {
    fs::path dir(e.output_dir);
    fs::create_directories(dir);
    return dir / name;
}

void emit(const ExperimentConfig& e, const std::string& command, json j) {
    j["command"] = command;
    j["config_hash"] = e.hash;
    const fs::path p = out_path(e, command + "_summary.json");
    std::ofstream(p) << j.dump(2) << '\n';
    write_config_ini(e.resolved, out_path(e, command + "_config.ini").string());
    std::cout << j.dump(2) << std::endl;
}

json point_json(const Point& x, int N) {
    json a = json::array();
    for (int d = 0; d < N; ++d) a.push_back(x[std::size_t(d)]);
    return a;
}

void write_snapshot(const ExperimentConfig& e, const GridFunction& g, const std::string& name) {
    const int N = g.spec.N;
    std::vector<std::string> cols;
    for (int d = 0; d < N; ++d) cols.push_back(std::string(1, "xyz"[d]));
    cols.push_back("u");
    CsvWriter w(out_path(e, name).string(), cols, e.hash);
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        const Point c = g.spec.center_of(k);
        std::vector<double> row(c.begin(), c.begin() + N);
        row.push_back(g.values[k] + g.background);
        w.row(row);
    }
}

// ---------------------------------------------------------------- kernel

int cmd_kernel(const ExperimentConfig& e, double t, double rmax, int rows, bool check) {
    const auto k = kernel_profile(e.params);
    json j;
    j["N"] = e.params.N;
    j["theta"] = e.params.theta;
    j["mode"] = k->mode() == KernelMode::closed_form ? "closed_form" : "quadrature";
    j["t"] = t;
    if (e.csv) {
        CsvWriter w(out_path(e, "kernel_table.csv").string(), {"r", "gamma"}, e.hash);
        for (int i = 0; i < rows; ++i) {
            const double r = rmax * i / std::max(1, rows - 1);
            w.row(std::vector<double>{r, kernel_radial(*k, r, t)});
        }
    }
    if (check) {
        json c;
        c["normalization_error"] = std::fabs(k->total_mass() - 1.0);
        c["quadrature_error"] = k->achieved_error();
        if (e.params.N == 1) {
            const auto ck = chapman_kolmogorov_check(e.params, 2.0, 1.0, GridSpec(1, 50.0, 4096));
            c["chapman_kolmogorov"] = ck.discrepancy;
            if (!ck.warnings.empty()) c["warnings"] = ck.warnings;
        }
        if (e.params.theta < 2.0) {
            double lo = INFINITY, hi = 0.0;
            for (double ts : {1e-2, 1e-1, 1.0})
                for (int i = 0; i <= 400; ++i) {
                    const double x[3] = {100.0 * i / 400.0, 0.0, 0.0};
                    const double r = kernel_bound_ratio(*k, std::span<const double>(x, std::size_t(e.params.N)), ts);
                    lo = std::min(lo, r), hi = std::max(hi, r);
                }
            c["bound_ratio_min"] = lo;
            c["bound_ratio_max"] = hi;
            c["bound_band_width"] = hi / lo;
        }
        j["check"] = c;
    }
    emit(e, "kernel", j);
    return kOk;
}

// ---------------------------------------------------------------- classify / profile

int cmd_classify(const ExperimentConfig& e) {
    const Classification c = classify(e.params, e.p, e.q);
    json j;
    j["p_theta"] = e.params.p_theta;
    j["case"] = case_name(c.label.kind);
    j["criterion"] = c.criterion;
    if (c.profile) {
        j["profile"] = c.profile->formula;
        j["exponents"] = c.profile->exponents;
    }
    const DiracVerdict d = dirac_solvable(build_nonlinearity(e), e.params);
    j["dirac_solvable"] = d.solvable;
    j["dirac_integral"] = d.criterion.partial;
    emit(e, "classify", j);
    return kOk;
}

int cmd_profile(const ExperimentConfig& e) {
    const CaseLabel lab = data_label(e);
    const SingularProfile prof(lab, e.coefficient, e.cutoff, e.background);
    json j;
    j["case"] = case_name(lab.kind);
    j["formula"] = profile_formula(lab);
    j["exponents"] = prof.exponents();
    const auto mu = InitialMeasure::from_profile(prof);
    const auto sig = dyadic_sigmas(e.sigma_k0, e.sigma_k1);
    json masses = json::array();
    std::vector<double> xs, ys;
    for (double s : sig) {
        const double m = ball_mass(mu, {0, 0, 0}, s);
        masses.push_back({{"sigma", s}, {"ball_mass", m}});
        xs.push_back(s), ys.push_back(m);
    }
    j["ball_mass_at_origin"] = masses;
    if (e.csv) {
        CsvWriter w(out_path(e, "profile.csv").string(), {"r", "mu"}, e.hash);
        for (int i = 0; i <= 200; ++i) {
            const double r = e.cutoff * std::pow(10.0, -6.0 * (1.0 - i / 200.0));
            if (r < e.cutoff) w.row(std::vector<double>{r, prof.value(r)});
        }
    }
    if (e.svg) write_svg_plot(out_path(e, "profile_ball_mass.svg").string(), "ball mass vs sigma", xs, ys, true, true);
    emit(e, "profile", j);
    return kOk;
}

// ---------------------------------------------------------------- solve

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Converged: return kOk;
        case Verdict::Diverged: return kDiverged;
        case Verdict::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
}

int cmd_solve(const ExperimentConfig& e) {
    const InitialMeasure mu = build_measure(e);
    const Nonlinearity F = build_nonlinearity(e);
    const SolverOutcome o = solve(mu, F, e.solver);
    const auto& tr = o.trajectory;
    json j;
    j["verdict"] = verdict_name(o.verdict);
    j["sweeps"] = tr.sweeps;
    j["monotone"] = tr.monotone;
    j["sup"] = tr.sup();
    j["final_sup"] = tr.final_sup();
    if (o.verdict == Verdict::Converged) j["residual"] = tr.residual;
    if (o.verdict == Verdict::Diverged) {
        j["diverged_time"] = o.diverged_time;
        j["diverged_sweep"] = o.diverged_sweep;
        j["diverged_norm"] = o.diverged_norm;
    }
    if (!tr.warnings.empty()) j["warnings"] = tr.warnings;
    std::vector<double> ts, sups;
    for (const auto& s : tr.slices) ts.push_back(s.time), sups.push_back(s.sup());
    if (e.csv) {
        CsvWriter h(out_path(e, "sup_history.csv").string(), {"sweep", "sup"}, e.hash);
        for (std::size_t i = 0; i < tr.sup_history.size(); ++i) h.row(std::vector<double>{double(i), tr.sup_history[i]});
        CsvWriter s(out_path(e, "slice_sup.csv").string(), {"t", "sup"}, e.hash);
        for (std::size_t i = 0; i < ts.size(); ++i) s.row(std::vector<double>{ts[i], sups[i]});
        if (!tr.slices.empty()) write_snapshot(e, tr.slices.back(), "final_snapshot.csv");
    }
    if (e.svg) write_svg_plot(out_path(e, "sup_vs_time.svg").string(), "sup u(t)", ts, sups, false, true);
    emit(e, "solve", j);
    return verdict_exit(o.verdict);
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const ExperimentConfig& e) {
    const Nonlinearity F = build_nonlinearity(e);
    json j;
    SweepReport r;
    try {
        r = sweep_threshold([&](double c) { return build_measure(e, c); }, F, e.solver, e.c_lo, e.c_hi,
                            e.sweep_tolerance, e.workers, e.U_max_check);
    } catch (const NoDichotomy& err) {
        j["error"] = err.what();
        emit(e, "sweep", j);
        return kConstruction;
    }
    j["bracketed"] = r.bracketed;
    j["monotone"] = r.monotone;
    j["c_minus"] = r.c_minus;
    j["c_plus"] = r.c_plus;
    j["ratio"] = r.c_plus / r.c_minus;
    if (!r.anomaly.empty()) j["anomaly"] = r.anomaly;
    if (r.check_minus) {
        j["U_max_check"] = r.check_U_max;
        j["check_minus"] = verdict_name(*r.check_minus);
        j["check_plus"] = verdict_name(*r.check_plus);
    }
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back({{"c", p.c}, {"verdict", verdict_name(p.verdict)}});
    j["points"] = pts;
    if (e.csv) {
        CsvWriter w(out_path(e, "sweep.csv").string(), {"c", "verdict", "final_sup", "sweeps", "diverged_time"},
                    e.hash);
        for (const auto& p : r.points) {
            std::ostringstream a, b, d;
            a.precision(12), b.precision(12), d.precision(12);
            a << p.c, b << p.final_sup, d << p.diverged_time;
            w.row(std::vector<std::string>{a.str(), std::string(verdict_name(p.verdict)), b.str(),
                                           std::to_string(p.sweeps), d.str()});
        }
    }
    emit(e, "sweep", j);
    return r.bracketed ? kOk : kInconclusive;
}

// ---------------------------------------------------------------- verify-super

int cmd_verify_super(const ExperimentConfig& e) {
    const InitialMeasure mu = build_measure(e);
    const Nonlinearity F = build_nonlinearity(e);
    json j;
    j["family"] = family_name(e.family);
    Supersolution w;
    try {
        w = build_supersolution(e.family, mu, F, e.params, e.solver.grid, e.super);
    } catch (const ConstructionError& err) {
        j["error"] = err.what();
        j["condition"] = err.condition();
        emit(e, "verify-super", j);
        return kConstruction;
    }
    const VerificationReport r = verify_supersolution(w, mu, F, e.solver.T, e.verify_M);
    j["max_violation"] = r.max_violation;
    j["quadrature_error"] = r.quadrature_error;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    if (e.csv) {
        CsvWriter c(out_path(e, "verification.csv").string(), {"t", "max_violation"}, e.hash);
        for (const auto& row : r.rows) c.row(std::vector<double>{row.t, row.violation});
    }
    bool dominated = true;
    if (mu.has_atoms() && e.solver.mollification == 0) {
        j["domination"] = "skipped: atomic data need mollification";
    } else {
        if (mu.has_atoms()) j["note"] = "solve uses mollified data";
        const SolverOutcome o = solve(mu, F, e.solver);
        j["solve_verdict"] = verdict_name(o.verdict);
        if (o.verdict == Verdict::Converged) {
            const auto d = domination_check(o, w);
            j["domination"] = d.holds;
            j["max_excess"] = d.max_excess;
            dominated = d.holds;
        }
    }
    std::vector<double> ts, vs;
    for (const auto& row : r.rows) ts.push_back(row.t), vs.push_back(row.violation);
    if (e.svg) write_svg_plot(out_path(e, "violation.svg").string(), "sup (RHS - w)", ts, vs, false, false);
    emit(e, "verify-super", j);
    return r.passed && dominated ? kOk : kConstruction;
}

// ---------------------------------------------------------------- check-conditions

json report_json(const ConditionReport& r, int N) {
    json j;
    j["id"] = r.id;
    j["witness"] = point_json(r.witness, N);
    j["worst_ratio"] = r.worst_ratio;
    j["sigma"] = r.sigma;
    j["constant"] = r.constant;
    j["satisfied"] = r.satisfied;
    j["growing"] = r.growing;
    j["verdict"] = r.verdict;
    return j;
}

void report_csv(const ExperimentConfig& e, const ConditionReport& r, const std::string& name) {
    CsvWriter w(out_path(e, name).string(), {"sigma", "lhs", "rhs", "ratio", "witness_x"}, e.hash);
    for (const auto& row : r.rows) w.row(std::vector<double>{row.sigma, row.lhs, row.rhs, row.ratio, row.witness[0]});
}

int cmd_check_conditions(const ExperimentConfig& e) {
    const InitialMeasure mu = build_measure(e);
    const auto sig = dyadic_sigmas(e.sigma_k0, e.sigma_k1);
    const CaseLabel lab = label_case(e.params, e.p, e.q);
    json j;
    j["case"] = case_name(lab.kind);
    ConditionReport suff;
    if (lab.kind == CaseKind::Subcritical) {
        suff = sufficient_check_A(mu);
    } else if (lab.kind == CaseKind::Supercritical) {
        suff = sufficient_check_C(mu, e.params, e.p, e.q, e.cond_alpha, e.cond_epsilon, sig);
    } else {
        suff = sufficient_check_B(mu, e.params, e.q, e.cond_alpha, e.cond_epsilon, sig);
    }
    const ConditionReport nec = necessary_envelope(mu, e.params, e.p, e.q, sig, e.cond_C);
    j["alpha"] = e.cond_alpha;
    j["sufficient"] = report_json(suff, e.params.N);
    j["necessary_envelope"] = report_json(nec, e.params.N);
    if (e.csv) {
        report_csv(e, suff, "sufficient.csv");
        report_csv(e, nec, "envelope.csv");
    }
    if (e.svg) {
        std::vector<double> xs, ys;
        for (const auto& r : nec.rows) xs.push_back(r.sigma), ys.push_back(r.ratio);
        write_svg_plot(out_path(e, "envelope.svg").string(), "envelope quotient vs sigma", xs, ys, true, true);
    }
    emit(e, "check-conditions", j);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclab: fractional semilinear heat equation laboratory"};
    app.require_subcommand(1);
    std::list<Common> commons;
    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        commons.emplace_back();
        commons.back().attach(s);
        return std::pair<CLI::App*, Common*>{s, &commons.back()};
    };

    auto [k_app, k_c] = sub("kernel", "kernel table and self checks");
    double k_t = 1.0, k_rmax = 10.0;
    int k_rows = 201;
    bool k_check = false;
    k_app->add_option("--t", k_t, "time of the table")->check(CLI::PositiveNumber);
    k_app->add_option("--rmax", k_rmax, "largest radius")->check(CLI::PositiveNumber);
    k_app->add_option("--rows", k_rows, "table rows")->check(CLI::Range(2, 1000000));
    k_app->add_flag("--check", k_check, "normalization, Chapman-Kolmogorov and bound ratio checks");
    auto [c_app, c_c] = sub("classify", "regime label, optimal profile and Dirac verdict");
    auto [p_app, p_c] = sub("profile", "singular profile table and ball masses");
    auto [s_app, s_c] = sub("solve", "Picard iteration of the Duhamel equation");
    auto [w_app, w_c] = sub("sweep", "coefficient threshold bisection");
    auto [v_app, v_c] = sub("verify-super", "build and verify a supersolution");
    auto [n_app, n_c] = sub("check-conditions", "sufficient and necessary ball conditions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*k_app) return cmd_kernel(k_c->resolve(), k_t, k_rmax, k_rows, k_check);
        if (*c_app) return cmd_classify(c_c->resolve());
        if (*p_app) return cmd_profile(p_c->resolve());
        if (*s_app) return cmd_solve(s_c->resolve());
        if (*w_app) return cmd_sweep(w_c->resolve());
        if (*v_app) return cmd_verify_super(v_c->resolve());
        if (*n_app) return cmd_check_conditions(n_c->resolve());
    } catch (const ConstructionError& err) {
        std::cerr << "construction failure: " << err.what() << '\n';
        return kConstruction;
    } catch (const ParameterError& err) {
        std::cerr << "usage: " << err.what() << '\n';
        return kUsage;
    } catch (const DomainError& err) {
        std::cerr << "usage: " << err.what() << '\n';
        return kUsage;
    } catch (const EvaluationError& err) {
        std::cerr << "evaluation: " << err.what() << '\n';
        return kInconclusive;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
