#include "fraclab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fraclab/cases.hpp"
#include "fraclab/parallel.hpp"
#include "fraclab/semigroup.hpp"

namespace fraclab {
namespace {

double to_double(const ConfigMap& c, const std::string& key) {
    const std::string& s = c.at(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("config key " + key + " expects a number, got '" + s + "'");
    }
}

int to_int(const ConfigMap& c, const std::string& key) {
    const double v = to_double(c, key);
    if (v != std::floor(v) || std::fabs(v) > 1e9) throw ParameterError("config key " + key + " expects an integer");
    return int(v);
}

bool to_bool(const ConfigMap& c, const std::string& key) {
    std::string s = c.at(key);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return char(std::tolower(ch)); });
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw ParameterError("config key " + key + " expects a boolean, got '" + c.at(key) + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// "mass@x[,y[,z]]" separated by ';'
std::vector<Atom> parse_atoms(const std::string& s, int N) {
    std::vector<Atom> out;
    std::stringstream all(s);
    std::string item;
    while (std::getline(all, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto at = item.find('@');
        Atom a;
        try {
            a.mass = std::stod(item.substr(0, at));
            if (at != std::string::npos) {
                std::stringstream xs(item.substr(at + 1));
                std::string c;
                int d = 0;
                while (std::getline(xs, c, ',')) {
                    if (d >= N) throw ParameterError("atom '" + item + "' has more than N coordinates");
                    a.x[std::size_t(d++)] = std::stod(c);
                }
            }
        } catch (const ParameterError&) {
            throw;
        } catch (const std::exception&) {
            throw ParameterError("cannot parse atom '" + item + "' (expected mass@x,y,z)");
        }
        if (!(a.mass > 0.0)) throw ParameterError("atom masses must be positive");
        out.push_back(a);
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

}  // namespace

ConfigMap default_config() {
    const char* env = std::getenv("FRACLAB_OUTPUT_DIR");
    return {
        {"problem.N", "1"},
        {"problem.theta", "2"},
        {"problem.p", "2"},
        {"problem.q", "0"},
        {"problem.L", "1"},
        {"data.kind", "profile"},
        {"data.case", "auto"},
        {"data.coefficient", "1"},
        {"data.R", "1"},
        {"data.K", "0"},
        {"data.atoms", ""},
        {"data.mollify_time", "0.01"},
        {"solver.half_width", "4"},
        {"solver.points", "256"},
        {"solver.T", "0.5"},
        {"solver.M", "256"},
        {"solver.m", "inf"},
        {"solver.n", "0"},
        {"solver.K", "0"},
        {"solver.U_max", "1e8"},
        {"solver.tolerance", "1e-6"},
        {"sweep.c_lo", "0.01"},
        {"sweep.c_hi", "100"},
        {"sweep.tolerance", "0.1"},
        {"sweep.workers", "0"},
        {"sweep.U_max_check", "1e10"},
        {"super.family", "A"},
        {"super.R", "1"},
        {"super.L", "2"},
        {"super.alpha", "2"},
        {"super.d", "nan"},
        {"super.tau_max", "1e12"},
        {"super.verify_M", "64"},
        {"conditions.alpha", "auto"},
        {"conditions.epsilon", "1"},
        {"conditions.C", "nan"},
        {"conditions.sigma_k0", "3"},
        {"conditions.sigma_k1", "12"},
        {"output.dir", env && *env ? env : "."},
        {"output.csv", "true"},
        {"output.svg", "false"},
    };
}

void set_value(ConfigMap& cfg, const std::string& key, const std::string& value) {
    auto it = cfg.find(key);
    if (it == cfg.end()) throw ParameterError("unknown config key '" + key + "'");
    it->second = trim(value);
}

void apply_override(const std::string& assignment, ConfigMap& cfg) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ParameterError("override '" + assignment + "' is not section.key=value");
    set_value(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void load_config_file(const std::string& path, ConfigMap& cfg) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::read_ini(path, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ParameterError("cannot read config " + path + ": " + e.message());
    }
    for (const auto& [section, body] : pt) {
        if (body.empty()) throw ParameterError("config key '" + section + "' lies outside any section");
        for (const auto& [key, value] : body) set_value(cfg, section + "." + key, value.data());
    }
}

std::string config_hash(const ConfigMap& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [k, v] : cfg) {
        for (const std::string* s : {&k, &v}) {
            for (unsigned char ch : *s) {
                h ^= ch;
                h *= 0x100000001b3ULL;
            }
            h ^= static_cast<unsigned char>(s == &k ? '=' : '\n');
            h *= 0x100000001b3ULL;
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

void write_config_ini(const ConfigMap& cfg, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    std::string section;
    for (const auto& [k, v] : cfg) {
        const auto dot = k.find('.');
        const std::string s = k.substr(0, dot);
        if (s != section) {
            os << (section.empty() ? "" : "\n") << '[' << s << "]\n";
            section = s;
        }
        os << k.substr(dot + 1) << " = " << v << '\n';
    }
}

ExperimentConfig ExperimentConfig::from_map(const ConfigMap& c) {
    ExperimentConfig e;
    e.resolved = c;
    e.hash = config_hash(c);
    e.params = FracParams(to_int(c, "problem.N"), to_double(c, "problem.theta"));
    if (e.params.N > 3) throw ParameterError("problem.N must be 1, 2 or 3");
    e.p = to_double(c, "problem.p");
    e.q = to_double(c, "problem.q");
    e.L = to_double(c, "problem.L");
    if (!(e.p > 1.0)) throw ParameterError("problem.p must exceed 1");
    if (!(e.L > 0.0)) throw ParameterError("problem.L must be positive");

    e.data_kind = c.at("data.kind");
    static const std::vector<std::string> kinds{"profile", "dirac", "constant", "zero", "mollified-dirac"};
    if (std::find(kinds.begin(), kinds.end(), e.data_kind) == kinds.end())
        throw ParameterError("data.kind must be one of profile, dirac, constant, zero, mollified-dirac");
    e.data_case = c.at("data.case");
    if (e.data_case != "auto") parse_case(e.data_case);
    e.coefficient = to_double(c, "data.coefficient");
    e.cutoff = to_double(c, "data.R");
    e.background = to_double(c, "data.K");
    e.atoms = parse_atoms(c.at("data.atoms"), e.params.N);
    e.mollify_time = to_double(c, "data.mollify_time");
    if (!(e.coefficient >= 0.0)) throw ParameterError("data.coefficient must be >= 0");
    if (!(e.cutoff > 0.0)) throw ParameterError("data.R must be positive");
    if (!(e.background >= 0.0)) throw ParameterError("data.K must be >= 0");
    if (!(e.mollify_time > 0.0)) throw ParameterError("data.mollify_time must be positive");

    SolverConfig& s = e.solver;
    s.params = e.params;
    s.grid = GridSpec(e.params.N, to_double(c, "solver.half_width"), to_int(c, "solver.points"));
    s.T = to_double(c, "solver.T");
    s.M = to_int(c, "solver.M");
    s.truncation = to_double(c, "solver.m");
    s.mollification = to_int(c, "solver.n");
    s.max_sweeps = to_int(c, "solver.K");
    s.U_max = to_double(c, "solver.U_max");
    s.tolerance = to_double(c, "solver.tolerance");
    s.validate();
    const bool has_atoms = e.data_kind == "dirac" || !e.atoms.empty();
    if (has_atoms && s.mollification == 0)
        throw ParameterError("atomic data need solver.n > 0 (mollification), or data.kind = mollified-dirac");

    e.c_lo = to_double(c, "sweep.c_lo");
    e.c_hi = to_double(c, "sweep.c_hi");
    e.sweep_tolerance = to_double(c, "sweep.tolerance");
    const int w = to_int(c, "sweep.workers");
    if (w < 0) throw ParameterError("sweep.workers must be >= 0");
    e.workers = unsigned(w);
    e.U_max_check = to_double(c, "sweep.U_max_check");
    if (!(e.c_lo > 0.0 && e.c_hi > e.c_lo)) throw ParameterError("sweep range needs 0 < c_lo < c_hi");
    if (!(e.sweep_tolerance > 0.0)) throw ParameterError("sweep.tolerance must be positive");

    e.family = parse_family(c.at("super.family"));
    e.super.R = to_double(c, "super.R");
    e.super.L = to_double(c, "super.L");
    e.super.alpha = to_double(c, "super.alpha");
    e.super.d = to_double(c, "super.d");
    e.super.tau_max = to_double(c, "super.tau_max");
    e.verify_M = to_int(c, "super.verify_M");
    if (e.verify_M < 1) throw ParameterError("super.verify_M must be positive");

    // check B needs alpha < N/theta, check C needs 1 < alpha < N(p-1)/theta
    const CaseLabel lab = label_case(e.params, e.p, e.q);
    const double pth = e.params.p_theta;
    const bool sup = lab.kind == CaseKind::Supercritical;
    const double lo = sup ? 1.0 : 0.0;
    const double hi = sup ? e.params.N * (e.p - 1.0) / e.params.theta : e.params.N / e.params.theta;
    if (c.at("conditions.alpha") == "auto") {
        e.cond_alpha = sup ? 0.5 * (lo + hi) : 0.5 * hi;
    } else {
        e.cond_alpha = to_double(c, "conditions.alpha");
        if ((e.p >= pth || is_critical(e.params, e.p)) && !(e.cond_alpha > lo && e.cond_alpha < hi)) {
            std::ostringstream os;
            os << "conditions.alpha = " << e.cond_alpha << " is not admissible here; choose it in (" << lo << ", "
               << hi << ")";
            throw ParameterError(os.str());
        }
    }
    e.cond_epsilon = to_double(c, "conditions.epsilon");
    e.cond_C = to_double(c, "conditions.C");
    e.sigma_k0 = to_int(c, "conditions.sigma_k0");
    e.sigma_k1 = to_int(c, "conditions.sigma_k1");
    if (!(e.sigma_k0 >= 0 && e.sigma_k1 > e.sigma_k0)) throw ParameterError("sigma range needs 0 <= k0 < k1");

    e.output_dir = c.at("output.dir");
    e.csv = to_bool(c, "output.csv");
    e.svg = to_bool(c, "output.svg");
    return e;
}

CaseLabel data_label(const ExperimentConfig& e) {
    if (e.data_case == "auto") return label_case(e.params, e.p, e.q);
    CaseLabel lab = label_case(e.params, e.p, e.q);
    lab.kind = parse_case(e.data_case);
    return lab;
}

InitialMeasure build_measure(const ExperimentConfig& e, double coefficient) {
    const int N = e.params.N;
    InitialMeasure mu = InitialMeasure::zero(N);
    if (e.data_kind == "profile") {
        mu = InitialMeasure::from_profile(SingularProfile(data_label(e), coefficient, e.cutoff, 0.0));
    } else if (e.data_kind == "dirac") {
        mu = InitialMeasure::dirac(N, coefficient);
    } else if (e.data_kind == "constant") {
        mu = InitialMeasure::constant(N, coefficient);
    } else if (e.data_kind == "mollified-dirac") {
        GridFunction g = apply_semigroup(InitialMeasure::dirac(N, coefficient), e.mollify_time, e.solver.grid, e.params);
        g.warnings.clear();
        mu = InitialMeasure::from_density(g);
    }
    mu.background += e.background;
    for (const auto& a : e.atoms) mu.atoms.push_back(a);
    return mu;
}

Nonlinearity build_nonlinearity(const ExperimentConfig& e) { return Nonlinearity::prototype(e.p, e.q, e.L); }

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns, const std::string& hash)
    : os_(path), cols_(columns.size()) {
    if (!os_) throw Error("cannot write " + path);
    os_ << std::setprecision(12);
    os_ << "# config-hash=" << hash << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != cols_) throw Error("CSV row width differs from the header");
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << values[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& values) {
    if (values.size() != cols_) throw Error("CSV row width differs from the header");
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << values[i];
    os_ << '\n';
}

void write_svg_plot(const std::string& path, const std::string& title, const std::vector<double>& x,
                    const std::vector<double>& y, bool log_x, bool log_y) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        const double a = log_x ? std::log10(x[i]) : x[i];
        const double b = log_y ? std::log10(y[i]) : y[i];
        if (std::isfinite(a) && std::isfinite(b)) pts.push_back({a, b});
    }
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    constexpr double W = 640, H = 400, pad = 50;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << pad << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    if (!pts.empty()) {
        double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
        for (auto [a, b] : pts) {
            x0 = std::min(x0, a), x1 = std::max(x1, a), y0 = std::min(y0, b), y1 = std::max(y1, b);
        }
        if (x1 == x0) x1 = x0 + 1;
        if (y1 == y0) y1 = y0 + 1;
        os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (auto [a, b] : pts)
            os << pad + (a - x0) / (x1 - x0) * (W - 2 * pad) << ',' << H - pad - (b - y0) / (y1 - y0) * (H - 2 * pad)
               << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << pad << "\" y=\"" << H - 15 << "\" font-family=\"sans-serif\" font-size=\"11\">"
           << (log_x ? "log10 x: " : "x: ") << fmt(x0) << " .. " << fmt(x1) << (log_y ? ", log10 y: " : ", y: ")
           << fmt(y0) << " .. " << fmt(y1) << "</text>\n";
    }
    os << "</svg>\n";
}

SweepReport sweep_threshold(const MeasureFamily& family, const Nonlinearity& F, const SolverConfig& solver,
                            double c_lo, double c_hi, double tolerance, unsigned workers, double U_max_check) {
    if (!(c_lo > 0.0 && c_hi > c_lo)) throw ParameterError("sweep range needs 0 < c_lo < c_hi");
    if (!(tolerance > 0.0)) throw ParameterError("sweep tolerance must be positive");
    if (workers == 0) workers = worker_count();

    auto run = [&](double c, const SolverConfig& cfg) {
        const SolverOutcome o = solve(family(c), F, cfg);
        SweepPoint pt;
        pt.c = c;
        pt.verdict = o.verdict;
        pt.final_sup = o.verdict == Verdict::Diverged ? o.diverged_norm : o.trajectory.final_sup();
        pt.sweeps = o.trajectory.sweeps;
        pt.diverged_time = o.diverged_time;
        return pt;
    };
    // one round: every point on its own worker, inner loops sequential
    auto batch = [&](const std::vector<double>& cs, const SolverConfig& cfg) {
        std::vector<SweepPoint> out(cs.size());
        const unsigned saved = worker_count();
        const bool split = workers > 1 && cs.size() > 1;
        if (split) set_worker_count(1);
        try {
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{0};
            std::exception_ptr err;
            std::mutex mu;
            auto work = [&] {
                for (std::size_t i; (i = next++) < cs.size();) {
                    try {
                        out[i] = run(cs[i], cfg);
                    } catch (...) {
                        std::lock_guard lock(mu);
                        if (!err) err = std::current_exception();
                    }
                }
            };
            const unsigned n = split ? std::min<unsigned>(workers, unsigned(cs.size())) : 1;
            for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
            work();
            for (auto& t : pool) t.join();
            if (err) std::rethrow_exception(err);
        } catch (...) {
            if (split) set_worker_count(saved);
            throw;
        }
        if (split) set_worker_count(saved);
        return out;
    };

    SweepReport rep;
    const auto ends = batch({c_lo, c_hi}, solver);
    rep.points = ends;
    if (ends[0].verdict != Verdict::Converged || ends[1].verdict != Verdict::Diverged) {
        std::ostringstream os;
        os << "no dichotomy in range: c=" << c_lo << " " << verdict_name(ends[0].verdict) << ", c=" << c_hi << " "
           << verdict_name(ends[1].verdict);
        throw NoDichotomy(os.str());
    }
    double lo = c_lo, hi = c_hi;
    while (hi / lo > 1.0 + tolerance) {
        std::vector<double> cs;
        for (unsigned k = 1; k <= workers; ++k) cs.push_back(lo * std::pow(hi / lo, double(k) / (workers + 1)));
        const auto res = batch(cs, solver);
        rep.points.insert(rep.points.end(), res.begin(), res.end());
        double new_lo = lo, new_hi = hi;
        bool seen_div = false;
        for (const auto& pt : res) {
            if (pt.verdict == Verdict::Inconclusive) {
                rep.monotone = false;
                rep.anomaly = "inconclusive verdict at c=" + fmt(pt.c);
                break;
            }
            if (pt.verdict == Verdict::Converged) {
                if (seen_div) {
                    rep.monotone = false;
                    rep.anomaly = "converged at c=" + fmt(pt.c) + " above a diverged coefficient";
                    break;
                }
                new_lo = pt.c;
            } else if (!seen_div) {
                seen_div = true;
                new_hi = pt.c;
            }
        }
        if (!rep.monotone) break;
        lo = new_lo;
        hi = new_hi;
    }
    rep.c_minus = lo;
    rep.c_plus = hi;
    rep.bracketed = rep.monotone;
    // all converged points below every diverged one
    if (rep.monotone) {
        double max_conv = 0.0, min_div = std::numeric_limits<double>::infinity();
        for (const auto& pt : rep.points) {
            if (pt.verdict == Verdict::Converged) max_conv = std::max(max_conv, pt.c);
            if (pt.verdict == Verdict::Diverged) min_div = std::min(min_div, pt.c);
        }
        if (!(max_conv < min_div)) {
            rep.monotone = rep.bracketed = false;
            rep.anomaly = "converged and diverged coefficients interleave";
        }
    }
    if (rep.bracketed && U_max_check > 0.0) {
        SolverConfig big = solver;
        big.U_max = U_max_check;
        const auto chk = batch({rep.c_minus, rep.c_plus}, big);
        rep.check_U_max = U_max_check;
        rep.check_minus = chk[0].verdict;
        rep.check_plus = chk[1].verdict;
    }
    return rep;
}

}  // namespace fraclab
