#pragma once
// Experiment configuration, result files and the coefficient threshold sweep.

#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fraclab/measure.hpp"
#include "fraclab/nonlinearity.hpp"
#include "fraclab/solver.hpp"
#include "fraclab/supersolution.hpp"

namespace fraclab {

// Flat "section.key" -> value map. Every key has a default; files and
// overrides may only set known keys.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap default_config();
// Sectioned INI file; unknown keys throw ParameterError.
void load_config_file(const std::string& path, ConfigMap& cfg);
// "section.key=value"
void apply_override(const std::string& assignment, ConfigMap& cfg);
void set_value(ConfigMap& cfg, const std::string& key, const std::string& value);

// FNV-1a 64 over the sorted "key=value\n" lines, as 16 hex digits.
std::string config_hash(const ConfigMap& cfg);
void write_config_ini(const ConfigMap& cfg, const std::string& path);

struct ExperimentConfig {
    // problem
    FracParams params;
    double p = 2.0, q = 0.0, L = 1.0;
    // data: kind is profile | dirac | constant | zero | mollified-dirac
    std::string data_kind = "profile";
    std::string data_case = "auto";  // case name or auto (from p, q)
    double coefficient = 1.0;
    double cutoff = 1.0;      // R of the profile
    double background = 0.0;  // K
    std::vector<Atom> atoms;  // extra atoms
    double mollify_time = 0.01;
    // solver
    SolverConfig solver;
    // sweep
    double c_lo = 0.01, c_hi = 100.0, sweep_tolerance = 0.1;
    unsigned workers = 0;  // 0: FRACLAB_WORKERS or hardware
    double U_max_check = 1e10;
    // supersolution
    Family family = Family::A;
    SupersolutionOptions super;
    int verify_M = 64;
    // conditions
    double cond_alpha = 0.25, cond_epsilon = 1.0;
    double cond_C = std::numeric_limits<double>::quiet_NaN();  // calibrated envelope constant
    int sigma_k0 = 3, sigma_k1 = 12;
    // output
    std::string output_dir = ".";
    bool csv = true, svg = false;

    ConfigMap resolved;
    std::string hash;

    static ExperimentConfig from_map(const ConfigMap& cfg);
};

CaseLabel data_label(const ExperimentConfig& e);
// mu built from the data block with the given coefficient.
InitialMeasure build_measure(const ExperimentConfig& e, double coefficient);
inline InitialMeasure build_measure(const ExperimentConfig& e) { return build_measure(e, e.coefficient); }
Nonlinearity build_nonlinearity(const ExperimentConfig& e);

// CSV with a "# config-hash=" comment line followed by the header row.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns, const std::string& hash);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& values);

private:
    std::ofstream os_;
    std::size_t cols_;
};

// Polyline plot; axes optionally logarithmic.
void write_svg_plot(const std::string& path, const std::string& title, const std::vector<double>& x,
                    const std::vector<double>& y, bool log_x, bool log_y);

struct SweepPoint {
    double c = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double final_sup = 0.0;
    int sweeps = 0;
    double diverged_time = 0.0;
};

struct SweepReport {
    bool bracketed = false;
    double c_minus = 0.0, c_plus = 0.0;  // largest converged, smallest diverged
    bool monotone = true;
    std::string anomaly;
    std::vector<SweepPoint> points;  // in evaluation order
    // verdicts at c_minus and c_plus rerun with the larger divergence cap
    std::optional<Verdict> check_minus, check_plus;
    double check_U_max = 0.0;
};

class NoDichotomy : public Error {
public:
    using Error::Error;
};

using MeasureFamily = std::function<InitialMeasure(double)>;

// Bisection of mu = family(c) in log c until c_plus / c_minus <= 1 + tolerance,
// with `workers` points solved concurrently per round. Throws NoDichotomy when
// c_lo does not converge or c_hi does not diverge.
SweepReport sweep_threshold(const MeasureFamily& family, const Nonlinearity& F, const SolverConfig& solver, double c_lo,
                            double c_hi, double tolerance, unsigned workers, double U_max_check = 0.0);

}  // namespace fraclab
