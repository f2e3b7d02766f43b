#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fraclab/experiment.hpp"

using namespace fraclab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fraclab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config hash") {
    CHECK(config_hash({}) == "cbf29ce484222325");
    const ConfigMap a = default_config();
    CHECK(config_hash(a) == config_hash(default_config()));
    CHECK(config_hash(a).size() == 16);
    ConfigMap b = a;
    set_value(b, "problem.p", "3");
    CHECK(config_hash(b) != config_hash(a));
    // key/value boundaries matter
    CHECK(config_hash({{"a", "bc"}}) != config_hash({{"ab", "c"}}));
}

TEST_CASE("overrides") {
    ConfigMap c = default_config();
    apply_override("problem.p = 5", c);
    CHECK(c.at("problem.p") == "5");
    CHECK_THROWS_AS(apply_override("problem.nope=1", c), ParameterError);
    CHECK_THROWS_AS(apply_override("problem.p", c), ParameterError);
    set_value(c, "solver.points", "abc");
    CHECK_THROWS_AS(ExperimentConfig::from_map(c), ParameterError);
}

TEST_CASE("ini round trip") {
    const fs::path dir = scratch("ini");
    ConfigMap c = default_config();
    set_value(c, "problem.theta", "1.5");
    set_value(c, "data.atoms", "2@0.5");
    set_value(c, "solver.n", "16");
    const std::string path = (dir / "c.ini").string();
    write_config_ini(c, path);
    ConfigMap d = default_config();
    load_config_file(path, d);
    CHECK(d == c);
    CHECK(config_hash(d) == config_hash(c));

    std::ofstream(dir / "bad.ini") << "[problem]\nwhat = 1\n";
    ConfigMap e = default_config();
    CHECK_THROWS_AS(load_config_file((dir / "bad.ini").string(), e), ParameterError);
    fs::remove_all(dir);
}

TEST_CASE("experiment config") {
    ConfigMap c = default_config();
    set_value(c, "problem.p", "5");
    const ExperimentConfig e = ExperimentConfig::from_map(c);
    CHECK(e.p == 5.0);
    CHECK(e.solver.grid.points == 256);
    CHECK(e.hash == config_hash(c));
    // supercritical auto alpha is the midpoint of (1, N(p-1)/theta) = (1, 2)
    CHECK(e.cond_alpha == doctest::Approx(1.5));

    set_value(c, "data.kind", "dirac");
    CHECK_THROWS_AS(ExperimentConfig::from_map(c), ParameterError);
    set_value(c, "solver.n", "8");
    CHECK_NOTHROW(ExperimentConfig::from_map(c));
    set_value(c, "data.atoms", "1@0.5;2@x");
    CHECK_THROWS_AS(ExperimentConfig::from_map(c), ParameterError);
}

TEST_CASE("csv writer") {
    const fs::path dir = scratch("csv");
    const std::string path = (dir / "t.csv").string();
    {
        CsvWriter w(path, {"a", "b"}, "0123456789abcdef");
        w.row(std::vector<double>{1.0, 2.5});
        CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), Error);
    }
    std::ifstream is(path);
    std::string l1, l2, l3;
    std::getline(is, l1);
    std::getline(is, l2);
    std::getline(is, l3);
    CHECK(l1 == "# config-hash=0123456789abcdef");
    CHECK(l2 == "a,b");
    CHECK(l3 == "1,2.5");
    fs::remove_all(dir);
}

TEST_CASE("sweep on constant data finds the ODE blow-up threshold") {
    // u' = u^2 from u = c blows up at 1/c, so on [0, 0.5] the threshold is c = 2
    SolverConfig s;
    s.params = FracParams(1, 2.0);
    s.grid = GridSpec(1, 1.0, 8);
    s.T = 0.5;
    s.M = 512;
    s.U_max = 1e6;
    const Nonlinearity F = Nonlinearity::prototype(2, 0);
    const MeasureFamily fam = [](double c) { return InitialMeasure::constant(1, c); };
    const SweepReport r = sweep_threshold(fam, F, s, 0.5, 8.0, 0.02, 2);
    CHECK(r.bracketed);
    CHECK(r.monotone);
    CHECK(r.c_plus / r.c_minus <= 1.02 + 1e-12);
    CHECK(r.c_minus <= 2.0 * 1.05);
    CHECK(r.c_plus >= 2.0 / 1.05);

    CHECK_THROWS_AS(sweep_threshold(fam, F, s, 0.1, 0.5, 0.1, 1), NoDichotomy);
    CHECK_THROWS_AS(sweep_threshold(fam, F, s, 4.0, 8.0, 0.1, 1), NoDichotomy);
}
