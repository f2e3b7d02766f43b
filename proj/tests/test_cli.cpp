#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    static const fs::path dir = [] {
        const fs::path p = fs::temp_directory_path() / "fraclab_cli_test";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    const fs::path out = dir / "stdout.txt";
    const std::string cmd = std::string(FRACLAB_CLI) + " " + args + " --output-dir " + dir.string() + " > " +
                            out.string() + " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    std::ifstream is(out);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

const std::string kSmall = " --points 32 --M 32 --T 0.1";

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(cli("kernel --theta 1").code == 0);
    CHECK(cli("kernel --theta 2.5").code == 1);
    CHECK(cli("classify --p 0.5").code == 1);
    CHECK(cli("solve --set problem.nope=1").code == 1);
    CHECK(cli("solve --data constant --coefficient 1" + kSmall).code == 0);
    CHECK(cli("solve --data constant --coefficient 100" + kSmall).code == 2);
    CHECK(cli("sweep --data constant --c-lo 20 --c-hi 40" + kSmall).code == 4);
    CHECK(cli("verify-super --family C --alpha 0.5 --p 7 --super-R 0.5 --R 0.5 --coefficient 0.1").code == 4);
}

TEST_CASE("cli summary json") {
    const Run r = cli("classify --p 5");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("config_hash"));
    CHECK(j.at("command") == "classify");
}
