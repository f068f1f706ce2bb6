#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

// Exercises the installed binary end to end: exit-code contract, CSV shape,
// byte determinism, env overrides.  FRACRULES_CLI_PATH is injected by CMake.

namespace {

const std::string kCli = FRACRULES_CLI_PATH;

int run_prefixed(const std::string& env, const std::string& args) {
    const std::string cmd = env + "\"" + kCli + "\" " + args;
    const int st = std::system(cmd.c_str());
    REQUIRE(st != -1);
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

int run(const std::string& args) { return run_prefixed("", args); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& blob) {
    std::vector<std::string> out;
    std::istringstream ss(blob);
    std::string l;
    while (std::getline(ss, l)) out.push_back(l);
    return out;
}

// value column of a "x,y" CSV row
double second_field(const std::string& row) {
    const auto comma = row.find(',');
    REQUIRE(comma != std::string::npos);
    return std::strtod(row.c_str() + comma + 1, nullptr);
}

} // namespace

TEST_CASE("eval-ml: scalar value, golden and deterministic") {
    const std::string f1 = "/tmp/fracrules_cli_exp1.csv";
    const std::string f2 = "/tmp/fracrules_cli_exp2.csv";
    CHECK(run("eval-ml --alpha 1 --beta 1 --t 1 --output " + f1) == 0);
    CHECK(run("eval-ml --alpha 1 --beta 1 --t 1 --output " + f2) == 0);

    const auto rows = lines(slurp(f1));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "t,value");
    CHECK(second_field(rows[1]) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-13));

    CHECK(slurp(f1) == slurp(f2)); // byte-identical rerun
}

TEST_CASE("eval-ml: bivariate kernel hits sin t") {
    const std::string f = "/tmp/fracrules_cli_sin.csv";
    CHECK(run("eval-ml --alpha 2 --beta 1 --gamma 2 --lambda -1 --mu 0 "
              "--bivariate --t 2 --output " +
              f) == 0);
    const auto rows = lines(slurp(f));
    REQUIRE(rows.size() == 2);
    CHECK(second_field(rows[1]) ==
          doctest::Approx(std::sin(2.0)).epsilon(1e-12));
}

TEST_CASE("eval-ml: table mode emits samples rows") {
    const std::string f = "/tmp/fracrules_cli_table.csv";
    CHECK(run("eval-ml --alpha 1 --beta 1 --t 0 --t-max 1 --samples 5 "
              "--output " +
              f) == 0);
    const auto rows = lines(slurp(f));
    REQUIRE(rows.size() == 6); // header + 5 samples
    CHECK(second_field(rows[1]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(second_field(rows[5]) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-13));
}

TEST_CASE("solve: CSV shape and byte determinism") {
    const std::string f1 = "/tmp/fracrules_cli_solve1.csv";
    const std::string f2 = "/tmp/fracrules_cli_solve2.csv";
    CHECK(run("solve --T 1 --N 64 --output " + f1) == 0);
    CHECK(run("solve --T 1 --N 64 --output " + f2) == 0);

    const auto rows = lines(slurp(f1));
    REQUIRE(rows.size() == 66); // header + 65 nodes
    CHECK(rows[0] == "t,y");
    CHECK(second_field(rows[1]) == 0.0); // zero initial data

    CHECK(slurp(f1) == slurp(f2));
}

TEST_CASE("solve --certify: JSON certificate on stdout, exit by tolerance") {
    const std::string csv = "/tmp/fracrules_cli_cert.csv";
    const std::string js = "/tmp/fracrules_cli_cert.json";
    CHECK(run("solve --T 2 --N 256 --certify --output " + csv + " > " + js) ==
          0);

    const nlohmann::json cert = nlohmann::json::parse(slurp(js));
    CHECK(cert.at("residual_max").get<double>() <= 5e-2);
    CHECK(cert.at("residual_max").get<double>() >= 0.0);
    CHECK(cert.at("ic_residuals").size() == 2);
    CHECK(cert.at("grid").at("samples").get<int>() == 257);

    // an unmeetable tolerance flips the exit code to 4, not a throw
    CHECK(run("solve --T 1 --N 64 --certify --certify-tol 1e-30 "
              "--output " +
              csv + " > /dev/null") == 4);
}

TEST_CASE("verify: suite names and exit codes") {
    CHECK(run("verify kernel-equivalence > /tmp/fracrules_cli_ke.json") == 0);
    const nlohmann::json rep =
        nlohmann::json::parse(slurp("/tmp/fracrules_cli_ke.json"));
    REQUIRE(rep.is_array());
    REQUIRE(rep.size() == 1);
    CHECK(rep[0].at("suite") == "kernel-equivalence");
    CHECK(rep[0].at("pass").get<bool>());
    CHECK(rep[0].at("max_residual").get<double>() <=
          rep[0].at("tolerance").get<double>());

    CHECK(run("verify no-such-suite > /dev/null 2>&1") == 2);
}

TEST_CASE("verify all: every registered suite passes") {
    CHECK(run("verify all > /tmp/fracrules_cli_all.json") == 0);
    const nlohmann::json rep =
        nlohmann::json::parse(slurp("/tmp/fracrules_cli_all.json"));
    REQUIRE(rep.is_array());
    CHECK(rep.size() == 8);
    for (const auto& s : rep) CHECK(s.at("pass").get<bool>());
}

TEST_CASE("exit code 2: invalid requests") {
    CHECK(run("eval-ml --alpha 0 --beta 1 --t 1 > /dev/null 2>&1") == 2);
    CHECK(run("eval-ml --alpha 1 --beta 1 --t 0 --t-max 1 --samples 1 "
              "> /dev/null 2>&1") == 2);
    CHECK(run("solve --sense xyz > /dev/null 2>&1") == 2);
    CHECK(run("solve --g sin:1 > /dev/null 2>&1") == 2);
    CHECK(run("solve --g poly: > /dev/null 2>&1") == 2);
    CHECK(run("eval-ml --alpha 1 --beta 1 > /dev/null 2>&1") == 2); // missing --t
    CHECK(run("eval-ml --alpha 1 --beta 1 --t 1 --frobnicate "
              "> /dev/null 2>&1") == 2);
    CHECK(run("> /dev/null 2>&1") == 2); // subcommand required
    CHECK(run("--help > /dev/null") == 0);
}

TEST_CASE("exit code 3: representable-range refusal surfaces as numeric") {
    CHECK(run("eval-ml --alpha 1 --beta 1 --t 800 > /dev/null 2>&1") == 3);
    CHECK(run("eval-ml --alpha 0.1 --beta 1 --t -10 > /dev/null 2>&1") == 3);
}

TEST_CASE("FRACRULES_RELTOL: env override validated then honoured") {
    CHECK(run_prefixed("FRACRULES_RELTOL=banana ",
                       "eval-ml --alpha 1 --beta 1 --t 1 "
                       "> /dev/null 2>&1") == 2);
    CHECK(run_prefixed("FRACRULES_RELTOL=2 ",
                       "eval-ml --alpha 1 --beta 1 --t 1 "
                       "> /dev/null 2>&1") == 2);

    const std::string f = "/tmp/fracrules_cli_reltol.csv";
    CHECK(run_prefixed("FRACRULES_RELTOL=1e-3 ",
                       "eval-ml --alpha 1 --beta 1 --t 1 --output " + f) == 0);
    const auto rows = lines(slurp(f));
    REQUIRE(rows.size() == 2);
    // loose series tolerance: close to e but allowed to be visibly off
    CHECK(std::abs(second_field(rows[1]) - std::exp(1.0)) < 1e-2);
}
