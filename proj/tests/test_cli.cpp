#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef QTWO_CLI_PATH
#error "QTWO_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string tmp = std::string(QTWO_CLI_PATH) + ".out.tmp";
    std::string cmd = std::string(QTWO_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream f(tmp, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
    std::remove(tmp.c_str());
    return r;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("e2 --t-min 5 --t-max 4").exit_code == 2);
    CHECK(run_cli("resolve-u --m 1").exit_code == 2);
    CHECK(run_cli("resolve-u --m 14").exit_code == 2);
    CHECK(run_cli("verify --suite nonsense").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("e2 --t-min 0 --t-max 0 --trunc 4").exit_code == 2);
}

TEST_CASE("verify suite runs green") {
    RunResult r = run_cli("verify --suite arith --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() >= 4);
}

TEST_CASE("delta sector dump") {
    RunResult r = run_cli("delta --eps 0 --m 3 --show matrix --trunc 8");
    CHECK(r.exit_code == 0);
    // the column of C_1^3 = c4^3 is zero mod 9: the staircase has a zero column
    CHECK(r.output.find("case 2") != std::string::npos);
    RunResult rj = run_cli("delta --eps 1 --m 13 --show kernel --trunc 10 --format json");
    CHECK(rj.exit_code == 0);
    auto j = nlohmann::json::parse(rj.output);
    CHECK(j["case"] == 5);
    CHECK(j["kernelMatch"] == true);
}

TEST_CASE("resolve-u emits a stable presentation") {
    RunResult r = run_cli("resolve-u --m 13 --trunc 12 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["stable"] == true);
    CHECK(j["splitVerified"] == true);
    CHECK(j["t"] == 54);
}

TEST_CASE("e2 json and svg output") {
    RunResult r = run_cli("e2 --t-min -4 --t-max 6 --trunc 8 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["pages"].size() == 2);
    CHECK(j["crossCheck"]["allMatch"] == true);
    bool found = false;
    for (const auto& e : j["pages"][0]["entries"])
        if (e["s"] == 0 && e["t"] == 0) {
            found = true;
            CHECK(e["summands"][0]["order"] == "free");
        }
    CHECK(found);

    RunResult svg = run_cli("chart --t-min -4 --t-max 6 --trunc 8");
    CHECK(svg.exit_code == 0);
    CHECK(svg.output.rfind("<?xml", 0) == 0);
    CHECK(svg.output.find("</svg>") != std::string::npos);

    // identical configuration gives byte-identical output
    RunResult again = run_cli("e2 --t-min -4 --t-max 6 --trunc 8 --format json");
    CHECK(again.output == r.output);
}

TEST_CASE("environment default for the truncation") {
    std::string cmd = std::string("Q2BKSS_TRUNC=9 ") + QTWO_CLI_PATH +
                      " delta --eps 0 --m 1 --show case --format json > " + QTWO_CLI_PATH +
                      ".env.tmp 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    std::ifstream f(std::string(QTWO_CLI_PATH) + ".env.tmp");
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove((std::string(QTWO_CLI_PATH) + ".env.tmp").c_str());
    auto j = nlohmann::json::parse(ss.str());
    CHECK(j["trunc"] == 9);
}
