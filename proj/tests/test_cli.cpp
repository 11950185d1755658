#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cmd(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int st = pclose(pipe);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

RunResult run_cli(const std::string& args) {
    return run_cmd(std::string(CDU_CLI_PATH) + " " + args);
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string write_tmp(const char* name, const std::string& text) {
    std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("cli: field summaries") {
    auto text = run_cli("field --p 2 --n 6 --format csv");
    CHECK(text.code == 0);
    CHECK(text.out.find("order = 64") != std::string::npos);
    CHECK(text.out.find("subfield degrees: 1 2 3 6") != std::string::npos);

    auto j = run_cli("field --p 3 --n 2");
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["order"] == 9);
    CHECK(parsed["modulus"] == nlohmann::json::array({1, 0, 1}));

    CHECK(run_cli("field --p 4 --n 2").code == 2);
    CHECK(run_cli("field").code == 2);  // no --n
    CHECK(run_cli("bogus-subcommand").code == 2);
}

TEST_CASE("cli: uniformity profiles in both formats") {
    auto j = run_cli("uniformity --p 2 --n 2 --construction identity --c 0");
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.size() == 1);
    CHECK(parsed[0]["c"] == 0);
    CHECK(parsed[0]["delta"] == 1);

    auto csv = run_cli("uniformity --p 2 --n 4 --construction gold --k 1 --format csv --c all");
    CHECK(csv.code == 0);
    auto lines = lines_of(csv.out);
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "c,delta");
    CHECK(lines[1] == "0,3");
    CHECK(lines[2] == "1,2");
    for (std::size_t i = 3; i < lines.size(); ++i)
        CHECK(lines[i] == std::to_string(i - 1) + ",3");

    CHECK(run_cli("uniformity --p 2 --n 4 --c all").code == 2);  // no construction
}

TEST_CASE("cli: difference-table rows account for every x") {
    auto csv = run_cli("uniformity --p 2 --n 4 --construction gold --k 1 --ddt --c 1");
    CHECK(csv.code == 0);
    auto lines = lines_of(csv.out);
    REQUIRE(lines.size() == 17);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string cell;
        std::getline(row, cell, ',');  // the a column
        std::uint64_t sum = 0;
        while (std::getline(row, cell, ',')) sum += std::stoull(cell);
        CHECK(sum == 16);
    }
    CHECK(run_cli("uniformity --p 2 --n 4 --construction gold --k 1 --ddt --c 1,2").code == 2);
}

TEST_CASE("cli: nonlinearity report") {
    auto j = run_cli("uniformity --p 2 --n 5 --construction gold --k 1 --nl");
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["nonlinearity"] == 12);
}

TEST_CASE("cli: verify exit codes") {
    std::string good = write_tmp("cdu-cli-suite-good.json", R"([
        {"claim": "CONCAT",
         "params": {"p": 2, "n": 4, "s": 2,
                    "pieces": [{"kind": "power", "e": 2}, {"kind": "power", "e": 2}]}},
        {"claim": "THM_T2_TWO_PIECE",
         "params": {"n": 4, "s": 2, "c": 2,
                    "f": {"kind": "power", "e": 2}, "g": {"kind": "power", "e": 3}}}
    ])");
    auto ok = run_cli("verify --suite " + good);
    CHECK(ok.code == 0);
    auto parsed = nlohmann::json::parse(ok.out);
    CHECK(parsed["pass"] == true);
    CHECK(parsed["reports"].size() == 2);

    std::string zero_shift = write_tmp("cdu-cli-suite-alpha0.json", R"([
        {"claim": "THM_PANTE_GOLD", "params": {"n": 4, "s": 2, "k": 1, "alpha": 0}}
    ])");
    CHECK(run_cli("verify --suite " + zero_shift).code == 2);

    std::string empty = write_tmp("cdu-cli-suite-empty.json", "[]");
    CHECK(run_cli("verify --suite " + empty).code == 0);

    std::string garbled = write_tmp("cdu-cli-suite-garbled.json", "{not json");
    CHECK(run_cli("verify --suite " + garbled).code == 2);
    CHECK(run_cli("verify --suite /nonexistent/suite.json").code == 2);

    for (const auto& p : {good, zero_shift, empty, garbled}) std::filesystem::remove(p);
}

TEST_CASE("cli: sweeps emit one row per job and flag bad jobs") {
    auto bad = run_cli("sweep --p 2 --construction gold --n-list 4 --k-list 1,5 --c 1");
    CHECK(bad.code == 1);  // the k = 5 jobs cannot be built
    auto lines = lines_of(bad.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "construction,p,n,s,k,alpha,c,delta,status");
    CHECK(lines[1] == "gold,2,4,,1,,1,2,ok");
    CHECK(lines[2].find("gold,2,4,,5,,1,,error") == 0);

    // one sweep cell agrees with the uniformity command on the same instance
    auto cell = run_cli("sweep --p 2 --construction gold --n-list 4 --k-list 1 --c 5");
    CHECK(cell.code == 0);
    CHECK(lines_of(cell.out)[1] == "gold,2,4,,1,,5,3,ok");
}

TEST_CASE("cli: sweep output does not depend on the worker count") {
    const std::string args =
        " sweep --p 2 --construction gold_shift --n-list 4,6 --s-list 2 --k-list 1"
        " --alpha all --c all-not-1";
    auto one = run_cmd("env CDU_WORKERS=1 " + std::string(CDU_CLI_PATH) + args);
    auto four = run_cmd("env CDU_WORKERS=4 " + std::string(CDU_CLI_PATH) + args);
    CHECK(one.code == 0);
    CHECK(four.code == 0);
    CHECK(one.out == four.out);
    CHECK(lines_of(one.out).size() == 1 + 3 * 15 + 3 * 63);
}
