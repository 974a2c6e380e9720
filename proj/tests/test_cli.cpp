#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

constexpr double kPiOver16 = 0.19634954084936207;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CATFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        if (header) {
            while (std::getline(ls, cell, ',')) t.columns.push_back(cell);
            header = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("argument errors exit with code 2") {
    CHECK(run_cli("fisher").exit_code == 2);
    CHECK(run_cli("fidelity-curve --protocol bogus --alpha-grid 1:2:2").exit_code == 2);
    CHECK(run_cli("homodyne --state no-such --alpha 1 --ygrid 0:1:3").exit_code == 2);
    CHECK(run_cli("homodyne --state target-cat --alpha 1 --ygrid nonsense").exit_code == 2);
}

TEST_CASE("numerical failures exit with code 1") {
    // A forced 12-level basis cannot hold the heralded state.
    CHECK(run_cli("wigner-cut --state gp --n 1 --alpha 2 --ygrid 0:1:5 --fock-dim 12")
              .exit_code == 1);
}

TEST_CASE("cat-probe sensitivity improves with amplitude") {
    auto res = run_cli("fisher --state target-cat --alpha-grid 0.5:6:12");
    REQUIRE(res.exit_code == 0);
    auto t = parse_csv(res.out);
    REQUIRE(t.rows.size() == 12);
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) CHECK(t.rows[i + 1][1] < t.rows[i][1]);
    CHECK(t.rows.front()[1] < 0.5);  // already beats the classical limit
}

TEST_CASE("wigner cut of the deterministic protocol") {
    auto res = run_cli("wigner-cut --state dispersive:ideal --alpha 4 --ygrid -2:2:801");
    REQUIRE(res.exit_code == 0);
    auto t = parse_csv(res.out);
    REQUIRE(t.rows.size() == 801);
    double min_w = 1e9, min_y = 0.0;
    for (const auto& row : t.rows)
        if (row[1] < min_w) {
            min_w = row[1];
            min_y = row[0];
        }
    CHECK(min_w < 0.0);
    CHECK(std::abs(std::abs(min_y) - kPiOver16) < 0.05 * kPiOver16);
}

TEST_CASE("kitten-regime fidelity floor") {
    auto res = run_cli("fidelity-curve --protocol dispersive --n 1 --alpha-grid 0.1:0.1:1");
    REQUIRE(res.exit_code == 0);
    auto t = parse_csv(res.out);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == doctest::Approx(0.1));
    CHECK(t.rows[0][1] >= 0.5);
    CHECK(t.rows[0][2] == doctest::Approx(1.0));
}

TEST_CASE("json and csv carry identical numbers") {
    const std::string args = "homodyne --state dispersive:pd --pd 0.2 --alpha 2 --ygrid -2:2:41";
    auto csv = run_cli(args);
    auto js = run_cli(args + " --json");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(js.exit_code == 0);
    auto t = parse_csv(csv.out);
    auto j = nlohmann::json::parse(js.out);
    REQUIRE(j["rows"].size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t c = 0; c < t.rows[i].size(); ++c)
            CHECK(j["rows"][i][c].get<double>() == t.rows[i][c]);

    // report round-trips losslessly
    auto again = nlohmann::json::parse(j.dump());
    CHECK(again == j);
    CHECK(j["meta"]["tool"] == "catforge");
}

TEST_CASE("golden file regression") {
    const std::string golden_dir = CATFORGE_GOLDEN_DIR;
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"homodyne_cat.csv", "homodyne --state target-cat --alpha 2 --ygrid -3:3:61"},
        {"wigner_dispersive.csv", "wigner-cut --state dispersive:ideal --alpha 2 --ygrid 0:1.5:31"},
        {"distill_pd.csv", "distill --state dispersive:pd --pd 0.2 --alpha-grid 1:4:4"},
        {"fisher_cat.csv", "fisher --state target-cat --alpha-grid 0.5:3:6 --qfi"},
        {"fidelity_lossy.csv",
         "fidelity-curve --protocol dispersive --n 1 --alpha-grid 0.5:3:6 --tau 0.99"},
        {"gp_optimize_a1.csv", "gp-optimize --alpha 1 --n 1 --seed 7"},
    };
    for (const auto& [file, args] : cases) {
        CAPTURE(file);
        auto res = run_cli(args);
        REQUIRE(res.exit_code == 0);
        auto fresh = parse_csv(res.out);
        auto committed = parse_csv(read_file(golden_dir + "/" + file));
        REQUIRE(fresh.columns == committed.columns);
        REQUIRE(fresh.rows.size() == committed.rows.size());
        for (std::size_t i = 0; i < fresh.rows.size(); ++i) {
            REQUIRE(fresh.rows[i].size() == committed.rows[i].size());
            for (std::size_t c = 0; c < fresh.rows[i].size(); ++c) {
                const double a = fresh.rows[i][c], b = committed.rows[i][c];
                CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
            }
        }
    }
}
