#include <doctest.h>

#include "spinflip/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace spinflip;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "spinflip_cli_test";

int run(const std::string& args) {
    fs::create_directories(kWork);
    const std::string cmd = std::string(SPINFLIP_CLI_PATH) + " " + args + " 2>" + (kWork / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string path(const std::string& name) { return (kWork / name).string(); }

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_double(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("synthesize square writes the closed-form cost") {
    REQUIRE(run("synthesize --protocol square --epsilon 1 --A 1 --out " + path("square.csv")) == 0);
    std::ifstream in(path("square.csv"));
    const PulseSchedule s = read_schedule(in);
    CHECK(s.protocol == Protocol::square);
    REQUIRE(s.closed_form_cost);
    CHECK(std::abs(*s.closed_form_cost - std::numbers::pi * std::sqrt(1.5)) < 1e-14);
}

TEST_CASE("synthesize shortcut flags the stage boundary") {
    REQUIRE(run("synthesize --protocol shortcut --epsilon 1 --A 1 --out " + path("shortcut.csv")) == 0);
    const std::string text = slurp(path("shortcut.csv"));
    std::istringstream in(text);
    const PulseSchedule s = read_schedule(in);
    // T = K(1/2) / (2 sqrt 2)
    const double T = 1.85407467730137191843 / (2.0 * std::sqrt(2.0));
    REQUIRE(s.stage_boundary);
    CHECK(std::abs(*s.stage_boundary + T) < 1e-14);
    std::istringstream lines(text);
    std::string line;
    int flagged = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 't') continue;
        if (line.back() == '1') {
            ++flagged;
            const double t = parse_double(line.substr(0, line.find(',')));
            CHECK(std::abs(t + T) < 1e-12);
        }
    }
    CHECK(flagged == 1);
}

TEST_CASE("m = 1 guard is a validation error") {
    CHECK(run("synthesize --protocol sine_gordon --epsilon 0 --A 1 --e 0") == 1);
    CHECK(slurp(kWork / "stderr.txt").find("epsilon=0 invalid for sine_gordon with e=0: modulus=1") !=
          std::string::npos);
    CHECK(run("synthesize --protocol square --epsilon 1 --A 0") == 1);
    CHECK(run("synthesize --protocol triangle") == 1);
    CHECK(run("synthesize --epsilon nope") == 1);
    CHECK(run("frobnicate") == 1);
}

TEST_CASE("simulate verifies every protocol") {
    for (const std::string proto : {"square", "sine_gordon", "shortcut"}) {
        CAPTURE(proto);
        const std::string sched = path(proto + ".sched.csv");
        REQUIRE(run("synthesize --protocol " + proto + " --epsilon 1 --A 1 --out " + sched) == 0);
        CHECK(run("simulate " + sched + " --out " + path(proto + ".traj.csv") + " --report " +
                  path(proto + ".report.json")) == 0);
        const auto report = nlohmann::json::parse(slurp(path(proto + ".report.json")));
        CHECK(report["passed"].get<bool>());
        CHECK(std::abs(report["final_sz"].get<double>() - 1.0) < 1e-6);
        CHECK(report["max_abs_sy"].get<double>() < 1e-6);
        CHECK(report["relative_error"].get<double>() < 1e-6);

        const auto rows = csv_rows(slurp(path(proto + ".traj.csv")));
        REQUIRE(rows.size() > 2);
        CHECK(rows.front()[3] == -1.0);
        CHECK(rows.back()[0] == 0.0);
    }
}

TEST_CASE("simulate an empty-field schedule") {
    {
        std::ofstream out(path("empty.csv"));
        out << "# {\"protocol\":\"custom\",\"epsilon\":1,\"A\":1}\n";
        for (int i = 0; i <= 10; ++i) out << (i == 10 ? 0.0 : -1.0 + 0.1 * i) << ",0,0,0\n";
    }
    CHECK(run("simulate " + path("empty.csv") + " --out " + path("empty.traj.csv") + " --report " +
              path("empty.report.json")) == 0);
    for (const auto& row : csv_rows(slurp(path("empty.traj.csv")))) CHECK(std::abs(row[3] + 1.0) < 1e-14);
    const auto report = nlohmann::json::parse(slurp(path("empty.report.json")));
    CHECK(report["quadrature_cost"]["field_energy"].get<double>() == 0.0);
    CHECK(report["closed_form_cost"].is_null());
}

TEST_CASE("simulate reports verification failures with exit code 2") {
    REQUIRE(run("synthesize --protocol square --epsilon 1 --A 1 --samples-per-unit 200 --out " +
                path("coarse.csv")) == 0);
    // Claim a wrong closed-form cost.
    std::string text = slurp(path("coarse.csv"));
    const auto pos = text.find("\"closed_form_cost\":");
    REQUIRE(pos != std::string::npos);
    text.insert(pos + 19, "1");
    std::ofstream(path("coarse_bad.csv")) << text;
    CHECK(run("simulate " + path("coarse_bad.csv") + " --out " + path("bad.traj.csv") + " --report " +
              path("bad.report.json")) == 2);
    CHECK(run("simulate " + path("missing.csv")) == 1);
}

TEST_CASE("sweep over [0, 20]") {
    REQUIRE(run("sweep 0 20 200 --out " + path("sweep.csv")) == 0);
    const auto rows = csv_rows(slurp(path("sweep.csv")));
    REQUIRE(rows.size() == 200);
    CHECK(rows.front()[0] == 0.0);
    CHECK(rows.front()[5] == 1.0);
    for (const auto& r : rows) {
        CHECK(r[4] > 0.81);
        CHECK(r[4] < 0.91);
    }
    CHECK(run("sweep 1 0 10") == 1);
    CHECK(run("sweep 0 1 1") == 1);
}

TEST_CASE("cost, limits and ratio-max") {
    REQUIRE(run("cost --protocol square --epsilon 1 --A 1 --format json --out " + path("cost.json")) == 0);
    const auto cost = nlohmann::json::parse(slurp(path("cost.json")));
    CHECK(std::abs(cost["cost"].get<double>() - std::numbers::pi * std::sqrt(1.5)) < 1e-14);

    REQUIRE(run("limits --format json --out " + path("limits.json")) == 0);
    const auto lim = nlohmann::json::parse(slurp(path("limits.json")));
    CHECK(std::abs(lim["ratio_u_small"].get<double>() - 2.0 * std::sqrt(2.0) / std::numbers::pi) < 1e-6);

    REQUIRE(run("ratio-max --format json --out " + path("rmax.json")) == 0);
    const auto rmax = nlohmann::json::parse(slurp(path("rmax.json")));
    CHECK(std::abs(rmax["gamma"].get<double>() - 0.0504) < 1e-3);
    CHECK(std::abs(rmax["ratio_u"].get<double>() - 0.905) < 1e-3);
}

TEST_CASE("config file with flag overrides") {
    std::ofstream(path("run.cfg")) << "# shortcut run\nprotocol = shortcut\nepsilon = 0.3\nA = 3\nformat = json\n";
    REQUIRE(run("synthesize --config " + path("run.cfg") + " --A 1 --out " + path("cfg.json")) == 0);
    const auto doc = nlohmann::json::parse(slurp(path("cfg.json")));
    CHECK(doc["meta"]["protocol"] == "shortcut");
    CHECK(doc["meta"]["epsilon"].get<double>() == 0.3);
    CHECK(doc["meta"]["A"].get<double>() == 1.0);
    std::ofstream(path("bad.cfg")) << "colour = blue\n";
    CHECK(run("synthesize --config " + path("bad.cfg")) == 1);
}

TEST_CASE("identical runs give byte-identical files") {
    for (const std::string fmt : {"csv", "json"}) {
        REQUIRE(run("synthesize --protocol shortcut --epsilon 0.3 --A 3 --format " + fmt + " --out " + path("a." + fmt)) == 0);
        REQUIRE(run("synthesize --protocol shortcut --epsilon 0.3 --A 3 --format " + fmt + " --out " + path("b." + fmt)) == 0);
        CHECK(slurp(path("a." + fmt)) == slurp(path("b." + fmt)));
    }
    REQUIRE(run("sweep 0.001 20 50 --log --out " + path("s1.csv")) == 0);
    REQUIRE(run("sweep 0.001 20 50 --log --out " + path("s2.csv")) == 0);
    CHECK(slurp(path("s1.csv")) == slurp(path("s2.csv")));
}
