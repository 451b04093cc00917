#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args, const std::string& out_file) {
    const std::string cmd = std::string(POWDUAL_CLI_PATH) + " " + args + " -o " + out_file +
                            " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream body;
    body << in.rdbuf();
    return RunResult{WEXITSTATUS(status), body.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& body) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(body);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("spectrum subcommand emits closed and oracle columns") {
    const auto res = run_cli("spectrum --system coulomb --Z 1 --lmax 2 --nmax 2 --points 12000",
                             "/tmp/powdual_spec.csv");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 10);  // header + 9 rows
    CHECK(rows[0][2] == "E_closed");
    bool found_ground = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] == "0" && rows[i][1] == "0") {
            found_ground = true;
            CHECK(std::stod(rows[i][2]) == doctest::Approx(-0.5).epsilon(1e-12));
            CHECK(std::stod(rows[i][4]) < 1e-7);
        }
        CHECK(std::stod(rows[i][4]) < 1e-6);
    }
    CHECK(found_ground);
}

TEST_CASE("dual-map twice with the inverse map is the identity") {
    const auto first = run_cli("dual-map --a -1 --C 1 --L 0.5 --E -0.5 --lambda -1",
                               "/tmp/powdual_map1.json");
    REQUIRE(first.exit_code == 0);
    const json j1 = json::parse(first.output);
    CHECK(j1.at("schema_version") == "1");
    CHECK(j1.at("map").at("b").get<double>() == doctest::Approx(2.0));
    CHECK(j1.at("dual").at("L").get<double>() == doctest::Approx(1.0));

    std::ostringstream cmd;
    cmd.precision(17);
    cmd << "dual-map --a " << j1.at("inverse_map").at("a").get<double>() << " --C "
        << j1.at("inverse_map").at("C").get<double>() << " --L "
        << j1.at("dual").at("L").get<double>() << " --E "
        << j1.at("dual").at("E").get<double>() << " --lambda "
        << j1.at("dual").at("lambda").get<double>();
    const auto second = run_cli(cmd.str(), "/tmp/powdual_map2.json");
    REQUIRE(second.exit_code == 0);
    const json j2 = json::parse(second.output);
    for (const char* key : {"L", "E", "lambda"})
        CHECK(j2.at("dual").at(key).get<double>() ==
              doctest::Approx(j1.at("input").at(key).get<double>()).epsilon(1e-13));
}

TEST_CASE("confine-family reproduces the potential table") {
    const auto res = run_cli(
        "confine-family --a-prime 1 --lambda2 2 --ell 1 --nu 0..3 --rmin 1 --rmax 3 --count 3",
        "/tmp/powdual_conf.csv");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 13);  // header + 4 nu * 3 samples
    CHECK(rows[0][7] == "V_eff");
    bool found = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][1] == "0" && std::stod(rows[i][6]) == doctest::Approx(1.0)) {
            found = true;
            CHECK(std::stod(rows[i][7]) == doctest::Approx(-1.5).epsilon(1e-12));
            CHECK(std::stod(rows[i][2]) == doctest::Approx(-4.5).epsilon(1e-12));
        }
    }
    CHECK(found);
}

TEST_CASE("identical configuration gives byte-identical output") {
    const auto a = run_cli("green-eval --system osc --E 0.7 --ell 0 --rmin 0.5 --rmax 2.5 --count 4",
                           "/tmp/powdual_g1.csv");
    const auto b = run_cli("green-eval --system osc --E 0.7 --ell 0 --rmin 0.5 --rmax 2.5 --count 4",
                           "/tmp/powdual_g2.csv");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("r_outer,r_inner,L,E,value\n") == 0);
}

TEST_CASE("green-eval dual route equals the closed route") {
    const auto closed = run_cli(
        "green-eval --system coulomb --route closed --E -0.3 --ell 0 --rmin 0.6 --rmax 2.4 --count 3",
        "/tmp/powdual_gc.csv");
    const auto dual = run_cli(
        "green-eval --system coulomb --route dual --E -0.3 --ell 0 --rmin 0.6 --rmax 2.4 --count 3",
        "/tmp/powdual_gd.csv");
    const auto rc = parse_csv(closed.output);
    const auto rd = parse_csv(dual.output);
    REQUIRE(rc.size() == rd.size());
    for (std::size_t i = 1; i < rc.size(); ++i)
        CHECK(std::stod(rd[i][4]) == doctest::Approx(std::stod(rc[i][4])).epsilon(1e-10));
}

TEST_CASE("config file supplies defaults, flags override") {
    {
        std::ofstream cfg("/tmp/powdual_cfg.json");
        cfg << R"({"a": -1.0, "C": 2.0, "L": 0.5, "E": -0.5, "lambda": -1.0})";
    }
    const auto res = run_cli("dual-map --config /tmp/powdual_cfg.json --L 1.5",
                             "/tmp/powdual_map3.json");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j.at("map").at("C").get<double>() == doctest::Approx(2.0));   // from config
    CHECK(j.at("input").at("L").get<double>() == doctest::Approx(1.5)); // flag wins
}

TEST_CASE("exit codes") {
    CHECK(WEXITSTATUS(std::system((std::string(POWDUAL_CLI_PATH) +
                                   " dual-map --no-such-flag 2>/dev/null")
                                      .c_str())) == 2);
    // E > 0 is outside the Coulomb bound-state domain: numerical failure
    CHECK(WEXITSTATUS(std::system((std::string(POWDUAL_CLI_PATH) +
                                   " green-eval --system coulomb --E 0.4 -o /dev/null 2>/dev/null")
                                      .c_str())) == 3);
}
