#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "charflow/cli.hpp"

using namespace charflow;
using cli::RunConfig;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (const char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cli cauchy: prints u for the flat data set") {
    RunConfig cfg;
    cfg.mode = "cauchy";
    cfg.tau = "x";
    cfg.nu = "0";
    cfg.support = {{-1.0, 1.0}};
    cfg.at = {{0.25, 0.1}};
    std::ostringstream out, err;
    CHECK(cli::run(cfg, out, err) == 0);
    CHECK(out.str() == "u = 0.25\n");
}

TEST_CASE("cli inverse-line: example1 tau_prime column is 1") {
    RunConfig cfg;
    cfg.mode = "inverse-line";
    cfg.example = "example1";
    cfg.norm = {{0.0, 0.0}};
    cfg.samples = 41;
    const auto path = temp_path("inv.csv");
    cfg.output = path;
    std::ostringstream out, err;
    REQUIRE(cli::run(cfg, out, err) == 0);

    const auto text = slurp(path);
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "x,tau_prime,nu,tau");
    int rows = 0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double tp = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(std::abs(tp - 1.0) <= 1e-8);
        ++rows;
    }
    CHECK(rows == 41);
    std::remove(path.c_str());
}

TEST_CASE("cli domain: example3 gap report has exactly one component") {
    RunConfig cfg;
    cfg.mode = "domain";
    cfg.example = "example3";
    cfg.a = 2.0;
    cfg.b = 1.0;
    cfg.bbox = BBox{-1.5, 1.2, -1.0, 1.0};
    cfg.grid_nx = 60;
    cfg.grid_ny = 60;
    std::ostringstream out, err;
    REQUIRE(cli::run(cfg, out, err) == 0);
    const auto report = nlohmann::json::parse(out.str());
    REQUIRE(report.contains("config"));
    CHECK(report["config"]["mode"] == "domain");
    REQUIRE(report.contains("gap_components"));
    CHECK(report["gap_components"].size() == 1);
}

TEST_CASE("cli exit codes: config errors 1, math errors 2") {
    std::ostringstream out, err;

    RunConfig bad_expr;
    bad_expr.mode = "cauchy";
    bad_expr.tau = "2*+";
    bad_expr.nu = "0";
    bad_expr.support = {{-1.0, 1.0}};
    bad_expr.at = {{0.0, 0.0}};
    CHECK(cli::run(bad_expr, out, err) == 1);

    RunConfig bad_mode;
    bad_mode.mode = "frobnicate";
    CHECK(cli::run(bad_mode, out, err) == 1);

    RunConfig outside;
    outside.mode = "cauchy";
    outside.tau = "x";
    outside.nu = "0";
    outside.support = {{-1.0, 1.0}};
    outside.at = {{0.0, 3.0}};  // 2|y| beyond the data span
    CHECK(cli::run(outside, out, err) == 2);

    RunConfig degenerate;
    degenerate.mode = "cauchy";
    degenerate.tau = "x^2";  // tau' vanishes at 0
    degenerate.nu = "0";
    degenerate.support = {{-1.0, 1.0}};
    degenerate.at = {{0.0, 0.0}};
    CHECK(cli::run(degenerate, out, err) == 2);
}

TEST_CASE("cli json errors are machine readable") {
    RunConfig cfg;
    cfg.mode = "cauchy";
    cfg.tau = "2*+";
    cfg.nu = "0";
    cfg.support = {{-1.0, 1.0}};
    cfg.at = {{0.0, 0.0}};
    cfg.json_errors = true;
    std::ostringstream out, err;
    CHECK(cli::run(cfg, out, err) == 1);
    const auto j = nlohmann::json::parse(err.str());
    CHECK(j["error"]["category"] == "syntax_error");
    CHECK(j["error"]["offset"] == 2);
}

TEST_CASE("cli trace: CSV schema and SVG output") {
    RunConfig cfg;
    cfg.mode = "trace";
    cfg.example = "example1";
    cfg.c_values = {-1.0, 0.0};
    cfg.samples = 21;
    const auto csv_path = temp_path("trace.csv");
    const auto svg_path = temp_path("trace.svg");
    cfg.output = csv_path;
    cfg.svg_path = svg_path;
    cfg.bbox = BBox{-2.0, 2.0, -0.9, 0.9};
    std::ostringstream out, err;
    REQUIRE(cli::run(cfg, out, err) == 0);

    const auto csv = slurp(csv_path);
    CHECK(csv.rfind("family,c,x,y,u", 0) == 0);
    CHECK(count_lines(csv) > 4 * 10);

    const auto svg = slurp(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    std::remove(csv_path.c_str());
    std::remove(svg_path.c_str());
}

TEST_CASE("cli: repeated runs are bit-identical") {
    const auto path1 = temp_path("rep1.csv");
    const auto path2 = temp_path("rep2.csv");
    for (const auto& path : {path1, path2}) {
        RunConfig cfg;
        cfg.mode = "inverse-circle";
        cfg.example = "example3";
        cfg.samples = 50;
        cfg.output = path;
        std::ostringstream out, err;
        REQUIRE(cli::run(cfg, out, err) == 0);
    }
    CHECK(slurp(path1) == slurp(path2));
    std::remove(path1.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("cli config document: flags mirror json keys") {
    const auto cfg_path = temp_path("config.json");
    {
        std::ofstream out(cfg_path);
        out << R"({"mode": "inverse-line", "example": "example2", "a": 2, "b": 1,
                   "norm": [0, 0], "samples": 11, "support": [-1, 1]})";
    }
    const auto cfg = cli::config_from_json_file(cfg_path);
    CHECK(cfg.mode == "inverse-line");
    REQUIRE(cfg.example.has_value());
    CHECK(*cfg.example == "example2");
    CHECK(cfg.samples == 11);
    REQUIRE(cfg.support.has_value());
    CHECK(cfg.support->first == -1.0);

    std::ostringstream out, err;
    CHECK(cli::run(cfg, out, err) == 0);
    std::remove(cfg_path.c_str());
}

TEST_CASE("cli binary: smoke run with leading-dash pair values") {
    const std::string cmd = std::string(CHARFLOW_BIN) +
                            " cauchy --tau x --nu 0 --support -1,1 --at 0.25,0.1 > " +
                            temp_path("bin.out") + " 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const auto text = slurp(temp_path("bin.out"));
    CHECK(text == "u = 0.25\n");
    std::remove(temp_path("bin.out").c_str());
}
