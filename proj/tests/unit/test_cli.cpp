// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include "scenario.hpp"
#include "sweep.hpp"
#include "validate.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace thz;
using namespace thz::cli;
using thz::test::WithinRel;

namespace {

Scenario parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_scenario(in);
}

std::string scenario_path(const std::string& name)
{
    return std::string(THZRELAY_SCENARIO_DIR) + "/" + name;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + THZRELAY_CLI_EXE + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
#ifdef WEXITSTATUS
    return WEXITSTATUS(rc);
#else
    return rc;
#endif
}

std::filesystem::path temp_file(const std::string& name, const std::string& text)
{
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("scenario defaults")
{
    const auto sc = parse("");
    CHECK(sc.metrics == std::vector<std::string>{"op"});
    CHECK(sc.axis == Axis::gamma_bar_db);
    CHECK(sc.K == 1);
    CHECK_NOTHROW(validate_scenario(sc));
}

TEST_CASE("decibel and linear keys")
{
    const auto a = parse("[scenario]\ngamma_th_db = 3\ngamma_bar_db = 20\n[relay]\nC_db = 3\n");
    const auto b = parse("[scenario]\ngamma_th = 1.9952623149688795\ngamma_bar = 100\n[relay]\nC = 1.9952623149688795\n");
    CHECK_THAT(a.gamma_th, WithinRel(b.gamma_th, 1e-14));
    CHECK_THAT(a.gamma_bar_db, WithinRel(b.gamma_bar_db, 1e-14));
    CHECK_THAT(a.C, WithinRel(b.C, 1e-14));
    CHECK_THROWS_AS(parse("[scenario]\ngamma_th = 2\ngamma_th_db = 3\n"), ConfigError);
}

TEST_CASE("malformed scenarios are rejected")
{
    CHECK_THROWS_AS(parse("[hop1]\nalpah = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse("[hop3]\nalpha = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse("[hop1]\nalpha = two\n"), ConfigError);
    CHECK_THROWS_AS(parse("[sweep]\nmetrics = op, nonsense\n"), ConfigError);
    CHECK_THROWS_AS(parse("[sweep]\naxis = frequency\n"), ConfigError);
    CHECK_THROWS_AS(parse("[modulation]\ntype = qam\n"), ConfigError);
    CHECK_THROWS_AS(parse("[sweep]\ngrid = 10, 5\n"), ConfigError);
    CHECK_THROWS_AS(parse("[hop1]\nmu = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[relay]\nK = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("not an ini [\n"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.ini"), ConfigError);
}

TEST_CASE("sweep ranges and axes")
{
    const auto sc = parse("[sweep]\naxis = distance_m\nstart = 50\nstop = 150\nstep = 25\n");
    CHECK(sc.axis == Axis::distance_m);
    CHECK(sc.grid == std::vector<double>{50, 75, 100, 125, 150});

    const auto p = point_at(sc, 100.0);
    CHECK_THAT(p.cfg.hop1.h_l, WithinRel(hop_path_gain(sc.link, 50.0), 1e-14));
    CHECK_THAT(p.cfg.hop2.h_l, WithinRel(hop_path_gain(sc.link, 50.0), 1e-14));

    const auto g = parse("[sweep]\ngrid = 10, 30\n");
    CHECK_THAT(point_at(g, 30.0).cfg.gamma_bar1, WithinRel(1000.0, 1e-12));
    CHECK_THAT(point_at(g, 30.0).cfg.gamma_bar2, WithinRel(1000.0, 1e-12));

    const auto k = parse("[sweep]\naxis = K\ngrid = 1, 2, 3\n");
    CHECK(point_at(k, 3.0).K == 3);
}

TEST_CASE("sweep rows are ordered by grid point then metric")
{
    auto sc = parse("[sweep]\ngrid = 10, 20\nmetrics = mc_op, op, ber\n");
    const auto rows = run_sweep(sc, {3, 20000, 2});
    REQUIRE(rows.size() == 6);
    const char* order[] = {"op", "ber", "mc_op"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(i);
        CHECK(rows[i].axis == "gamma_bar_db");
        CHECK(rows[i].axis_value == (i < 3 ? 10.0 : 20.0));
        CHECK(rows[i].metric == order[i % 3]);
        CHECK(rows[i].method == method_of(rows[i].metric));
        CHECK(rows[i].status == "ok");
    }
    CHECK(rows[0].std_error == 0.0);
    CHECK(rows[2].std_error > 0.0);
    CHECK(method_of("op") == "exact");
    CHECK(method_of("op_asym") == "asymptotic");
    CHECK(method_of("acc_quad") == "quadrature");
    CHECK(method_of("mc_ser_brs") == "mc");
    CHECK_FALSE(has_failed_rows(rows));
}

TEST_CASE("degenerate parameter sets")
{
    auto sc = load_scenario(scenario_path("degenerate.ini"));
    const auto plain = run_sweep(sc, {});
    REQUIRE(plain.size() == 4);
    CHECK(plain[0].status == "ok");
    CHECK(plain[1].status == "degenerate");
    CHECK(has_failed_rows(plain));

    sc.perturb_degenerate = true;
    const auto moved = run_sweep(sc, {});
    CHECK(moved[1].status == "perturbed");
    CHECK(std::isfinite(moved[1].value));
    CHECK_FALSE(has_failed_rows(moved));

    DualHopConfig cfg{{2.0, 1.0, 2.0}, {2.0, 1.5, 2.5}, 10.0, 10.0, 1.7};
    CHECK(perturb_degenerate(cfg, "phi1, alpha1*mu1"));
    CHECK(cfg.hop1.alpha == 2.0);
    CHECK_THAT(cfg.hop1.mu, WithinRel(1.0001, 1e-12));
    CHECK_FALSE(perturb_degenerate(cfg, "nothing"));
}

TEST_CASE("number formatting and writers")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");

    const std::vector<Row> rows{{"gamma_bar_db", 10.0, "op", "exact", 0.25, 0.0, "ok"},
                                {"gamma_bar_db", 10.0, "mc_op", "mc", 0.251, 0.001, "ok"}};
    std::ostringstream csv;
    write_csv(csv, rows);
    CHECK(csv.str() == "axis,axis_value,metric,method,value,stderr,status\n"
                       "gamma_bar_db,10,op,exact,0.25,0,ok\n"
                       "gamma_bar_db,10,mc_op,mc,0.251,0.001,ok\n");
    std::ostringstream json;
    write_json(json, rows);
    CHECK(json.str().find("\"metric\": \"mc_op\"") != std::string::npos);
    CHECK(json.str().find("\"stderr\": 0.001") != std::string::npos);
}

TEST_CASE("validation report")
{
    auto sc = load_scenario(scenario_path("symmetric_op.ini"));
    const ValidateOptions opts{2024, 200000, 2};
    const auto a = run_validate(sc, opts);
    const auto b = run_validate(sc, opts);
    CHECK(a.text == b.text);
    CHECK(a.passed());
    for (const auto& c : a.checks) {
        CAPTURE(c.name, c.achieved, c.tolerance, c.note);
        CHECK(c.verdict != Verdict::fail);
    }

    auto skewed = opts;
    skewed.closed_form_scale = 1.01;
    const auto bad = run_validate(sc, skewed);
    CHECK_FALSE(bad.passed());
    CHECK(bad.text.find("FAIL") != std::string::npos);
}

TEST_CASE("command line exit codes")
{
    const std::string sym = scenario_path("symmetric_op.ini");
    const auto out = std::filesystem::temp_directory_path() / "thzrelay_cli_test.csv";
    CHECK(run_cli("sweep --config " + sym + " --samples 20000 --out " + out.string()) == 0);
    CHECK(std::filesystem::file_size(out) > 0);
    CHECK(run_cli("mc --config " + sym + " --samples 20000 --format json --out " + out.string()) == 0);

    const auto broken = temp_file("thzrelay_broken.ini", "[hop1]\nalpah = 2\n");
    CHECK(run_cli("sweep --config " + broken.string()) == 1);
    CHECK(run_cli("sweep --config /nonexistent.ini") == 1);
    CHECK(run_cli("sweep --config " + sym + " --format xml") == 1);
    CHECK(run_cli("frobnicate") == 1);

    CHECK(run_cli("sweep --config " + scenario_path("degenerate.ini")) == 2);
    CHECK(run_cli("validate --config " + sym + " --samples 200000 --inject-closed-form-scale 1.01") == 3);
    std::filesystem::remove(out);
    std::filesystem::remove(broken);
}
