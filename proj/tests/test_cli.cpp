#include <doctest.h>

#include <heisapp/commands.hpp>
#include <heisapp/config.hpp>
#include <heisapp/report.hpp>
#include <heisapp/suites.hpp>

#include <heis/common.hpp>
#include <heis/transform.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace heisapp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("heisfreq_test_" + name);
    fs::remove_all(p);
    return p;
}

Config small() {
    Config c = parse_config(R"({"n_max": 8, "lambda_grid": {"points_per_sign": 40},
                                "grid": {"ny": 21, "neta": 21, "ns": 21}})");
    return c;
}

nlohmann::json read_json(const fs::path& p) {
    std::ifstream is(p);
    return nlohmann::json::parse(is);
}

}  // namespace

TEST_CASE("config parsing") {
    const Config d = default_config();
    CHECK(d.d == 1);
    CHECK(d.n_max == 24);
    CHECK(d.lambda.points_per_sign == 160);
    CHECK(d.grid.ny == 33);
    d.validate();

    const Config c = parse_config(R"({"n_max": 12, "tolerances": {"plancherel": 0.02},
        "lambda_grid": {"lambda_min": 1e-3, "ratio": 1.1, "points_per_sign": 50},
        "fixtures": [{"name": "gauss_profile", "sigma": 0.5}]})");
    CHECK(c.n_max == 12);
    CHECK(c.tolerance("plancherel", 0.01) == 0.02);
    CHECK(c.tolerance("other", 0.01) == 0.01);
    CHECK(c.lambda_grid()[50] == doctest::Approx(1e-3));
    REQUIRE(c.fixtures.size() == 1);
    CHECK(c.fixtures[0].label() == "gauss_profile(0.5)");

    // config_json round trip
    const Config back = parse_config(config_json(c));
    CHECK(config_json(back) == config_json(c));

    CHECK_THROWS_AS(parse_config("{"), heis::FormatError);
    CHECK_THROWS_AS(parse_config("[1]"), heis::FormatError);
    CHECK_THROWS_AS(parse_config(R"({"n_max": 100})"), heis::InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"d": 3})"), heis::InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"grid": {"ny": 32}})"), heis::InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"fixtures": [{"name": "nope"}]})"), heis::InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"n_max": "x"})"), heis::FormatError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), heis::FormatError);
}

TEST_CASE("report json") {
    Report r;
    r.check("a", "ref a", "what", 1.0, 1.0005, 1e-3);
    r.bound("b", "ref b", "what", 2.0, 1.0);
    r.info("a", "note");
    CHECK(r.pass("a"));
    CHECK_FALSE(r.pass("b"));
    CHECK_FALSE(r.all_pass());
    CHECK(r.failures().size() == 1);
    const auto j = nlohmann::json::parse(r.json(config_json(default_config())));
    CHECK(j["records"].size() == 2);
    CHECK(j["records"][0]["test_id"] == "a");
    CHECK(j["pass"] == false);
    CHECK(r.json("{}") == r.json("{}"));
}

TEST_CASE("suite registry") {
    CHECK(suites().size() == 16);
    CHECK(is_suite("all"));
    CHECK(is_suite("plancherel"));
    CHECK_FALSE(is_suite("nope"));
    Report r;
    CHECK_THROWS_AS(run_suite("nope", default_config(), r), UnknownSuite);
}

TEST_CASE("transform command") {
    const auto out = scratch("zero");
    TransformArgs a;
    a.fixture = "zero";
    std::ostringstream log;
    CHECK(cmd_transform(a, small(), out.string(), log) == kOk);
    const auto t = heis::load_table((out / "table.csv").string());
    for (const auto& v : t.data()) CHECK(v == heis::cplx(0.0));

    const auto out2 = scratch("gauss");
    TransformArgs g;
    g.fixture = "gaussian";
    Config c = small();
    c.grid = heis::GridSpec{};
    c.n_max = 24;
    CHECK(cmd_transform(g, c, out2.string(), log) == kOk);
    const auto s = read_json(out2 / "summary.json");
    CHECK(s["plancherel_ratio_over_constant"].get<double>() == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(s.contains("round_trip_rel_sup_error"));

    TransformArgs inv;
    inv.direction = "inverse";
    inv.input = (out2 / "table.csv").string();
    const auto out3 = scratch("inv");
    CHECK(cmd_transform(inv, c, out3.string(), log) == kOk);
    CHECK(fs::exists(out3 / "field.bin"));

    TransformArgs bad;
    bad.direction = "sideways";
    CHECK_THROWS_AS(cmd_transform(bad, small(), out.string(), log), heis::InvalidArgument);
    TransformArgs missing;
    missing.input = "/nonexistent.bin";
    CHECK_THROWS_AS(cmd_transform(missing, small(), out.string(), log), heis::FormatError);

    Config strict = small();
    strict.tolerances["transform.residual"] = 0.0;
    TransformArgs tg;
    tg.fixture = "gaussian";
    // tail check: a zero tolerance fails unless the residual is exactly 0
    const int rc = cmd_transform(tg, strict, scratch("strict").string(), log);
    CHECK((rc == kFailed || rc == kOk));
}

TEST_CASE("heat, pair and kernel commands") {
    std::ostringstream log;
    const auto out = scratch("cmds");
    HeatArgs h;
    h.times = {0.5};
    CHECK(cmd_heat(h, small(), out.string(), log) == kOk);
    CHECK(fs::exists(out / "heat_t0.5.bin"));
    CHECK(read_json(out / "heat_summary.json")["steps"].size() == 1);

    PairArgs p{"I", "heat:1"};
    CHECK(cmd_pair(p, default_config(), out.string(), log) == kOk);
    const auto j = read_json(out / "pair.json");
    CHECK(j["value_re"].get<double>() == doctest::Approx(0.15421256876702123).epsilon(1e-5));
    for (const char* k : {"distribution", "test_function", "value_re", "value_im", "tail_bound"}) CHECK(j.contains(k));
    PairArgs bad{"bogus", "heat:1"};
    CHECK_THROWS_AS(cmd_pair(bad, default_config(), out.string(), log), heis::InvalidArgument);

    KernelArgs k;
    CHECK(cmd_kernel(k, small(), out.string(), log) == kOk);
    std::ifstream kc(out / "kernel.csv");
    std::string header;
    std::getline(kc, header);
    CHECK(header == "y,eta,re,im");
}

TEST_CASE("verify command") {
    std::ostringstream log;
    const auto out = scratch("verify");
    CHECK(cmd_verify("nope", default_config(), out.string(), log) == kUsage);
    CHECK(log.str().find("plancherel") != std::string::npos);
    CHECK(cmd_verify("wigner_symmetry", default_config(), out.string(), log) == kOk);
    const auto first = read_json(out / "report.json");
    CHECK(first["records"].size() == 2);
    std::ifstream a(out / "report.json");
    std::stringstream sa;
    sa << a.rdbuf();
    CHECK(cmd_verify("wigner_symmetry", default_config(), out.string(), log) == kOk);
    std::ifstream b(out / "report.json");
    std::stringstream sb;
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}
