#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "thinsets/cli.hpp"
#include "thinsets/config.hpp"

using namespace thinsets;

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"thinsets"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string tmp_path(const std::string& name) { return "/tmp/thinsets_test_" + name; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kNhConfig =
    R"({"h1": {"family":"pow","c":1.5}, "h2": {"family":"pow","c":1.5},
        "psi": {"kappa": 1.0, "mode": "increment"}, "sign":"minus"})";

}  // namespace

TEST_CASE("config parsing accepts the documented block") {
    auto spec = parse_set_config(
        R"({"h1": {"family":"pow","c":1.05}, "h2": {"family":"pow","c":1.05},
            "psi": {"kappa": 1.0}, "sign":"plus"})");
    CHECK(spec.sign == Sign::plus);
    CHECK(spec.phi1.base.c == 1.05);
    // defaults: h2 = h1, psi derivative, sign plus
    auto d = parse_set_config(R"({"h1": {"family":"pow_log","c":1.05}})");
    CHECK(d.phi2.base.family == Family::pow_log);
}

TEST_CASE("config parsing rejects junk") {
    CHECK_THROWS_AS(parse_set_config("{"), Error);
    CHECK_THROWS_AS(parse_set_config(R"({"h1": {"family":"nope","c":1.1}})"), Error);
    CHECK_THROWS_AS(parse_set_config(R"({"h1": {"family":"pow","c":1.1}, "zzz": 1})"), Error);
    CHECK_THROWS_AS(parse_set_config(R"({"h1": {"family":"pow","c":1.1,"x":2}})"), Error);
    CHECK_THROWS_AS(parse_set_config(R"({"h1": {"family":"pow","c":1.1},"sign":"down"})"), Error);
    CHECK_THROWS_AS(parse_set_config(R"({"h1": {"family":"pow","c":2.5}})"), Error);
    CHECK_THROWS_AS(parse_set_config(R"({"h1": {"family":"pow"}})"), Error);
}

TEST_CASE("gen emits the N_h elements") {
    auto cfg = tmp_path("nh.json");
    auto out = tmp_path("nh.csv");
    write_file(cfg, kNhConfig);
    REQUIRE(run_cli({"gen", "--config", cfg, "--N", "20", "--out", out}) == 0);
    CHECK(read_file(out) == "n\n1\n2\n5\n8\n11\n14\n18\n");
}

TEST_CASE("gen --stats emits run-stats JSON") {
    auto cfg = tmp_path("nh2.json");
    auto out = tmp_path("nh_stats.json");
    write_file(cfg, kNhConfig);
    REQUIRE(run_cli({"gen", "--config", cfg, "--N", "20", "--out", out, "--stats"}) == 0);
    auto text = read_file(out);
    CHECK(text.find("\"max_run\":2") != std::string::npos);
    CHECK(text.find("\"count\":7") != std::string::npos);
}

TEST_CASE("bad config exits with code 2") {
    auto cfg = tmp_path("bad.json");
    auto out = tmp_path("bad.csv");
    write_file(cfg, R"({"h1": {"family":"wiggle","c":1.5}})");
    CHECK(run_cli({"gen", "--config", cfg, "--N", "20", "--out", out}) == 2);
    write_file(cfg, R"({"h1": {"family":"pow","c":2.6}})");
    CHECK(run_cli({"gen", "--config", cfg, "--N", "20", "--out", out}) == 2);
    CHECK(run_cli({"gen", "--config", tmp_path("missing.json"), "--N", "5", "--out", out}) == 4);
    CHECK(run_cli({"nonsense"}) == 2);
}

TEST_CASE("gen output is byte-identical across thread counts") {
    auto cfg = tmp_path("det.json");
    write_file(cfg, R"({"h1": {"family":"pow","c":1.05}})");
    auto out1 = tmp_path("det1.csv"), out4 = tmp_path("det4.csv");
    REQUIRE(run_cli({"gen", "--config", cfg, "--N", "100000", "--out", out1, "--threads", "1"}) == 0);
    REQUIRE(run_cli({"gen", "--config", cfg, "--N", "100000", "--out", out4, "--threads", "4"}) == 0);
    CHECK(read_file(out1) == read_file(out4));
}

TEST_CASE("expsum scan writes the declared columns") {
    auto cfg = tmp_path("scan.json");
    auto out = tmp_path("scan.csv");
    write_file(cfg, R"({"h1": {"family":"pow","c":1.05}})");
    auto svg = tmp_path("scan.svg");
    REQUIRE(run_cli({"expsum", "scan", "--config", cfg, "--nmin", "256", "--nmax", "4096",
                     "--farey", "6", "--out", out, "--svg", svg}) == 0);
    auto text = read_file(out);
    CHECK(text.rfind("N,xi,abs_error,normalized_error\n", 0) == 0);
    CHECK(text.find("\n256,0,") != std::string::npos);
    CHECK(read_file(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("kernels autocorr writes x,kk,g,e") {
    auto cfg = tmp_path("ac.json");
    auto out = tmp_path("ac.csv");
    write_file(cfg, R"({"h1": {"family":"pow","c":1.02}})");
    REQUIRE(run_cli({"kernels", "autocorr", "--config", cfg, "--N", "256", "--out", out}) == 0);
    CHECK(read_file(out).rfind("x,kk,g,e\n", 0) == 0);
}

TEST_CASE("ops maximal round-trips a signal file") {
    auto cfg = tmp_path("ops.json");
    auto fin = tmp_path("f.csv");
    auto out = tmp_path("m.csv");
    write_file(cfg, R"({"h1": {"family":"pow","c":1.25}})");
    write_file(fin, "x,value\n0,1\n");
    REQUIRE(run_cli({"ops", "maximal", "--config", cfg, "--f", fin, "--plan", "dyadic", "--op",
                     "M", "--horizon", "4096", "--out", out}) == 0);
    auto text = read_file(out);
    CHECK(text.rfind("x,maximal\n", 0) == 0);
    CHECK(text.find("\n1,") != std::string::npos);  // 1 in B, value 1/count(t*)
}

TEST_CASE("ops oscillation honors the cut list") {
    auto cfg = tmp_path("osc.json");
    auto fin = tmp_path("fo.csv");
    auto out = tmp_path("o.csv");
    write_file(cfg, R"({"h1": {"family":"pow","c":1.25}})");
    write_file(fin, "x,value\n0,1\n3,-2\n");
    REQUIRE(run_cli({"ops", "oscillation", "--config", cfg, "--f", fin, "--cuts", "1,16,256",
                     "--horizon", "4096", "--out", out}) == 0);
    CHECK(read_file(out).rfind("x,osc2\n", 0) == 0);
    CHECK(run_cli({"ops", "oscillation", "--config", cfg, "--f", fin, "--cuts", "9,5",
                   "--horizon", "4096", "--out", out}) == 2);
}

TEST_CASE("weaktype alias matches czd weaktype") {
    auto cfg = tmp_path("wt.json");
    write_file(cfg, R"({"h1": {"family":"pow","c":1.02}})");
    auto o1 = tmp_path("wt1.csv"), o2 = tmp_path("wt2.csv");
    REQUIRE(run_cli({"czd", "weaktype", "--config", cfg, "--trials", "2", "--horizon", "4096",
                     "--deltas", "20", "--out", o1, "--seed", "7"}) == 0);
    REQUIRE(run_cli({"weaktype", "--config", cfg, "--trials", "2", "--horizon", "4096",
                     "--deltas", "20", "--out", o2, "--seed", "7"}) == 0);
    CHECK(read_file(o1) == read_file(o2));
}

TEST_CASE("ergodic trace reports a small final deviation") {
    auto cfg = tmp_path("erg.json");
    auto out = tmp_path("trace.csv");
    write_file(cfg, R"({"h1": {"family":"pow","c":1.05}})");
    REQUIRE(run_cli({"ergodic", "trace", "--config", cfg, "--theta", "sqrt2m1", "--f",
                     "indicator:0,0.5", "--N", "65536", "--x0", "0.2", "--out", out}) == 0);
    auto text = read_file(out);
    CHECK(text.rfind("N,average,deviation\n", 0) == 0);
    CHECK(text.find("\n65536,") != std::string::npos);
}

TEST_CASE("suite --quick is byte-deterministic across invocations") {
    auto o1 = tmp_path("suite1.json"), o2 = tmp_path("suite2.json");
    REQUIRE(run_cli({"suite", "--quick", "--seed", "99", "--out", o1}) == 0);
    REQUIRE(run_cli({"suite", "--quick", "--seed", "99", "--out", o2}) == 0);
    auto text = read_file(o1);
    CHECK(text == read_file(o2));
    CHECK(text.find("\"criterion_id\":\"01_dual_membership\"") != std::string::npos);
    CHECK(text.find("\"criterion_id\":\"13_determinism\"") != std::string::npos);
    CHECK(text.find("\"all_pass\":true") != std::string::npos);
}

TEST_CASE("czd decompose emits the fixture cube") {
    auto fin = tmp_path("delta.csv");
    auto out = tmp_path("cubes.csv");
    write_file(fin, "x,value\n0,1\n");
    REQUIRE(run_cli({"czd", "decompose", "--f", fin, "--alpha", "0.25", "--out", out}) == 0);
    CHECK(read_file(out) == "s,j,lo,hi,mean\n1,0,0,1,0.5\n");
}
