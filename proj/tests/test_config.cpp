#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hp/asymptotics.hpp"
#include "hp/cli.hpp"
#include "hp/config.hpp"
#include "hp/errors.hpp"
#include "hp/report.hpp"

using hp::real;
using hp::run_config;

namespace {

const char* kChain2 = R"({
  "precision_bits": 256,
  "measures": [
    {"interval": [-1, 1], "weight": {"type": "chebyshev"}},
    {"interval": [2, 3], "weight": {"type": "legendre"}}
  ],
  "degree_budget": 12,
  "index": [2, 1],
  "probes": [4, [2.5, 3.0], "5.25"],
  "ladder": {"from": 1, "to": 3},
  "jobs": 2
})";

std::string temp_path(const char* tag) {
  static int counter = 0;
  return std::string("cfg_") + tag + "_" + std::to_string(++counter) +
         std::to_string(static_cast<long>(getpid())) + ".json";
}

std::string write_temp(const char* tag, const std::string& text) {
  std::string path = temp_path(tag);
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

int run_cli(std::vector<std::string> args) {
  std::vector<char*> argv;
  args.insert(args.begin(), "hp");
  for (auto& a : args) argv.push_back(a.data());
  return hp::cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config parsing covers the documented field forms") {
  run_config cfg = hp::parse_config(kChain2);
  CHECK(cfg.policy.bits == 256);
  CHECK(cfg.gen.m() == 2);
  CHECK(cfg.gen.sigma[0].alpha == real(-0.5));
  CHECK(cfg.gen.sigma[1].alpha == real(0L));
  CHECK(cfg.degree_budget == 12);
  CHECK(cfg.index == std::vector<long>{2, 1});
  REQUIRE(cfg.probes.size() == 3);
  CHECK(cfg.probes[0].re == real(4L));
  CHECK(cfg.probes[1].im == real(3L));
  CHECK(cfg.probes[2].re == real(5.25));
  CHECK(cfg.ladder_from == 1);
  CHECK(cfg.ladder_to == 3);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.raw == kChain2);

  // precision override wins over the file value
  run_config wide = hp::parse_config(kChain2, 320);
  CHECK(wide.policy.bits == 320);

  // string-valued constants parse at full precision, not double
  run_config sharp = hp::parse_config(R"({
    "measures": [{"interval": ["-0.1", "0.1"]}]
  })");
  hp::precision_guard g(288);
  real tenth = real(1L) / 10L;
  CHECK(abs(sharp.gen.sigma[0].support.b - tenth) <= real(1L).mul_2si(-280));
}

TEST_CASE("config rejection paths") {
  CHECK_THROWS_AS(hp::parse_config("not json"), hp::validation_error);
  CHECK_THROWS_AS(hp::parse_config("[1,2]"), hp::validation_error);
  CHECK_THROWS_AS(hp::parse_config(R"({"measures": []})"),
                  hp::validation_error);
  CHECK_THROWS_AS(
      hp::parse_config(R"({"measures": [{"interval": [1, -1]}]})"),
      hp::validation_error);
  CHECK_THROWS_AS(hp::parse_config(R"({
    "measures": [{"interval": [-1, 1]}, {"interval": [0, 2]}]
  })"),
                  hp::validation_error);
  CHECK_THROWS_AS(hp::parse_config(R"({
    "measures": [{"interval": [-1, 1],
                  "weight": {"type": "laguerre"}}]
  })"),
                  hp::validation_error);
  CHECK_THROWS_AS(hp::parse_config(R"({
    "measures": [{"interval": [-1, 1], "sign": 2}]
  })"),
                  hp::validation_error);
  CHECK_THROWS_AS(hp::parse_config(R"({
    "measures": [{"interval": [-1, 1]}], "jobs": 0
  })"),
                  hp::validation_error);
  CHECK_THROWS_AS(hp::parse_config(R"({
    "measures": [{"interval": [-1, 1]}], "probes": [[1]]
  })"),
                  hp::validation_error);
  CHECK_THROWS_AS(hp::load_config("definitely_missing.json"),
                  hp::validation_error);
}

TEST_CASE("environment precision variable") {
  unsetenv("HP_PRECISION_BITS");
  CHECK(hp::env_precision_bits() == 0);
  setenv("HP_PRECISION_BITS", "192", 1);
  CHECK(hp::env_precision_bits() == 192);
  setenv("HP_PRECISION_BITS", "banana", 1);
  CHECK_THROWS_AS(hp::env_precision_bits(), hp::validation_error);
  setenv("HP_PRECISION_BITS", "-5", 1);
  CHECK_THROWS_AS(hp::env_precision_bits(), hp::validation_error);
  unsetenv("HP_PRECISION_BITS");
}

TEST_CASE("budget rule") {
  CHECK(hp::needed_budget(hp::multi_index{{3}}) == 10);
  CHECK(hp::needed_budget(hp::multi_index{{2, 5, 1}}) == 17);
}

TEST_CASE("hash and serialization are deterministic") {
  CHECK(hp::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(hp::fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(hp::fnv1a_hex("ab") != hp::fnv1a_hex("ba"));
  CHECK(hp::fnv1a_hex(kChain2).size() == 16);

  hp::precision_guard g(256);
  run_config cfg = hp::parse_config(kChain2);
  hp::moment_table table =
      hp::nikishin_moments(cfg.gen, cfg.degree_budget, cfg.policy);
  hp::report_header hdr{hp::fnv1a_hex(cfg.raw), cfg.policy.bits,
                        {"table: built"}};
  std::string j1 = hp::to_json(hdr, table);
  std::string j2 = hp::to_json(hdr, table);
  CHECK(j1 == j2);

  auto doc = nlohmann::json::parse(j1);
  CHECK(doc["header"]["config"] == hdr.config_hash);
  CHECK(doc["header"]["precision_bits"] == 256);
  CHECK(doc["m"] == 2);
  CHECK(doc["entries"].contains("1,2"));
  CHECK(doc["entries"].contains("2,1"));
  // numeric payloads are decimal strings that reparse to the same value once
  // read back at the precision the table computed with
  std::string c0 = doc["entries"]["1,1"][0].get<std::string>();
  const real& want = table.c(1, 1)[0];
  hp::precision_guard g2(want.precision());
  CHECK(real(c0) == want);
}

TEST_CASE("solution and zero reports carry their structure") {
  hp::precision_guard g(256);
  run_config cfg = hp::parse_config(kChain2);
  hp::moment_table table =
      hp::nikishin_moments(cfg.gen, cfg.degree_budget, cfg.policy);
  hp::multi_index n{{2, 1}};
  hp::hp_solution sol = hp::solve_hp(table, n, cfg.policy);
  hp::residual_report resid = hp::residual_orders(sol, table);
  hp::report_header hdr{"feedfacefeedface", 256, {}};

  auto sj = nlohmann::json::parse(hp::to_json(hdr, sol, &resid));
  CHECK(sj["index"] == nlohmann::json::array({2, 1}));
  CHECK(sj["a"].size() == 3);
  CHECK(sj["residual_orders"].size() == 2);
  CHECK(sj["residuals"]["order_exact"][0].get<bool>());

  // the level-2 factor for index (2,1) carries 2+1 = 3 zeros, all in (2,3)
  hp::monic_from_roots mf = hp::form_zeros(sol, table, 2);
  auto zj = nlohmann::json::parse(hp::to_json(hdr, mf, n.n, 2));
  CHECK(zj["level"] == 2);
  CHECK(zj["roots"].size() == 3);
  CHECK(zj["enclosures"].size() == 3);
  for (const auto& r : zj["roots"]) {
    real root(r.get<std::string>());
    CHECK(root > real(2L));
    CHECK(root < real(3L));
  }
}

TEST_CASE("experiment artifacts: json, csv, and the plot script") {
  hp::precision_policy pol;
  hp::system_context ctx(hp::parse_config(kChain2).gen, 14, pol);
  auto ladder = hp::diagonal_ladder(2, 1, 3);
  std::vector<hp::complex> probes{hp::complex(real(5L))};
  hp::experiment_report rep = hp::run_markov_convergence(ctx, ladder, probes);
  hp::report_header hdr{"0123456789abcdef", 256, {"solve: ladder of 3"}};

  auto ej = nlohmann::json::parse(hp::to_json(hdr, rep));
  CHECK(ej["experiment"] == "markov");
  CHECK(ej["ladder"].size() == 3);
  CHECK(ej["series"].size() == 2);

  std::string csv = hp::to_csv(hdr, rep);
  CHECK(csv.find("# config: ") != std::string::npos);
  CHECK(csv.find("experiment,index,series") != std::string::npos);
  size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  // comment block + column header + one line per row
  CHECK(lines >= rep.rows.size() + 2);

  std::string plot = hp::plot_script(rep);
  CHECK(plot.find("plot") != std::string::npos);
  CHECK(plot.find("logscale") != std::string::npos);
}

TEST_CASE("command line drives the full pipeline") {
  std::string cfg = write_temp("cli", kChain2);

  SUBCASE("solve writes a parseable summary and honors the hash") {
    std::string out = temp_path("solve_out");
    CHECK(run_cli({"solve", "--config", cfg, "--index", "1,1", "--out",
                   out}) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    auto doc = nlohmann::json::parse(in);
    CHECK(doc["index"] == nlohmann::json::array({1, 1}));
    CHECK(doc["header"]["config"] == hp::fnv1a_hex(kChain2));
    CHECK(doc["residuals"]["order_exact"].size() == 2);
    std::remove(out.c_str());
  }

  SUBCASE("zeros defaults to the top level") {
    std::string out = temp_path("zeros_out");
    CHECK(run_cli({"zeros", "--config", cfg, "--index", "2,1", "--out",
                   out}) == 0);
    std::ifstream in(out);
    auto doc = nlohmann::json::parse(in);
    CHECK(doc["level"] == 2);
    CHECK(doc["roots"].size() == 3);
    std::remove(out.c_str());
  }

  SUBCASE("converge writes csv rows") {
    std::string out = temp_path("conv_csv");
    // the config's degree budget of 12 covers diagonal indices up to (2,2)
    CHECK(run_cli({"converge", "--config", cfg, "--from", "1", "--to", "2",
                   "--out", out}) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(text.find("markov") != std::string::npos);
    std::remove(out.c_str());
  }

  SUBCASE("bad invocations exit 2") {
    CHECK(run_cli({"solve", "--config", "missing.json", "--index", "1"}) == 2);
    CHECK(run_cli({"solve", "--config", cfg, "--index", "1"}) == 2);
    CHECK(run_cli({"nonsense", "--config", cfg}) == 2);
    CHECK(run_cli({"ratio", "--config", cfg, "--pole-sheet", "7"}) == 2);
  }

  SUBCASE("environment precision reaches the artifacts") {
    std::string out = temp_path("env_out");
    setenv("HP_PRECISION_BITS", "128", 1);
    CHECK(run_cli({"moments", "--config", cfg, "--budget", "4", "--out",
                   out}) == 0);
    unsetenv("HP_PRECISION_BITS");
    std::ifstream in(out);
    auto doc = nlohmann::json::parse(in);
    CHECK(doc["header"]["precision_bits"] == 128);
    std::remove(out.c_str());
  }

  std::remove(cfg.c_str());
}
