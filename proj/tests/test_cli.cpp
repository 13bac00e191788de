#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sumlab/commands.hpp"
#include "sumlab/config.hpp"

using namespace sumlab::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("sumlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_quiet(const std::string& command, const RunConfig& cfg) {
  std::ostringstream log;
  return run(command, cfg, log);
}

}  // namespace

TEST_CASE("config parsing") {
  RunConfig cfg;
  std::istringstream in("# comment\n n = 3\nr=0.25   # trailing\n\nseed = 42\nnmax=512\nscan.extra = x\n");
  parse_config(in, cfg);
  CHECK(cfg.n == 3);
  CHECK(cfg.r == 0.25);
  CHECK(cfg.seed == 42);
  CHECK(cfg.N_max == 512);
  CHECK(cfg.overrides.at("scan.extra") == "x");
  CHECK(override_or(cfg, "scan.missing", "d") == "d");

  RunConfig bad;
  std::istringstream unknown("colour = red\n");
  CHECK_THROWS_AS(parse_config(unknown, bad), ConfigError);
  std::istringstream junk("n = three\n");
  CHECK_THROWS_AS(parse_config(junk, bad), ConfigError);
  std::istringstream noeq("n 3\n");
  CHECK_THROWS_AS(parse_config(noeq, bad), ConfigError);
}

TEST_CASE("validation caps") {
  RunConfig ok;
  CHECK_NOTHROW(validate(ok));
  auto with = [](auto mutate) {
    RunConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(validate(with([](RunConfig& c) { c.n = 5; })), ConfigError);
  CHECK_THROWS_AS(validate(with([](RunConfig& c) { c.n = 1; })), ConfigError);
  CHECK_THROWS_AS(validate(with([](RunConfig& c) { c.r = 0.0; })), ConfigError);
  CHECK_THROWS_AS(validate(with([](RunConfig& c) { c.r = 3.2; })), ConfigError);
  CHECK_THROWS_AS(validate(with([](RunConfig& c) { c.N_max = 65537; })), ConfigError);
  CHECK_THROWS_AS(validate(with([](RunConfig& c) { c.grid_points = 100001; })), ConfigError);
  CHECK_THROWS_AS(validate(with([](RunConfig& c) { c.stages = 0; })), ConfigError);
  CHECK_NOTHROW(validate(with([](RunConfig& c) { c.r = std::numbers::pi; })));
}

TEST_CASE("config hash") {
  RunConfig a, b;
  b.output_dir = "/somewhere/else";
  CHECK(config_hash(a) == config_hash(b));
  b.seed = 2;
  CHECK(config_hash(a) != config_hash(b));
  const std::string meta = meta_line(a, "scan");
  CHECK(meta.rfind("# sumlab=0.1.0 config=", 0) == 0);
  CHECK(meta.find(" seed=1 command=scan") != std::string::npos);
  CHECK(meta.size() == std::string("# sumlab=0.1.0 config=").size() + 16 + std::string(" seed=1 command=scan").size());
}

TEST_CASE("commands write artifacts with a metadata line") {
  const auto dir = scratch("artifacts");
  RunConfig cfg;
  cfg.output_dir = dir.string();
  cfg.N_max = 64;
  cfg.grid_points = 20;
  cfg.r = 0.5;
  for (const char* cmd : {"kernel", "pack", "scan", "summability"}) {
    CHECK(run_quiet(cmd, cfg) == kOk);
  }
  for (const char* file : {"kernel.csv", "pack.csv", "scan.csv", "summability.csv"}) {
    const auto text = slurp(dir / file);
    REQUIRE(!text.empty());
    CHECK(text.front() == '#');
    CHECK(text.find("config=") != std::string::npos);
    CHECK(text.find("seed=1") != std::string::npos);
  }
  CHECK_THROWS_AS(run_quiet("dance", cfg), ConfigError);
  cfg.n = 9;
  CHECK_THROWS_AS(run_quiet("scan", cfg), ConfigError);
}

TEST_CASE("pack with r = pi has at most two rows") {
  const auto dir = scratch("pack_pi");
  RunConfig cfg;
  cfg.output_dir = dir.string();
  cfg.r = std::numbers::pi;
  REQUIRE(run_quiet("pack", cfg) == kOk);
  std::istringstream in(slurp(dir / "pack.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() != '#') ++rows;
  }
  CHECK(rows >= 1);
  CHECK(rows <= 2);
}

TEST_CASE("runs are byte-identical and independent of the thread count") {
  RunConfig cfg;
  cfg.N_max = 256;
  cfg.grid_points = 300;
  cfg.r = 0.4;
  std::string first;
  for (const char* threads : {"1", "3", "1"}) {
    setenv("SUMLAB_THREADS", threads, 1);
    const auto dir = scratch(std::string("det_") + threads);
    cfg.output_dir = dir.string();
    REQUIRE(run_quiet("scan", cfg) == kOk);
    REQUIRE(run_quiet("kernel", cfg) == kOk);
    const auto text = slurp(dir / "scan.csv") + slurp(dir / "kernel.csv");
    if (first.empty()) {
      first = text;
    } else {
      CHECK(text == first);
    }
  }
  unsetenv("SUMLAB_THREADS");
}

TEST_CASE("stage command writes the stage JSON") {
  const auto dir = scratch("stage");
  RunConfig cfg;
  cfg.output_dir = dir.string();
  cfg.stages = 1;
  cfg.grid_points = 100;
  cfg.N_max = 256;
  CHECK(run_quiet("stage", cfg) == kOk);
  CHECK(fs::exists(dir / "stage.json"));
}
