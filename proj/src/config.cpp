#include "sumlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <sstream>

namespace sumlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = first + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw ConfigError("bad value for " + key + ": '" + value + "'");
  return out;
}

}  // namespace

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") {
    cfg.n = parse_number<int>(key, value);
  } else if (key == "r") {
    cfg.r = parse_number<double>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "nmax") {
    cfg.N_max = parse_number<std::int64_t>(key, value);
  } else if (key == "grid") {
    cfg.grid_points = parse_number<std::int64_t>(key, value);
  } else if (key == "trunc") {
    cfg.trunc = parse_number<int>(key, value);
  } else if (key == "stages") {
    cfg.stages = parse_number<int>(key, value);
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("out must not be empty");
    cfg.output_dir = value;
  } else if (key.find('.') != std::string::npos) {
    cfg.overrides[key] = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void parse_config(std::istream& in, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    assign(cfg, key, trim(line.substr(eq + 1)));
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  parse_config(in, cfg);
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 2 || cfg.n > 4) throw ConfigError("n must lie in 2..4");
  if (!(cfg.r > 0.0 && cfg.r <= std::numbers::pi)) throw ConfigError("r must lie in (0, pi]");
  if (cfg.N_max < 1 || cfg.N_max > (std::int64_t{1} << 16)) throw ConfigError("nmax must lie in 1..65536");
  if (cfg.grid_points < 1 || cfg.grid_points > 100000) throw ConfigError("grid must lie in 1..100000");
  if (cfg.trunc < 1) throw ConfigError("trunc must be at least 1");
  if (cfg.stages < 1 || cfg.stages > 4) throw ConfigError("stages must lie in 1..4");
}

std::string canonical(const RunConfig& cfg) {
  std::map<std::string, std::string> kv = cfg.overrides;
  std::ostringstream r;
  r << std::setprecision(17) << cfg.r;
  kv["n"] = std::to_string(cfg.n);
  kv["r"] = r.str();
  kv["seed"] = std::to_string(cfg.seed);
  kv["nmax"] = std::to_string(cfg.N_max);
  kv["grid"] = std::to_string(cfg.grid_points);
  kv["trunc"] = std::to_string(cfg.trunc);
  kv["stages"] = std::to_string(cfg.stages);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string meta_line(const RunConfig& cfg, const std::string& command) {
  std::ostringstream out;
  out << "# sumlab=" << kVersion << " config=" << std::hex << std::setw(16) << std::setfill('0')
      << config_hash(cfg) << std::dec << " seed=" << cfg.seed << " command=" << command;
  return out.str();
}

std::string override_or(const RunConfig& cfg, const std::string& key, const std::string& fallback) {
  const auto it = cfg.overrides.find(key);
  return it == cfg.overrides.end() ? fallback : it->second;
}

}  // namespace sumlab::cli
