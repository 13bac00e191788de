#include "sumlab/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "sumlab/divergence.hpp"
#include "sumlab/kernels.hpp"
#include "sumlab/specfun.hpp"
#include "sumlab/summation.hpp"
#include "sumlab/verify.hpp"

namespace sumlab::cli {

namespace {

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw ConfigError("bad list entry for " + key + ": '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

std::ofstream open_artifact(const RunConfig& cfg, const std::string& name, std::ostream& log) {
  std::filesystem::create_directories(cfg.output_dir);
  const auto path = std::filesystem::path(cfg.output_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  log << "writing " << path.string() << '\n';
  return out;
}

int run_verify(const RunConfig& cfg, std::ostream& log) {
  std::vector<int> ids;
  if (cfg.overrides.count("verify.criteria")) {
    ids = parse_list<int>("verify.criteria", cfg.overrides.at("verify.criteria"));
  } else {
    for (int i = 1; i <= verify::kCriteria; ++i) ids.push_back(i);
  }
  bool all = true;
  for (int id : ids) {
    if (id < 1 || id > verify::kCriteria) throw ConfigError("verify.criteria entries must lie in 1..10");
    const auto res = verify::run_criterion(id, cfg.seed);
    log << verify::summary_line(res) << '\n' << verify::detail_lines(res) << std::flush;
    all = all && res.pass();
  }
  return all ? kOk : kInvariantFailure;
}

int run_kernel(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::int64_t> Ns;
  if (cfg.overrides.count("kernel.N")) {
    Ns = parse_list<std::int64_t>("kernel.N", cfg.overrides.at("kernel.N"));
  } else {
    for (std::int64_t N = 1; N <= cfg.N_max; N *= 2) Ns.push_back(N);
  }
  for (auto N : Ns) {
    if (N < 1 || N > cfg.N_max) throw ConfigError("kernel.N entries must lie in 1..nmax");
  }
  std::vector<double> thetas;
  if (cfg.overrides.count("kernel.theta")) {
    thetas = parse_list<double>("kernel.theta", cfg.overrides.at("kernel.theta"));
  } else {
    for (int i = 1; i <= 24; ++i) thetas.push_back(std::numbers::pi * i / 25.0);
  }
  for (double t : thetas) {
    if (!(t >= 0.0 && t <= std::numbers::pi)) throw ConfigError("kernel.theta entries must lie in [0, pi]");
  }
  auto out = open_artifact(cfg, "kernel.csv", log);
  kernels::write_kernel_csv(out, cfg.n, Ns, thetas, cfg.trunc, meta_line(cfg, "kernel"));
  return kOk;
}

int run_pack(const RunConfig& cfg, std::ostream& log) {
  const auto mu = divergence::witness_measure(cfg.n, cfg.r, cfg.seed);
  const auto cert = sphere::certify_packing(mu, mu.separation.value_or(cfg.r));
  log << "m=" << mu.size() << " separated=" << cert.separated << " maximal_on_grid=" << cert.maximal_on_grid
      << " cardinality_constant=" << cert.cardinality_constant << '\n';
  auto out = open_artifact(cfg, "pack.csv", log);
  std::ostringstream extra;
  extra << "sumlab=" << kVersion << " config=" << std::hex << std::setw(16) << std::setfill('0') << config_hash(cfg)
        << " command=pack";
  sphere::write_packing_csv(out, mu, extra.str());
  return kOk;
}

int run_scan(const RunConfig& cfg, std::ostream& log) {
  const auto mu = divergence::witness_measure(cfg.n, cfg.r, cfg.seed);
  const auto grid = sphere::low_discrepancy_grid(cfg.n, static_cast<std::size_t>(cfg.grid_points), cfg.seed);
  const auto rows = divergence::scan_grid(mu, grid, cfg.N_max);
  std::vector<double> sups;
  for (const auto& row : rows) sups.push_back(row.sup_abs);
  const auto q = divergence::quantiles(sups);
  log << "m=" << mu.size() << " median sup=" << q.median << " max sup=" << q.max << '\n';
  auto out = open_artifact(cfg, "scan.csv", log);
  divergence::write_scan_csv(out, rows, mu, meta_line(cfg, "scan"));
  return kOk;
}

int run_summability(const RunConfig& cfg, std::ostream& log) {
  std::vector<double> a;
  if (cfg.overrides.count("summability.coeffs")) {
    a = parse_list<double>("summability.coeffs", cfg.overrides.at("summability.coeffs"));
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    a.resize(32);
    for (double& v : a) v = gauss(rng);
  }
  const double delta = specfun::critical_index(cfg.n);
  const double c = delta;
  const std::int64_t top = std::min<std::int64_t>(cfg.N_max, 4 * static_cast<std::int64_t>(a.size()));
  std::vector<summation::SummationSpec> specs;
  for (std::int64_t N = 0; N <= top; ++N) specs.push_back(summation::SummationSpec::cesaro(delta, N));
  for (std::int64_t i = 1; i <= 2 * top; ++i) {
    const double R = 0.5 * static_cast<double>(i);
    specs.push_back(summation::SummationSpec::riesz(delta, R));
    specs.push_back(summation::SummationSpec::shifted_riesz(delta, c, R));
    specs.push_back(summation::SummationSpec::quadratic_riesz(delta, c, R));
    specs.push_back(summation::SummationSpec::bochner_riesz(delta, R, cfg.n));
  }
  const auto cmp = summation::compare_methods(a, delta, static_cast<double>(top));
  log << "sup cesaro=" << cmp.sup_cesaro << " sup riesz=" << cmp.sup_riesz << " sup proj=" << cmp.sup_proj << '\n';
  auto out = open_artifact(cfg, "summability.csv", log);
  summation::write_summability_csv(out, specs, a, meta_line(cfg, "summability"));
  return kOk;
}

int run_stage(const RunConfig& cfg, std::ostream& log) {
  divergence::StagedOptions opt;
  opt.n = cfg.n;
  opt.stages = cfg.stages;
  opt.grid = static_cast<std::size_t>(cfg.grid_points);
  opt.seed = cfg.seed;
  opt.max_degree = std::min<std::int64_t>(cfg.N_max, 4096);
  std::erase_if(opt.degrees, [&](std::int64_t d) { return d > opt.max_degree; });
  if (opt.degrees.empty()) opt.degrees.push_back(opt.max_degree);
  const auto f = divergence::build_staged(opt);
  for (const auto& s : f.stages) {
    log << "stage " << s.index << ": eta=" << s.eta << " r=" << s.r << " m=" << s.m << " N1=" << s.N1
        << " Nj=" << s.Nj << " grid_fraction=" << s.grid_fraction << " median=" << s.total_sup.median << '\n';
  }
  if (!f.complete) log << "budget exhausted: " << f.diagnostic << '\n';
  auto out = open_artifact(cfg, "stage.json", log);
  divergence::write_stage_json(out, f, meta_line(cfg, "stage"));
  return f.complete ? kOk : kBudgetExhausted;
}

}  // namespace

int run(const std::string& command, const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (command == "verify") return run_verify(cfg, log);
  if (command == "kernel") return run_kernel(cfg, log);
  if (command == "pack") return run_pack(cfg, log);
  if (command == "scan") return run_scan(cfg, log);
  if (command == "summability") return run_summability(cfg, log);
  if (command == "stage") return run_stage(cfg, log);
  throw ConfigError("unknown command: " + command);
}

}  // namespace sumlab::cli
