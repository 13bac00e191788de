#include "sumlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <numbers>
#include <random>
#include <sstream>

#include "sumlab/divergence.hpp"
#include "sumlab/kernels.hpp"
#include "sumlab/parallel.hpp"
#include "sumlab/specfun.hpp"
#include "sumlab/sphere.hpp"
#include "sumlab/summation.hpp"

namespace sumlab::verify {

namespace {

using sphere::AtomicMeasure;
using sphere::SpherePoint;
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Formats key=value pairs with 6 significant digits.
class Detail {
 public:
  template <class T>
  Detail& operator()(const std::string& key, const T& value) {
    if (!first_) out_ << ' ';
    first_ = false;
    out_ << key << '=' << value;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_ = [] {
    std::ostringstream s;
    s << std::setprecision(6) << std::boolalpha;
    return s;
  }();
  bool first_ = true;
};

Check check(std::string name, bool pass, const Detail& d) { return {std::move(name), pass, d.str()}; }

Check two_range_check(std::string name, const TwoRange& t) {
  return check(std::move(name), t.stable() && std::isfinite(t.doubled),
               Detail()("base", t.base)("doubled", t.doubled)("allowance", t.allowance)("ratio",
                                                                                         t.doubled / t.base));
}

Check lower_range_check(std::string name, const TwoRangeLower& t) {
  return check(std::move(name), t.stable() && t.base > 0.0,
               Detail()("base", t.base)("doubled", t.doubled)("ratio", t.doubled / t.base));
}

std::vector<double> gaussian_sequence(std::mt19937_64& rng, std::size_t length) {
  std::normal_distribution<double> g;
  std::vector<double> a(length);
  for (double& v : a) v = g(rng);
  return a;
}

double l1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

AtomicMeasure random_probability(int n, std::size_t m, std::uint64_t seed) {
  return AtomicMeasure::uniform(sphere::sample_uniform(n, m, seed));
}

// ---------------------------------------------------------------- 1

void exact_identities(std::uint64_t seed, std::vector<Check>& out) {
  double worst = 0.0;
  for (double delta : {0.0, 0.5, 1.0, 1.5}) {
    for (int rho = 1; rho <= 3; ++rho) {
      for (std::int64_t N = 0; N <= 64; ++N) {
        const double lhs = specfun::cesaro_number(delta + rho, N);
        double rhs = 0.0;
        for (std::int64_t l = 0; l <= N; ++l) {
          rhs += specfun::cesaro_number(rho - 1.0, l) * specfun::cesaro_number(delta, N - l);
        }
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
      }
    }
  }
  out.push_back(check("convolution identity", worst <= 1e-12, Detail()("max_rel", worst)));

  std::mt19937_64 rng(seed);
  worst = 0.0;
  for (double delta : {0.0, 0.5, 1.0, 1.5}) {
    for (int rho = 1; rho <= 3; ++rho) {
      const auto a = gaussian_sequence(rng, 40);
      const auto direct = summation::cesaro_means(a, delta + rho, 64);
      for (std::int64_t N = 0; N <= 64; ++N) {
        const double lifted = summation::delta_lift(a, delta, rho, N);
        worst = std::max(worst, std::abs(lifted - direct[static_cast<std::size_t>(N)]) / l1(a));
      }
    }
  }
  out.push_back(check("delta lift vs direct", worst <= 1e-12, Detail()("max_rel", worst)));

  std::uniform_real_distribution<double> u(0.0, 1.0);
  worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double delta = 0.05 + 2.0 * u(rng);
    const double c = 5.0 * u(rng);
    const double R = c + 0.01 + 40.0 * u(rng);
    const auto a = gaussian_sequence(rng, 30);
    const auto [lhs, rhs] = summation::shifted_riesz_identity(delta, c, R, a);
    worst = std::max(worst, std::abs(lhs - rhs) / l1(a));
  }
  out.push_back(check("shifted Riesz identity", worst <= 1e-12, Detail()("cases", 100)("max_rel", worst)));

  worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(3.0 * u(rng)) % 3;
    const double delta = 0.05 + 2.0 * u(rng);
    const double R = 0.5 + 40.0 * u(rng);
    const auto a = gaussian_sequence(rng, 30);
    const auto [lhs, rhs] = summation::bochner_riesz_reduction(n, delta, R, a);
    worst = std::max(worst, std::abs(lhs - rhs) / l1(a));
  }
  out.push_back(check("Bochner-Riesz reduction", worst <= 1e-12, Detail()("cases", 100)("max_rel", worst)));
}

// ---------------------------------------------------------------- 2

void szego_consistency(std::vector<Check>& out) {
  double worst = 0.0;
  double bound = 0.0;
  for (int n : {2, 3}) {
    for (std::int64_t N : {5, 20, 100}) {
      for (double theta : {0.3, 0.7, 1.2}) {
        const double K = kernels::cesaro_kernel(n, specfun::critical_index(n), N, theta);
        const auto d = kernels::decompose(n, N, theta, 40);
        const double err = std::abs(K - d.main - d.error) / (1.0 + std::abs(K));
        worst = std::max(worst, err);
        bound = std::max(bound, d.trunc_bound / (1.0 + std::abs(K)));
      }
    }
  }
  out.push_back(check("K_N = main + error (trunc 40)", worst <= 1e-8,
                      Detail()("max_scaled_residual", worst)("max_scaled_tail_bound", bound)));
}

// ---------------------------------------------------------------- 3

void reproducing_identity(std::vector<Check>& out) {
  double worst = 0.0;
  for (int n : {2, 3}) {
    const auto rule = sphere::polar_rule(n, 64);
    std::vector<std::vector<double>> z;
    for (double t : rule.nodes) z.push_back(kernels::zonal_sequence(n, std::acos(std::clamp(t, -1.0, 1.0)), 40));
    for (int k = 0; k <= 40; ++k) {
      const double dk = static_cast<double>(specfun::harmonic_dimension(n, k));
      for (int l = 0; l <= 40; ++l) {
        const double dl = static_cast<double>(specfun::harmonic_dimension(n, l));
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * z[i][k] * z[i][l];
        const double expect = k == l ? dk : 0.0;
        worst = std::max(worst, std::abs(s - expect) / std::sqrt(dk * dl));
      }
    }
  }
  out.push_back(check("int Z_k Z_l = delta_kl Z_k(0)", worst <= 1e-9,
                      Detail()("max_err_over_sqrt_dims", worst)("k_l_max", 40)("nodes", 64)));

  int mismatches = 0;
  double drift = 0.0;
  for (int n : {2, 3, 4}) {
    for (int k = 0; k <= 100; ++k) {
      const double z0 = kernels::zonal_kernel(n, k, 0.0);
      const auto dim = specfun::harmonic_dimension(n, k);
      if (static_cast<std::uint64_t>(std::llround(z0)) != dim) ++mismatches;
      drift = std::max(drift, std::abs(z0 - static_cast<double>(dim)) / static_cast<double>(dim));
    }
  }
  out.push_back(check("Z_k(0) = dim H_k", mismatches == 0, Detail()("mismatches", mismatches)("max_rel", drift)));
}

// ---------------------------------------------------------------- 4

void asymptotics(std::vector<Check>& out) {
  for (int n : {2, 3}) {
    const double cn = kernels::szego_coefficient(n, 4096) / 64.0;
    const double lim = kernels::szego_limit(n);
    out.push_back(check("C_N/sqrt(N) limit n=" + std::to_string(n), std::abs(cn - lim) <= 0.01,
                        Detail()("C_N/sqrt(N)", cn)("limit", lim)("diff", std::abs(cn - lim))));
  }
  const double theta = 1.0;
  const auto period = static_cast<std::int64_t>(std::ceil(2.0 * kPi / theta));
  for (int n : {2, 3}) {
    const auto p = kernels::main_jacobi_params(n);
    std::vector<double> seq(static_cast<std::size_t>(1024 + period + 1));
    specfun::jacobi_sequence(p, std::cos(theta), seq);
    std::vector<double> lx, ly;
    for (std::int64_t N = 16; N <= 1024; N *= 2) {
      double env = 0.0;
      for (std::int64_t M = N; M < N + period; ++M) {
        env = std::max(env, std::abs(seq[static_cast<std::size_t>(M)] - kernels::jacobi_asymptotic(n, M, theta)));
      }
      lx.push_back(std::log(static_cast<double>(N)));
      ly.push_back(std::log(env));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    out.push_back(check("Jacobi asymptotic error slope n=" + std::to_string(n), slope <= -1.4,
                        Detail()("slope", slope)("theta", theta)("N", "16..1024")));
  }
}

// ---------------------------------------------------------------- 5

// Cesaro kernel K^delta_N(theta) for N = 0..N_max at every theta.
std::vector<std::vector<double>> kernel_table(int n, double delta, std::int64_t N_max,
                                              const std::vector<double>& thetas) {
  const divergence::CesaroPlan plan(delta, N_max);
  std::vector<std::vector<double>> out(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = plan(kernels::zonal_sequence(n, thetas[i], N_max));
  });
  return out;
}

double z_bound(int n, std::int64_t K) {
  const double lam = specfun::critical_index(n);
  double best = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double theta = kPi * (i + 0.5) / 200.0;
    const auto z = kernels::zonal_sequence(n, theta, K);
    const double w = std::pow(theta * (kPi - theta), lam);
    for (std::int64_t k = 0; k <= K; ++k) {
      best = std::max(best, std::abs(z[static_cast<std::size_t>(k)]) * w / std::pow(k + 1.0, lam));
    }
  }
  return best;
}

double antipodal_bound(int n, std::int64_t N_max) {
  const double lam = specfun::critical_index(n);
  std::vector<double> thetas;
  for (int i = 0; i < 200; ++i) thetas.push_back(0.5 * kPi + 0.5 * kPi * (i + 0.5) / 200.0);
  const auto table = kernel_table(n, lam, N_max, thetas);
  double best = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double w = std::pow(kPi - thetas[i], lam);
    for (double v : table[i]) best = std::max(best, std::abs(v) * w);
  }
  return best;
}

struct LiftBounds {
  double near = 0.0;  // sup |K^{d0+1}_N| N^{-n}, theta <= pi/2
  double far = 0.0;   // sup |K^{d0+1}_N| N theta^{n+1}, 2/N <= theta <= pi/2
};

LiftBounds lift_bounds(int n, std::int64_t N_max) {
  std::vector<double> thetas;
  for (int i = 0; i <= 4000; ++i) thetas.push_back(0.5 * kPi * i / 4000.0);
  for (int i = 0; i < 200; ++i) thetas.push_back(2.0 / static_cast<double>(N_max) * std::pow(2.0, i / 40.0));
  const auto table = kernel_table(n, specfun::critical_index(n) + 1.0, N_max, thetas);
  LiftBounds b;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double t = thetas[i];
    if (t > 0.5 * kPi) continue;
    for (std::int64_t N = 1; N <= N_max; ++N) {
      const double v = std::abs(table[i][static_cast<std::size_t>(N)]);
      const double Nd = static_cast<double>(N);
      b.near = std::max(b.near, v / std::pow(Nd, n));
      if (t >= 2.0 / Nd) b.far = std::max(b.far, v * Nd * std::pow(t, n + 1));
    }
  }
  return b;
}

// Largest ratio of sup_{N <= N_max} |(K_N - main_N) * nu(x)| to
// M(nu)(x) + sum_j w_j (pi - theta_j)^{-lambda}.
double maximal_domination(int n, std::int64_t N_max, std::uint64_t seed) {
  const double lam = specfun::critical_index(n);
  const divergence::CesaroPlan plan(lam, N_max);
  const auto jp = kernels::main_jacobi_params(n);
  std::vector<double> C(static_cast<std::size_t>(N_max + 1), 0.0);
  for (std::int64_t N = 1; N <= N_max; ++N) C[static_cast<std::size_t>(N)] = kernels::szego_coefficient(n, N);
  double worst = 0.0;
  std::vector<double> seq(static_cast<std::size_t>(N_max + 1));
  for (int s = 0; s < 20; ++s) {
    const auto nu = random_probability(n, 50, seed + 100 + s);
    const auto xs = sphere::sample_uniform(n, 100, seed + 200 + s);
    for (const auto& x : xs) {
      const auto K = plan(divergence::projection_sequence(nu, x, N_max));
      std::vector<double> main(static_cast<std::size_t>(N_max + 1), 0.0);
      double antipodal = 0.0;
      for (const auto& atom : nu.atoms()) {
        const double theta = sphere::geodesic_distance(x, atom.point);
        antipodal += atom.weight * std::pow(kPi - theta, -lam);
        if (theta > 0.5 * kPi) continue;
        specfun::jacobi_sequence(jp, std::cos(theta), seq);
        for (std::int64_t N = 1; N <= N_max; ++N) {
          const auto i = static_cast<std::size_t>(N);
          main[i] += atom.weight * C[i] * seq[i];
        }
      }
      double lhs = 0.0;
      for (std::int64_t N = 1; N <= N_max; ++N) {
        const auto i = static_cast<std::size_t>(N);
        lhs = std::max(lhs, std::abs(K[i] - main[i]));
      }
      worst = std::max(worst, lhs / (sphere::hl_maximal(nu, x) + antipodal));
    }
  }
  return worst;
}

// max_t t |{M(nu) > t}| / ||nu|| over the given levels, one Monte-Carlo
// sample shared by all levels.
double weak_type(const std::vector<double>& levels, std::size_t samples, std::uint64_t seed) {
  double worst = 0.0;
  for (int s = 0; s < 3; ++s) {
    const auto nu = random_probability(2, 50, seed + 300 + s);
    const auto xs = sphere::sample_uniform(2, samples, seed + 400 + s);
    std::vector<double> M(xs.size());
    parallel_for(xs.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) M[i] = sphere::hl_maximal(nu, xs[i]);
    });
    for (double t : levels) {
      const auto hits = std::count_if(M.begin(), M.end(), [t](double v) { return v > t; });
      worst = std::max(worst, t * static_cast<double>(hits) / static_cast<double>(samples) / nu.total_variation());
    }
  }
  return worst;
}

// min over a 1000-point grid and the radii of riemann_sum / log(pi/r).
double riemann_lower(const std::vector<double>& radii, std::uint64_t seed) {
  const auto grid = sphere::low_discrepancy_grid(2, 1000, seed);
  double best = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    const auto mu = divergence::witness_measure(2, r, seed);
    for (const auto& x : grid) best = std::min(best, sphere::riemann_sum(mu, x) / std::log(kPi / r));
  }
  return best;
}

struct ComparisonConstants {
  double riesz_cesaro = 0.0;  // sup Cesaro / (sup Riesz + sup proj)
  double cesaro_riesz = 0.0;  // sup Riesz / (sup Cesaro + sup proj)
};

ComparisonConstants comparison_constants(std::size_t max_length, double horizon, std::uint64_t seed) {
  ComparisonConstants c;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(1, max_length);
  std::vector<std::vector<double>> corpus;
  for (int i = 0; i < 1000; ++i) {
    auto a = gaussian_sequence(rng, len(rng));
    if (i % 10 == 0) {
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = (k % 2 == 0) ? 1.0 : -1.0;
    }
    corpus.push_back(std::move(a));
  }
  for (double delta : {0.5, 1.0}) {
    std::vector<ComparisonConstants> local(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const auto m = summation::compare_methods(corpus[i], delta, horizon);
        local[i] = {m.sup_cesaro / (m.sup_riesz + m.sup_proj), m.sup_riesz / (m.sup_cesaro + m.sup_proj)};
      }
    });
    for (const auto& l : local) {
      c.riesz_cesaro = std::max(c.riesz_cesaro, l.riesz_cesaro);
      c.cesaro_riesz = std::max(c.cesaro_riesz, l.cesaro_riesz);
    }
  }
  return c;
}

// Largest |B^{d,c}_R - 2^d S^{d,c}_R| / sup_{r <= R} |S^{d+1,c}_r| over R <= R_max.
double bochner_riesz_constant(double R_max, std::uint64_t seed) {
  const double delta = 0.5;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const auto a = gaussian_sequence(rng, 40);
    const double c = (s % 2 == 0) ? 0.0 : delta;
    const double floor = 1e-8 * l1(a);
    std::vector<double> rs;
    for (int k = 0; k + c < R_max; ++k) rs.push_back(k + c);
    for (int i = 1; i <= static_cast<int>(R_max * 8); ++i) rs.push_back(i / 8.0);
    std::sort(rs.begin(), rs.end());
    double running = 0.0;
    for (double r : rs) {
      if (r <= 0.0) continue;
      running = std::max(running, std::abs(summation::apply(summation::SummationSpec::shifted_riesz(delta + 1.0, c, r), a)));
      if (running <= floor) continue;
      const double B = summation::apply(summation::SummationSpec::quadratic_riesz(delta, c, r), a);
      const double S = summation::apply(summation::SummationSpec::shifted_riesz(delta, c, r), a);
      worst = std::max(worst, std::abs(B - std::pow(2.0, delta) * S) / running);
    }
  }
  return worst;
}

void fitted_bounds(std::uint64_t seed, std::vector<Check>& out) {
  for (int n : {2, 3}) {
    const std::string tag = " n=" + std::to_string(n);
    out.push_back(two_range_check("Z-bound" + tag, {z_bound(n, 200), z_bound(n, 400)}));
    out.push_back(two_range_check("antipodal" + tag, {antipodal_bound(n, 200), antipodal_bound(n, 400)}));
    const auto b = lift_bounds(n, 128);
    const auto d = lift_bounds(n, 256);
    out.push_back(two_range_check("K^{d0+1} near" + tag, {b.near, d.near}));
    out.push_back(two_range_check("K^{d0+1} far" + tag, {b.far, d.far}));
  }
  out.push_back(two_range_check("maximal domination n=2",
                                {maximal_domination(2, 100, seed), maximal_domination(2, 200, seed)}));
  out.push_back(two_range_check("weak (1,1)", {weak_type({10.0, 100.0}, 200000, seed),
                                               weak_type({10.0, 100.0, 1000.0}, 400000, seed)}));
  out.push_back(lower_range_check("Riemann-sum lower constant",
                                TwoRangeLower{riemann_lower({0.4, 0.2}, seed), riemann_lower({0.4, 0.2, 0.1}, seed)}));
  const auto base = comparison_constants(32, 64.0, seed);
  const auto doubled = comparison_constants(64, 128.0, seed);
  out.push_back(two_range_check("riesz-cesaro constant", {base.riesz_cesaro, doubled.riesz_cesaro}));
  out.push_back(two_range_check("cesaro-riesz constant", {base.cesaro_riesz, doubled.cesaro_riesz}));
  out.push_back(two_range_check("Bochner-Riesz vs Riesz constant",
                                {bochner_riesz_constant(50.0, seed), bochner_riesz_constant(100.0, seed)}));
}

// ---------------------------------------------------------------- 6

TwoRange ingham_sweep(const std::function<double(std::int64_t)>& residual,
                      const std::function<double(std::int64_t)>& magnitude) {
  TwoRange t;
  for (std::int64_t k = 10; k <= 10000; ++k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    const double v = kk * std::abs(residual(k));
    if (k <= 5000) t.base = std::max(t.base, v);
    t.doubled = std::max(t.doubled, v);
    t.allowance = std::max(t.allowance, 8.0 * kEps * kk * magnitude(k));
  }
  return t;
}

void ingham_contracts(std::vector<Check>& out) {
  for (double delta : {0.5, 1.0}) {
    const auto c = summation::ingham_b_coeffs(delta);
    const double m = static_cast<double>(c.size());
    const auto t = ingham_sweep([&](std::int64_t k) { return summation::ingham_b_residual(delta, c, k); },
                                [&](std::int64_t k) {
                                  double s = specfun::cesaro_number(delta, k);
                                  for (std::size_t j = 0; j < c.size(); ++j) {
                                    s += std::abs(c[j]) * std::pow(k + (j + 1.0) / m, delta);
                                  }
                                  return s;
                                });
    std::ostringstream name;
    name << "Ingham B delta=" << delta;
    out.push_back(two_range_check(name.str(), t));
  }
  for (double eps : {0.25, 1.0}) {
    const double delta = 0.5;
    const auto p = summation::ingham_a_polys(delta, eps);
    const auto t = ingham_sweep([&](std::int64_t k) { return summation::ingham_a_residual(delta, eps, p, k); },
                                [&](std::int64_t k) {
                                  double s = std::pow(k + eps, delta);
                                  for (std::size_t j = 0; j < p.size() && static_cast<std::int64_t>(j) <= k; ++j) {
                                    s += std::abs(p[j]) * specfun::cesaro_number(delta, k - static_cast<std::int64_t>(j));
                                  }
                                  return s;
                                });
    std::ostringstream name;
    name << "Ingham A delta=0.5 eps=" << eps;
    out.push_back(two_range_check(name.str(), t));
  }
  const std::vector<double> exact{0.0, 0.0, 1.0};
  double worst = 0.0;
  double allowance = 0.0;
  for (std::int64_t k = 0; k <= 10000; ++k) {
    worst = std::max(worst, std::abs(summation::ingham_b_residual(1.0, exact, k)));
    allowance = std::max(allowance, 4.0 * kEps * (k + 1.0));
  }
  out.push_back(check("Ingham B delta=1 exact (0,0,1)", worst <= allowance,
                      Detail()("max_abs_residual", worst)("rounding_allowance", allowance)));
}

// ---------------------------------------------------------------- 7

void majorization(std::uint64_t seed, std::vector<Check>& out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  double slack_a = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const auto a = gaussian_sequence(rng, len(rng));
    const double delta = 0.5 * static_cast<double>(i % 4);
    const double rho = 0.05 + 2.95 * u(rng);
    const auto low = summation::cesaro_means(a, delta, 64);
    const auto high = summation::cesaro_means(a, delta + rho, 64);
    double running = 0.0;
    for (std::size_t N = 0; N < low.size(); ++N) {
      running = std::max(running, std::abs(low[N]));
      slack_a = std::min(slack_a, running - std::abs(high[N]));
    }
  }
  out.push_back(check("Cesaro majorization", slack_a >= -1e-10, Detail()("sequences", 1000)("min_slack", slack_a)));

  double slack_b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const auto a = gaussian_sequence(rng, len(rng));
    const double delta = 0.05 + 1.95 * u(rng);
    const double c = 3.0 * u(rng);
    const double R = 0.1 + 40.0 * u(rng);
    const double rho = 0.05 + 2.95 * u(rng);
    const double phi = summation::phi_mean(a, delta, c, R, rho);
    slack_b = std::min(slack_b, summation::shifted_riesz_sup(a, delta, c, R) - std::abs(phi));
  }
  out.push_back(check("Riesz phi-mean majorization", slack_b >= -1e-10,
                      Detail()("sequences", 1000)("min_slack", slack_b)));
}

// ---------------------------------------------------------------- 8

void kronecker_approach(std::vector<Check>& out) {
  const auto y = SpherePoint::basis(2, 2);
  const double theta = 1.0;
  const SpherePoint x({std::sin(theta), 0.0, std::cos(theta)});
  AtomicMeasure mu(2);
  mu.add(y, 1.0);
  const double values[] = {kPi, theta};
  const auto relation = sphere::integer_relation_probe(values, 50);
  out.push_back(check("no integer relation (pi, theta) at height 50", !relation.has_value(),
                      Detail()("theta", theta)));
  const auto scan = divergence::scan_sup(mu, x, 100000);
  const double target = divergence::kronecker_target(mu, x);
  out.push_back(check("running sup reaches 0.99 target", scan.sup_abs >= 0.99 * target,
                      Detail()("sup", scan.sup_abs)("target", target)("ratio", scan.sup_abs / target)(
                          "argmax_N", scan.argmax_N)("N_max", 100000)));

  // The same sup restricted to 1000 <= N <= N_max, away from small-N overshoot.
  std::vector<double> seq(100001);
  specfun::jacobi_sequence(kernels::main_jacobi_params(2), std::cos(theta), seq);
  double tail = 0.0;
  std::int64_t tail_N = 0;
  for (std::int64_t N = 1000; N <= 100000; ++N) {
    const double v = std::abs(kernels::szego_coefficient(2, N) * seq[static_cast<std::size_t>(N)]);
    if (v > tail) {
      tail = v;
      tail_N = N;
    }
  }
  out.push_back(check("tail sup (N >= 1000) reaches 0.99 target", tail >= 0.99 * target,
                      Detail()("sup", tail)("ratio", tail / target)("argmax_N", tail_N)));
}

// ---------------------------------------------------------------- 9

void divergence_mechanism(std::uint64_t seed, std::vector<Check>& out) {
  const auto grid = sphere::low_discrepancy_grid(2, 2000, seed);
  std::vector<double> medians;
  Detail d;
  for (double r : {0.4, 0.2, 0.1}) {
    const auto mu = divergence::witness_measure(2, r, seed);
    const auto rows = divergence::scan_grid(mu, grid, 4096);
    std::vector<double> sups;
    for (const auto& row : rows) sups.push_back(row.sup_abs);
    medians.push_back(divergence::quantiles(sups).median);
    std::ostringstream key;
    key << "median(r=" << r << ",m=" << mu.size() << ")";
    d(key.str(), medians.back());
  }
  const bool increasing = medians[0] < medians[1] && medians[1] < medians[2];
  out.push_back(check("scan median increasing in log(pi/r)", increasing, d));

  divergence::StagedOptions opt;
  opt.n = 2;
  opt.stages = 3;
  opt.grid = 2000;
  opt.seed = seed;
  const auto f = divergence::build_staged(opt);
  Detail sd;
  sd("complete", f.complete)("stages_built", f.stages.size());
  bool fractions = f.stages.size() == 3;
  bool maxima = f.stages.size() == 3;
  bool eta = true;
  for (std::size_t j = 0; j < f.stages.size(); ++j) {
    const auto& s = f.stages[j];
    const double need = 1.0 - 1.0 / static_cast<double>(j + 1);
    fractions = fractions && s.grid_fraction >= need;
    if (j > 0) maxima = maxima && s.total_sup.median > f.stages[j - 1].total_sup.median;
    eta = eta && s.eta_halving_ok && s.eta_kernel_ok;
    std::ostringstream key;
    key << "stage" << s.index;
    sd(key.str() + ".fraction", s.grid_fraction)(key.str() + ".median", s.total_sup.median);
  }
  if (!f.complete) sd("diagnostic", "'" + f.diagnostic + "'");
  out.push_back(check("staged run completes", f.complete, sd));
  out.push_back(check("stage grid fractions >= 1 - 1/j", fractions, Detail()));
  out.push_back(check("stage maxima strictly increasing", maxima, Detail()));
  out.push_back(check("eta constraints", eta, Detail()));
}

// ---------------------------------------------------------------- 10

// K^delta_N on a theta grid of 16 N + 1 points with cubic interpolation.
class KernelTable {
 public:
  KernelTable(int n, double delta, std::int64_t N) : step_(kPi / (16.0 * static_cast<double>(N))) {
    const auto count = static_cast<std::size_t>(16 * N + 1);
    values_.resize(count);
    parallel_for(count, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) values_[i] = kernels::cesaro_kernel(n, delta, N, step_ * static_cast<double>(i));
    });
  }

  double operator()(double theta) const {
    const double u = theta / step_;
    const auto last = static_cast<std::ptrdiff_t>(values_.size()) - 1;
    const auto i = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(u), 0, last - 1);
    const double t = u - static_cast<double>(i);
    // Catmull-Rom, mirrored at theta = 0 and theta = pi (the kernel is even there).
    auto at = [&](std::ptrdiff_t j) {
      if (j < 0) j = -j;
      if (j > last) j = 2 * last - j;
      return values_[static_cast<std::size_t>(j)];
    };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
  }

 private:
  double step_;
  std::vector<double> values_;
};

SpherePoint in_cap(const SpherePoint& y, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double ct = 1.0 - u(rng) * (1.0 - std::cos(radius));
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = 2.0 * kPi * u(rng);
  // Orthonormal tangent pair at y.
  const auto c = y.coords();
  std::vector<double> e1(3), e2(3);
  const std::vector<double> helper = std::abs(c[0]) < 0.9 ? std::vector<double>{1, 0, 0} : std::vector<double>{0, 1, 0};
  const double proj = helper[0] * c[0] + helper[1] * c[1] + helper[2] * c[2];
  double norm = 0.0;
  for (int i = 0; i < 3; ++i) {
    e1[i] = helper[i] - proj * c[i];
    norm += e1[i] * e1[i];
  }
  for (double& v : e1) v /= std::sqrt(norm);
  e2 = {c[1] * e1[2] - c[2] * e1[1], c[2] * e1[0] - c[0] * e1[2], c[0] * e1[1] - c[1] * e1[0]};
  std::vector<double> x(3);
  for (int i = 0; i < 3; ++i) x[i] = ct * c[i] + st * (std::cos(phi) * e1[i] + std::sin(phi) * e2[i]);
  return SpherePoint::normalized(std::move(x));
}

struct L1Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// ||S^{d0+1}_{N1} mu||_1 on S^2 by importance sampling: half the draws are
// uniform, half land in caps of radius 2^i / N1 around a random atom.
L1Estimate smoothed_l1(const AtomicMeasure& mu, std::int64_t N1, std::size_t samples, std::uint64_t seed) {
  const KernelTable K(2, specfun::critical_index(2) + 1.0, N1);
  std::vector<double> radii;
  for (double r = 1.0 / static_cast<double>(N1); r < kPi; r *= 2.0) radii.push_back(r);
  std::vector<double> cap_mass;
  for (double r : radii) cap_mass.push_back(sphere::ball_measure(2, r));
  const auto m = static_cast<double>(mu.size());
  const auto L = static_cast<double>(radii.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto uniform = sphere::sample_uniform(2, samples, seed + 1);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    SpherePoint x = uniform[s];
    if (u(rng) < 0.5) {
      const auto j = std::min(mu.size() - 1, static_cast<std::size_t>(u(rng) * m));
      const auto i = std::min(radii.size() - 1, static_cast<std::size_t>(u(rng) * L));
      x = in_cap(mu[j].point, radii[i], rng);
    }
    double f = 0.0;
    double q = 0.0;
    for (const auto& atom : mu.atoms()) {
      const double d = sphere::geodesic_distance(x, atom.point);
      f += atom.weight * K(d);
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (d < radii[i]) q += 1.0 / cap_mass[i];
      }
    }
    const double density = 0.5 + 0.5 * q / (m * L);
    const double v = std::abs(f) / density;
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  return {mean, std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples))};
}

void smoothing_fidelity(std::uint64_t seed, std::vector<Check>& out) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> degree(16, 256);
  std::uniform_int_distribution<std::size_t> atoms(1, 20);
  double worst = -std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 2;
    const double lam = specfun::critical_index(n);
    const std::int64_t N1 = degree(rng);
    const std::int64_t N0 = std::uniform_int_distribution<std::int64_t>(0, N1)(rng);
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(0, N0)(rng);
    const auto mu = random_probability(n, atoms(rng), seed + 500 + i);
    const auto x = sphere::sample_uniform(n, 1, seed + 600 + i).front();
    const auto direct = divergence::CesaroPlan(lam, N0)(divergence::projection_sequence(mu, x, N0));
    const auto f = divergence::smooth_to_polynomial(mu, N1);
    const auto smooth = f.cesaro_means(x, N0);
    double dims = 0.0;
    for (std::int64_t k = 0; k <= N0; ++k) dims += static_cast<double>(specfun::harmonic_dimension(n, k));
    const double diff = std::abs(direct[static_cast<std::size_t>(N)] - smooth[static_cast<std::size_t>(N)]);
    const double bound = divergence::smoothing_bound(n, N0, N1) + 1e-10 * (1.0 + dims);
    worst = std::max(worst, diff - bound);
    if (bound > 0.0) worst_ratio = std::max(worst_ratio, diff / bound);
  }
  out.push_back(check("|K_N*mu - K_N*f| <= smoothing bound", worst <= 0.0,
                      Detail()("instances", 50)("max_diff_over_bound", worst_ratio)));

  const auto mu = random_probability(2, 8, seed + 700);
  Detail d;
  double fitted = 0.0;
  double fitted_err = 0.0;
  L1Estimate check_value;
  for (std::int64_t N1 : {128, 512, 2048}) {
    const auto e = smoothed_l1(mu, N1, 100000, seed + 800);
    d("N1=" + std::to_string(N1), e.value)("stderr", e.stderr_);
    if (N1 < 2048) {
      if (e.value > fitted) fitted_err = e.stderr_;
      fitted = std::max(fitted, e.value);
    } else {
      check_value = e;
    }
  }
  const TwoRange t{fitted, check_value.value, 3.0 * (fitted_err + check_value.stderr_)};
  d("fitted_C", fitted)("allowance", t.allowance);
  out.push_back(check("||f||_1 bounded uniformly in N1", t.stable(), d));
}

// ----------------------------------------------------------------

struct Spec {
  const char* title;
  double budget;
  std::function<void(std::uint64_t, std::vector<Check>&)> run;
};

const Spec& spec(int id) {
  static const Spec table[kCriteria] = {
      {"exact identities", 5.0, exact_identities},
      {"Szego expansion consistency", 10.0, [](std::uint64_t, std::vector<Check>& o) { szego_consistency(o); }},
      {"reproducing identity and dimensions", 5.0,
       [](std::uint64_t, std::vector<Check>& o) { reproducing_identity(o); }},
      {"asymptotics", 0.0, [](std::uint64_t, std::vector<Check>& o) { asymptotics(o); }},
      {"fitted-bound stability", 120.0, fitted_bounds},
      {"Ingham contracts", 10.0, [](std::uint64_t, std::vector<Check>& o) { ingham_contracts(o); }},
      {"majorization", 10.0, majorization},
      {"Kronecker approach", 5.0, [](std::uint64_t, std::vector<Check>& o) { kronecker_approach(o); }},
      {"divergence mechanism", 300.0, divergence_mechanism},
      {"smoothing fidelity", 60.0, smoothing_fidelity},
  };
  return table[id - 1];
}

}  // namespace

bool CriterionResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriteria) throw std::out_of_range("criterion id must lie in 1..10");
  const Spec& s = spec(id);
  CriterionResult r;
  r.id = id;
  r.title = s.title;
  r.budget_seconds = s.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    s.run(seed, r.checks);
  } catch (const std::exception& e) {
    r.checks.push_back({"no exception", false, e.what()});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.budget_seconds > 0.0) {
    r.checks.push_back(check("runtime", r.seconds <= r.budget_seconds,
                             Detail()("seconds", r.seconds)("budget", r.budget_seconds)));
  }
  return r;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass() ? "PASS" : "FAIL") << std::setw(3) << r.id << "  " << r.title << "  (" << std::fixed
      << std::setprecision(2) << r.seconds << " s";
  if (r.budget_seconds > 0.0) out << " / " << std::setprecision(0) << r.budget_seconds << " s";
  out << ")";
  return out.str();
}

std::string detail_lines(const CriterionResult& r) {
  std::string out;
  for (const auto& c : r.checks) {
    out += std::string("    ") + (c.pass ? "ok   " : "FAIL ") + c.name;
    if (!c.detail.empty()) out += ": " + c.detail;
    out += '\n';
  }
  return out;
}

}  // namespace sumlab::verify
