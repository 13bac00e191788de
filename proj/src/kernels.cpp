#include "sumlab/kernels.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace sumlab::kernels {

using specfun::critical_index;

namespace {

double gegenbauer_index(int n) {
  if (n < 2) throw std::invalid_argument("sphere dimension must be at least 2");
  return 0.5 * (n - 1);
}

// Levin u-transform on the window of the last (window + 1) terms, beta = 1.
// Returns the estimated limit of the series, or NaN when a term vanishes.
double levin_limit(const std::vector<double>& terms, std::size_t window) {
  const std::size_t L = terms.size();
  const std::size_t n0 = L - 1 - window;
  constexpr double beta = 1.0;
  double partial = 0.0;
  for (std::size_t i = 0; i < n0; ++i) partial += terms[i];
  double num = 0.0;
  double den = 0.0;
  double binom = 1.0;
  for (std::size_t j = 0; j <= window; ++j) {
    const std::size_t idx = n0 + j;
    partial += terms[idx];
    if (terms[idx] == 0.0) return std::nan("");
    const double b = beta + static_cast<double>(idx);
    const double w = (j % 2 == 0 ? 1.0 : -1.0) * binom *
                     std::pow(b / (beta + static_cast<double>(n0 + window)), static_cast<double>(window) - 1.0) /
                     (b * terms[idx]);
    num += w * partial;
    den += w;
    binom = binom * static_cast<double>(window - j) / static_cast<double>(j + 1);
  }
  return num / den;
}

constexpr std::size_t kLevinWindow = 8;

}  // namespace

double zonal_kernel(int n, std::int64_t k, double theta) {
  const double lambda = gegenbauer_index(n);
  return (static_cast<double>(k) + lambda) / lambda * specfun::gegenbauer_eval(lambda, k, std::cos(theta));
}

std::vector<double> zonal_sequence(int n, double theta, std::int64_t K) {
  const double lambda = gegenbauer_index(n);
  std::vector<double> z(static_cast<std::size_t>(K + 1));
  specfun::gegenbauer_sequence(lambda, std::cos(theta), z);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] *= (static_cast<double>(k) + lambda) / lambda;
  return z;
}

double cesaro_kernel(double delta, std::int64_t N, const std::vector<double>& zonal) {
  if (static_cast<std::int64_t>(zonal.size()) <= N) {
    throw std::invalid_argument("zonal sequence shorter than N + 1");
  }
  const auto w = specfun::cesaro_ratios(delta, N);
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * zonal[k];
  return s;
}

double cesaro_kernel(int n, double delta, std::int64_t N, double theta) {
  return cesaro_kernel(delta, N, zonal_sequence(n, theta, N));
}

double szego_coefficient(int n, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("szego_coefficient requires N >= 1");
  using specfun::log_gamma;
  const double nd = n;
  const double Nd = static_cast<double>(N);
  const double log_c = 0.5 * std::log(std::numbers::pi) - (nd - 1.0) * std::log(2.0) -
                       log_gamma(0.5 * (nd + 1.0)) +
                       specfun::log_gamma_ratio(Nd + 0.5 * (3.0 * nd - 1.0), Nd + 0.5 * nd) +
                       specfun::log_gamma_ratio(2.0 * Nd + 0.5 * (3.0 * nd + 1.0), 2.0 * Nd + 2.0 * nd);
  return std::exp(log_c) / specfun::cesaro_number(critical_index(n), N);
}

double szego_limit(int n) { return std::sqrt(std::numbers::pi) * std::pow(2.0, -1.5 * (n - 1)); }

specfun::JacobiParams main_jacobi_params(int n) { return {n - 0.5, 0.5 * (n - 2)}; }

double amplitude(int n, double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw std::domain_error("amplitude is singular at theta = 0 and theta = pi");
  }
  return std::pow(std::sin(0.5 * theta), -n) * std::pow(std::cos(0.5 * theta), -0.5 * (n - 1)) /
         std::sqrt(std::numbers::pi);
}

double main_term(int n, std::int64_t N, double theta) {
  if (theta > 0.5 * std::numbers::pi) return 0.0;
  return szego_coefficient(n, N) * specfun::jacobi_eval(main_jacobi_params(n), N, std::cos(theta));
}

double jacobi_asymptotic(int n, std::int64_t N, double theta) {
  const double phase = (static_cast<double>(N) + 0.25 * (3 * n - 1)) * theta - 0.5 * n * std::numbers::pi;
  return amplitude(n, theta) * std::cos(phase) / std::sqrt(static_cast<double>(N));
}

double error_coefficient(int n, std::int64_t N, std::int64_t ell) {
  const double Nd = static_cast<double>(N);
  double ratio = 1.0;
  for (std::int64_t i = 0; i < ell; ++i) {
    ratio *= (Nd + 0.5 * (n + 1) + static_cast<double>(i)) / (2.0 * Nd + 0.5 * (3 * n + 1) + static_cast<double>(i));
  }
  const double sign = ell % 2 == 0 ? -1.0 : 1.0;
  return sign * specfun::gen_binomial(critical_index(n), ell) * ratio;
}

double coefficient_tail(int n, std::int64_t N, int trunc) {
  const double d0 = critical_index(n);
  const double a = static_cast<double>(N) + 0.5 * (n + 1);
  const double b = 2.0 * static_cast<double>(N) + 0.5 * (3 * n + 1);
  // |coefficient_l| updated by its term ratio. Past l > delta0 the binomial
  // factor alone gives t_j <= t_l (l/j)^{1+delta0}, so the remainder after l
  // is at most t_l * l / delta0.
  double t = 1.0;
  double tail = 0.0;
  constexpr std::int64_t kMaxTerms = 2'000'000;
  for (std::int64_t ell = 1; ell <= kMaxTerms; ++ell) {
    const double l = static_cast<double>(ell);
    t *= std::abs(d0 - (l - 1.0)) / l * (a + l - 1.0) / (b + l - 1.0);
    if (t == 0.0) return tail;
    if (ell <= trunc) continue;
    tail += t;
    if (l > d0 + 1.0) {
      const double remainder = t * l / d0;
      if (remainder < 1e-17 * tail) return tail + remainder;
    }
  }
  return tail + t * static_cast<double>(kMaxTerms) / d0;
}

ErrorSeries error_series(int n, std::int64_t N, double theta, int trunc) {
  if (trunc < 1) throw std::invalid_argument("error series needs trunc >= 1");
  if (N < 1) throw std::invalid_argument("error series needs N >= 1");
  const double d0 = critical_index(n);
  const auto zonal = zonal_sequence(n, theta, N);
  ErrorSeries out;
  out.terms.reserve(static_cast<std::size_t>(trunc));
  const double Nd = static_cast<double>(N);
  double ratio = 1.0;
  for (int ell = 1; ell <= trunc; ++ell) {
    const double l = ell;
    ratio *= (Nd + 0.5 * (n + 1) + l - 1.0) / (2.0 * Nd + 0.5 * (3 * n + 1) + l - 1.0);
    const double coef = (ell % 2 == 0 ? -1.0 : 1.0) * specfun::gen_binomial(d0, ell) * ratio;
    const double term = coef == 0.0 ? 0.0 : coef * cesaro_kernel(d0 + l, N, zonal);
    out.terms.push_back(term);
    out.partial += term;
  }
  double dims = 0.0;
  for (std::int64_t k = 0; k <= N; ++k) dims += static_cast<double>(specfun::harmonic_dimension(n, k));
  out.tail_bound = coefficient_tail(n, N, trunc) * dims;
  if (out.tail_bound > 0.0 && out.terms.size() > kLevinWindow + 1) {
    const double limit = levin_limit(out.terms, kLevinWindow);
    const double estimate = limit - out.partial;
    if (std::isfinite(estimate) && std::abs(estimate) <= out.tail_bound) out.tail_estimate = estimate;
  }
  return out;
}

KernelDecomposition decompose(int n, std::int64_t N, double theta, int trunc) {
  if (N < 1) throw std::invalid_argument("decomposition requires N >= 1");
  KernelDecomposition d;
  d.N = N;
  d.theta = theta;
  d.trunc = trunc;
  if (theta <= 0.5 * std::numbers::pi) {
    d.main = main_term(n, N, theta);
    const ErrorSeries e = error_series(n, N, theta, trunc);
    d.error = e.value();
    d.trunc_bound = e.tail_bound;
  } else {
    d.antipodal = cesaro_kernel(n, critical_index(n), N, theta);
  }
  return d;
}

double convolve_atomic(const ZonalKernel& kernel, const sphere::AtomicMeasure& mu,
                       const sphere::SpherePoint& x, std::int64_t N) {
  if (x.dim() != mu.dim()) throw std::invalid_argument("point and measure dimensions differ");
  double s = 0.0;
  for (const auto& atom : mu.atoms()) {
    s += atom.weight * kernel(N, sphere::geodesic_distance(x, atom.point));
  }
  return s;
}

void write_kernel_csv(std::ostream& out, int n, const std::vector<std::int64_t>& Ns,
                      const std::vector<double>& thetas, int trunc, const std::string& meta_line) {
  out << meta_line << '\n';
  out << "N,theta,K_full,K_main,K_error,K_antipodal,trunc_bound\n";
  out << std::setprecision(17);
  for (std::int64_t N : Ns) {
    for (double theta : thetas) {
      const double full = cesaro_kernel(n, critical_index(n), N, theta);
      const KernelDecomposition d = decompose(n, N, theta, trunc);
      out << N << ',' << theta << ',' << full << ',' << d.main << ',' << d.error << ',' << d.antipodal << ','
          << d.trunc_bound << '\n';
    }
  }
}

}  // namespace sumlab::kernels
