#include "sumlab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sumlab::specfun {

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr std::int64_t kExactProductLimit = 32;

void check_unit_interval(double t) {
  if (!(std::abs(t) <= 1.0 + 1e-14)) {
    throw std::domain_error("polynomial argument outside [-1, 1]: " + std::to_string(t));
  }
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma requires x > 0");
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x), sin(pi x) > 0 on (0, 1/2).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

double log_gamma_ratio(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw std::domain_error("log_gamma_ratio requires positive arguments");
  }
  // Shift both arguments up to at least kStirlingStart with the recurrence,
  // then difference the Stirling series term by term. Writing the leading
  // part with log1p avoids the cancellation of two large log-gammas.
  constexpr double kStirlingStart = 12.0;
  double shift_log = 0.0;
  while (std::min(x, y) < kStirlingStart) {
    shift_log += std::log(y / x);
    x += 1.0;
    y += 1.0;
  }
  const double d = x - y;
  double value = d * std::log(y) + (x - 0.5) * std::log1p(d / y) - d;
  // B_{2j} / (2j (2j-1)) for j = 1..6.
  constexpr std::array<double, 6> kStirling = {1.0 / 12.0,     -1.0 / 360.0,  1.0 / 1260.0,
                                               -1.0 / 1680.0,  1.0 / 1188.0,  -691.0 / 360360.0};
  const double ix = 1.0 / x;
  const double iy = 1.0 / y;
  double px = ix;
  double py = iy;
  for (double c : kStirling) {
    value += c * (px - py);
    px *= ix * ix;
    py *= iy * iy;
  }
  return value + shift_log;
}

double cesaro_number(double delta, std::int64_t k) {
  if (!(delta > -1.0)) {
    throw std::domain_error("cesaro_number requires delta > -1");
  }
  if (k < 0) {
    throw std::domain_error("cesaro_number requires k >= 0");
  }
  if (k <= kExactProductLimit) {
    double value = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) {
      value *= (delta + static_cast<double>(i)) / static_cast<double>(i);
    }
    return value;
  }
  const double kd = static_cast<double>(k);
  if (delta >= 0.0 && delta <= kExactProductLimit && delta == std::floor(delta)) {
    // binom(k + delta, delta) as a product of delta factors.
    double value = 1.0;
    for (int i = 1; i <= static_cast<int>(delta); ++i) value *= (kd + i) / i;
    return value;
  }
  return std::exp(log_gamma_ratio(kd + delta + 1.0, kd + 1.0) - log_gamma(delta + 1.0));
}

std::vector<double> cesaro_ratios(double delta, std::int64_t N) {
  if (!(delta > -1.0)) {
    throw std::domain_error("cesaro_ratios requires delta > -1");
  }
  std::vector<double> w(static_cast<std::size_t>(N + 1));
  w[0] = 1.0;
  for (std::int64_t k = 0; k < N; ++k) {
    const double rem = static_cast<double>(N - k);
    w[static_cast<std::size_t>(k + 1)] = w[static_cast<std::size_t>(k)] * rem / (rem + delta);
  }
  return w;
}

double gen_binomial(double delta, std::int64_t ell) {
  if (ell < 0) {
    throw std::domain_error("gen_binomial requires ell >= 0");
  }
  double value = 1.0;
  for (std::int64_t i = 0; i < ell; ++i) {
    value *= (delta - static_cast<double>(i)) / static_cast<double>(i + 1);
  }
  return value;
}

std::uint64_t harmonic_dimension(int n, std::int64_t k) {
  if (n < 1 || k < 0) {
    throw std::domain_error("harmonic_dimension requires n >= 1, k >= 0");
  }
  // binom(m, r) with small r = n via the multiplicative formula, exact in 128 bits.
  auto binom = [](std::int64_t m, int r) -> unsigned __int128 {
    if (m < 0) return 0;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
      acc = acc * static_cast<unsigned __int128>(m - r + i) / static_cast<unsigned __int128>(i);
    }
    return acc;
  };
  const unsigned __int128 upper = binom(k + n, n);
  const unsigned __int128 lower = k >= 2 ? binom(k - 2 + n, n) : 0;
  return static_cast<std::uint64_t>(upper - lower);
}

JacobiStep jacobi_step(JacobiParams p, std::int64_t k) {
  const double a = p.alpha;
  const double b = p.beta;
  const double kd = static_cast<double>(k);
  const double s = 2.0 * kd + a + b;
  const double denom = 2.0 * kd * (kd + a + b) * (s - 2.0);
  return {(s - 1.0) * s * (s - 2.0) / denom, (s - 1.0) * (a * a - b * b) / denom,
          2.0 * (kd + a - 1.0) * (kd + b - 1.0) * s / denom};
}

void jacobi_sequence(JacobiParams p, double t, std::span<double> out) {
  if (!(p.alpha > -1.0) || !(p.beta > -1.0)) {
    throw std::domain_error("Jacobi parameters must exceed -1");
  }
  check_unit_interval(t);
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = (p.alpha + 1.0) + (p.alpha + p.beta + 2.0) * (t - 1.0) / 2.0;
  for (std::size_t k = 2; k < out.size(); ++k) {
    const JacobiStep st = jacobi_step(p, static_cast<std::int64_t>(k));
    out[k] = (st.a * t + st.b) * out[k - 1] - st.c * out[k - 2];
  }
}

double jacobi_eval(JacobiParams p, std::int64_t k, double t) {
  if (!(p.alpha > -1.0) || !(p.beta > -1.0)) {
    throw std::domain_error("Jacobi parameters must exceed -1");
  }
  check_unit_interval(t);
  if (k < 0) {
    throw std::domain_error("Jacobi degree must be nonnegative");
  }
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = (p.alpha + 1.0) + (p.alpha + p.beta + 2.0) * (t - 1.0) / 2.0;
  for (std::int64_t j = 2; j <= k; ++j) {
    const JacobiStep st = jacobi_step(p, j);
    const double next = (st.a * t + st.b) * cur - st.c * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_jacobi_factor(double lambda, std::int64_t k) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("Gegenbauer index must be positive");
  }
  const double kd = static_cast<double>(k);
  return std::exp(log_gamma_ratio(lambda + 0.5, 2.0 * lambda) + log_gamma_ratio(kd + 2.0 * lambda, kd + lambda + 0.5));
}

double gegenbauer_eval(double lambda, std::int64_t k, double t) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("Gegenbauer index must be positive");
  }
  if (k == 0) return 1.0;
  const JacobiParams p{lambda - 0.5, lambda - 0.5};
  return gegenbauer_jacobi_factor(lambda, k) * jacobi_eval(p, k, t);
}

void gegenbauer_sequence(double lambda, double t, std::span<double> out) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("Gegenbauer index must be positive");
  }
  check_unit_interval(t);
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * lambda * t;
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    out[k] = (2.0 * t * (kd + lambda - 1.0) * out[k - 1] - (kd + 2.0 * lambda - 2.0) * out[k - 2]) / kd;
  }
}

double gegenbauer_recurrence(double lambda, std::int64_t k, double t) {
  if (k < 0) {
    throw std::domain_error("Gegenbauer degree must be nonnegative");
  }
  std::vector<double> seq(static_cast<std::size_t>(k + 1));
  gegenbauer_sequence(lambda, t, seq);
  return seq.back();
}

}  // namespace sumlab::specfun
