#include "sumlab/summation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "sumlab/specfun.hpp"

namespace sumlab::summation {

std::string method_name(Method m) {
  switch (m) {
    case Method::Cesaro: return "cesaro";
    case Method::Riesz: return "riesz";
    case Method::ShiftedRiesz: return "shifted_riesz";
    case Method::QuadraticRiesz: return "quadratic_riesz";
    case Method::BochnerRiesz: return "bochner_riesz";
  }
  return "unknown";
}

SummationSpec SummationSpec::cesaro(double delta, std::int64_t N) {
  return {Method::Cesaro, delta, 0.0, static_cast<double>(N), 2};
}
SummationSpec SummationSpec::riesz(double delta, double R) { return {Method::Riesz, delta, 0.0, R, 2}; }
SummationSpec SummationSpec::shifted_riesz(double delta, double c, double R) {
  return {Method::ShiftedRiesz, delta, c, R, 2};
}
SummationSpec SummationSpec::quadratic_riesz(double delta, double c, double R) {
  return {Method::QuadraticRiesz, delta, c, R, 2};
}
SummationSpec SummationSpec::bochner_riesz(double delta, double R, int n) {
  return {Method::BochnerRiesz, delta, 0.0, R, n};
}

void SummationSpec::validate() const {
  if (method == Method::Cesaro) {
    if (!(delta > -1.0)) throw std::invalid_argument("Cesaro order must exceed -1");
    if (!(cutoff >= 0.0) || cutoff != std::floor(cutoff)) {
      throw std::invalid_argument("Cesaro cutoff must be a nonnegative integer");
    }
    return;
  }
  if (!(delta > 0.0)) throw std::invalid_argument("Riesz-type order must be positive");
  if (!(cutoff > 0.0)) throw std::invalid_argument("Riesz-type cutoff must be positive");
  if (method == Method::QuadraticRiesz && !(c >= 0.0)) {
    throw std::invalid_argument("quadratic Riesz means need c >= 0");
  }
  if (method == Method::BochnerRiesz && n < 2) {
    throw std::invalid_argument("Bochner-Riesz means need n >= 2");
  }
}

bool SummationSpec::includes(std::int64_t k) const {
  const double kd = static_cast<double>(k);
  switch (method) {
    case Method::Cesaro: return kd <= cutoff;
    case Method::Riesz: return kd < cutoff;
    case Method::ShiftedRiesz:
    case Method::QuadraticRiesz: return kd + c < cutoff;
    case Method::BochnerRiesz: return kd * (kd + n - 1) < cutoff * cutoff;
  }
  return false;
}

double SummationSpec::weight(std::int64_t k) const {
  if (k < 0 || !includes(k)) return 0.0;
  const double kd = static_cast<double>(k);
  switch (method) {
    case Method::Cesaro: {
      const auto N = static_cast<std::int64_t>(cutoff);
      return specfun::cesaro_number(delta, N - k) / specfun::cesaro_number(delta, N);
    }
    case Method::Riesz: return std::pow(1.0 - kd / cutoff, delta);
    case Method::ShiftedRiesz: return std::pow(1.0 - (kd + c) / cutoff, delta);
    case Method::QuadraticRiesz: {
      const double t = (kd + c) / cutoff;
      return std::pow(1.0 - t * t, delta);
    }
    case Method::BochnerRiesz: return std::pow(1.0 - kd * (kd + n - 1) / (cutoff * cutoff), delta);
  }
  return 0.0;
}

double apply(const SummationSpec& spec, Coeffs a) {
  spec.validate();
  if (spec.method == Method::Cesaro) {
    const auto N = static_cast<std::int64_t>(spec.cutoff);
    // Only the first min(len, N + 1) ratios are needed, so huge N stays cheap.
    double s = 0.0;
    double w = 1.0;
    const auto top = std::min<std::int64_t>(static_cast<std::int64_t>(a.size()), N + 1);
    for (std::int64_t k = 0; k < top; ++k) {
      s += w * a[static_cast<std::size_t>(k)];
      const double m = static_cast<double>(N - k);
      w *= m / (m + spec.delta);
    }
    return s;
  }
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto ki = static_cast<std::int64_t>(k);
    // Inclusion is monotone in k for every family, so the first excluded
    // index ends the sum.
    if (!spec.includes(ki)) break;
    s += spec.weight(ki) * a[k];
  }
  return s;
}

std::vector<double> cesaro_means(Coeffs a, double delta, std::int64_t N) {
  std::vector<double> out(static_cast<std::size_t>(N + 1));
  for (std::int64_t M = 0; M <= N; ++M) {
    out[static_cast<std::size_t>(M)] = summation::apply(SummationSpec::cesaro(delta, M), a);
  }
  return out;
}

std::pair<double, double> shifted_riesz_identity(double delta, double c, double R, Coeffs a) {
  if (!(R > c)) throw std::invalid_argument("shifted Riesz identity needs R > c");
  const double lhs = summation::apply(SummationSpec::shifted_riesz(delta, c, R), a);
  const double rhs = std::pow(1.0 - c / R, delta) * summation::apply(SummationSpec::riesz(delta, R - c), a);
  return {lhs, rhs};
}

std::pair<double, double> bochner_riesz_reduction(int n, double delta, double R, Coeffs a) {
  const double c = 0.5 * (n - 1);
  const double lhs = summation::apply(SummationSpec::bochner_riesz(delta, R, n), a);
  const double rhs = std::pow(1.0 + c * c / (R * R), delta) *
                     summation::apply(SummationSpec::quadratic_riesz(delta, c, std::sqrt(R * R + c * c)), a);
  return {lhs, rhs};
}

double delta_lift(Coeffs a, double delta, double rho, std::int64_t N) {
  if (!(rho > 0.0)) throw std::invalid_argument("delta_lift needs rho > 0");
  const auto lower = cesaro_means(a, delta, N);
  double s = 0.0;
  for (std::int64_t l = 0; l <= N; ++l) {
    s += specfun::cesaro_number(rho - 1.0, l) * specfun::cesaro_number(delta, N - l) *
         lower[static_cast<std::size_t>(N - l)];
  }
  return s / specfun::cesaro_number(delta + rho, N);
}

double phi_mean(Coeffs a, double delta, double c, double R, double rho) {
  if (!(R > 0.0)) throw std::invalid_argument("phi_mean needs R > 0");
  return summation::apply(SummationSpec::shifted_riesz(delta + rho, c, R), a);
}

double shifted_riesz_sup(Coeffs a, double delta, double c, double R, std::size_t grid) {
  auto value = [&](double r) { return std::abs(summation::apply(SummationSpec::shifted_riesz(delta, c, r), a)); };
  std::vector<double> rs;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double jump = static_cast<double>(k) + c;
    if (jump > 0.0 && jump <= R) rs.push_back(jump);
  }
  for (std::size_t i = 1; i <= grid; ++i) rs.push_back(R * static_cast<double>(i) / static_cast<double>(grid));
  std::sort(rs.begin(), rs.end());
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double v = value(rs[i]);
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  // The mean is smooth between jump points; refine on each side of the best
  // sample by golden-section search.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int side : {-1, 1}) {
    const std::size_t other = side < 0 ? (arg == 0 ? arg : arg - 1) : std::min(arg + 1, rs.size() - 1);
    double lo = std::min(rs[arg], rs[other]);
    double hi = std::max(rs[arg], rs[other]);
    if (!(hi > lo)) continue;
    for (int it = 0; it < 60; ++it) {
      const double m1 = hi - phi * (hi - lo);
      const double m2 = lo + phi * (hi - lo);
      const double v1 = value(m1);
      const double v2 = value(m2);
      best = std::max({best, v1, v2});
      if (v1 > v2) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
  }
  return best;
}

double bochner_riesz_series(Coeffs a, double delta, double c, double R, int terms) {
  const double two_d = std::pow(2.0, delta);
  double s = two_d * summation::apply(SummationSpec::shifted_riesz(delta, c, R), a);
  for (int l = 1; l <= terms; ++l) {
    const double coef = specfun::gen_binomial(delta, l) * (l % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, -l);
    if (coef == 0.0) continue;
    s += two_d * coef * summation::apply(SummationSpec::shifted_riesz(delta + l, c, R), a);
  }
  return s;
}

MethodComparison compare_methods(Coeffs a, double delta, double horizon, std::size_t per_unit) {
  MethodComparison out;
  const auto H = static_cast<std::int64_t>(std::floor(horizon));
  for (double s : cesaro_means(a, delta, H)) out.sup_cesaro = std::max(out.sup_cesaro, std::abs(s));
  const auto units = static_cast<std::size_t>(std::ceil(horizon));
  for (std::size_t u = 0; u < units; ++u) {
    for (std::size_t i = 1; i <= per_unit; ++i) {
      const double R = std::min(horizon, static_cast<double>(u) + static_cast<double>(i) / static_cast<double>(per_unit));
      out.sup_riesz = std::max(out.sup_riesz, std::abs(summation::apply(SummationSpec::riesz(delta, R), a)));
    }
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    out.sup_proj = std::max(out.sup_proj, std::abs(a[k]) / std::pow(static_cast<double>(k + 1), delta));
  }
  return out;
}

void write_summability_csv(std::ostream& out, const std::vector<SummationSpec>& specs, Coeffs a,
                           const std::string& meta_line) {
  out << meta_line << '\n' << "method,delta,c,cutoff,value\n" << std::setprecision(17);
  for (const auto& spec : specs) {
    out << method_name(spec.method) << ',' << spec.delta << ',' << spec.c << ',' << spec.cutoff << ','
        << summation::apply(spec, a) << '\n';
  }
}

}  // namespace sumlab::summation
