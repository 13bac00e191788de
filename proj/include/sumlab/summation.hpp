#pragma once

// Summation methods as transforms of finitely supported coefficient
// sequences a_0, a_1, ...: Cesaro, Riesz, shifted Riesz, quadratic Riesz and
// Bochner-Riesz means, the identities linking them, and the Ingham
// approximation coefficients.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sumlab::summation {

using Coeffs = std::span<const double>;

enum class Method { Cesaro, Riesz, ShiftedRiesz, QuadraticRiesz, BochnerRiesz };

std::string method_name(Method m);

struct SummationSpec {
  Method method = Method::Cesaro;
  double delta = 0.0;
  double c = 0.0;       ///< shift (ShiftedRiesz, QuadraticRiesz)
  double cutoff = 0.0;  ///< N for Cesaro, R otherwise
  int n = 2;            ///< sphere dimension (BochnerRiesz eigenvalues)

  static SummationSpec cesaro(double delta, std::int64_t N);
  static SummationSpec riesz(double delta, double R);
  static SummationSpec shifted_riesz(double delta, double c, double R);
  static SummationSpec quadratic_riesz(double delta, double c, double R);
  static SummationSpec bochner_riesz(double delta, double R, int n);

  /// Throws std::invalid_argument unless the spec is valid: delta > -1 for
  /// Cesaro and delta > 0 otherwise, integral N >= 0, R > 0, c >= 0 for the
  /// quadratic means, n >= 2 for Bochner-Riesz.
  void validate() const;

  /// Whether index k enters the mean. Strict inequalities throughout:
  /// k + c < R for the Riesz family, k(k+n-1) < R^2 for Bochner-Riesz.
  bool includes(std::int64_t k) const;

  /// Weight of a_k (zero when excluded).
  double weight(std::int64_t k) const;
};

/// The mean of a under spec; only the support of a is visited.
double apply(const SummationSpec& spec, Coeffs a);

/// Cesaro means S_0^delta .. S_N^delta.
std::vector<double> cesaro_means(Coeffs a, double delta, std::int64_t N);

/// (lhs, rhs) of S^{delta,c}_R = (1 - c/R)^delta S^delta_{R-c}. Requires R > c.
std::pair<double, double> shifted_riesz_identity(double delta, double c, double R, Coeffs a);

/// (lhs, rhs) of B^delta_R = (1 + c^2/R^2)^delta B^{delta,c}_{sqrt(R^2+c^2)},
/// c = (n-1)/2.
std::pair<double, double> bochner_riesz_reduction(int n, double delta, double R, Coeffs a);

/// S_N^{delta+rho} assembled from the lower-order means S_{N-l}^delta with
/// weights A_l^{rho-1} A_{N-l}^delta / A_N^{delta+rho}.
double delta_lift(Coeffs a, double delta, double rho, std::int64_t N);

/// Shifted Riesz mean of order delta + rho (the phi-mean with phi(t) = t^{delta+rho}).
double phi_mean(Coeffs a, double delta, double c, double R, double rho);

/// sup over 0 < r <= R of |S^{delta,c}_r|: every jump point k + c, a uniform
/// grid of `grid` points, and a golden-section refinement around the best
/// grid cell.
double shifted_riesz_sup(Coeffs a, double delta, double c, double R, std::size_t grid = 2048);

/// 2^d S^{d,c}_R + 2^d sum_{l=1}^{L} binom(d, l) (-1)^l 2^{-l} S^{d+l,c}_R.
double bochner_riesz_series(Coeffs a, double delta, double c, double R, int terms);

struct MethodComparison {
  double sup_cesaro = 0.0;  ///< sup_{N <= horizon} |S_N^delta|
  double sup_riesz = 0.0;   ///< sup_{0 < R <= horizon} |S~_R^delta|
  double sup_proj = 0.0;    ///< sup_k |a_k| / (k+1)^delta
};

/// Riesz sup taken on the jump points and `per_unit` points per unit interval.
MethodComparison compare_methods(Coeffs a, double delta, double horizon, std::size_t per_unit = 16);

/// Ingham B: c_1..c_m, m = ceil(delta) + 2, matching A_k^delta against
/// sum_j c_j (k + j/m)^delta through the orders k^delta .. k^{delta-m+1}.
/// Minimum-norm solution when the matching system is singular.
std::vector<double> ingham_b_coeffs(double delta);

/// A_k^delta - sum_j c_j (k + j/m)^delta.
double ingham_b_residual(double delta, const std::vector<double>& c, std::int64_t k);

/// Ingham A: p_0(eps)..p_m(eps), m = ceil(delta) + 1, matching (k+eps)^delta
/// against sum_j p_j A_{k-j}^delta through m+1 orders.
std::vector<double> ingham_a_polys(double delta, double eps);

/// (k + eps)^delta - sum_j p_j A_{k-j}^delta, with A_i^delta = 0 for i < 0.
double ingham_a_residual(double delta, double eps, const std::vector<double>& p, std::int64_t k);

/// Coefficients g_i with Gamma(k+a)/Gamma(k+b) = k^{a-b} sum_i g_i k^{-i} + ...
/// for i = 0..order-1 (Stirling series with Bernoulli polynomials).
std::vector<double> gamma_ratio_expansion(double a, double b, int order);

/// summability CSV: `method,delta,c,cutoff,value`.
void write_summability_csv(std::ostream& out, const std::vector<SummationSpec>& specs, Coeffs a,
                           const std::string& meta_line);

}  // namespace sumlab::summation
