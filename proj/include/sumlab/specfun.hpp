#pragma once

// Special functions and combinatorial weights behind every kernel in sumlab:
// log-gamma, Cesaro numbers A_k^delta, generalized binomials, Jacobi and
// Gegenbauer polynomials.
//
// Everything here is a pure function of its arguments.

#include <cstdint>
#include <span>
#include <vector>

namespace sumlab::specfun {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7). Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// ln(Gamma(x) / Gamma(y)) for x, y > 0, accurate to a few ulps of the
/// result even when both log-gammas are large.
double log_gamma_ratio(double x, double y);

/// The critical Cesaro index (n-1)/2 on S^n.
constexpr double critical_index(int n) { return 0.5 * (n - 1); }

/// A_k^delta = binom(k + delta, k), delta > -1.
///
/// Exact product for k <= 32 or integral delta <= 32, gamma-ratio form otherwise.
double cesaro_number(double delta, std::int64_t k);

/// Ratios w_k = A_{N-k}^delta / A_N^delta for k = 0..N.
///
/// Built by the product recurrence w_{k+1} = w_k (N-k)/(N-k+delta), which
/// never forms A_N itself and so does not overflow for large N.
std::vector<double> cesaro_ratios(double delta, std::int64_t N);

/// delta (delta-1) ... (delta-ell+1) / ell!, equal to 1 at ell = 0.
double gen_binomial(double delta, std::int64_t ell);

/// dim H_k^n = binom(k+n, k) - binom(k-2+n, k-2).
std::uint64_t harmonic_dimension(int n, std::int64_t k);

struct JacobiParams {
  double alpha;
  double beta;
};

/// Coefficients of the three-term recurrence
///   P_k = ((a_k t + b_k) P_{k-1} - c_k P_{k-2}),   k >= 2,
/// with P_0 = 1 and P_1 = (alpha+1) + (alpha+beta+2)(t-1)/2.
struct JacobiStep {
  double a;
  double b;
  double c;
};
JacobiStep jacobi_step(JacobiParams p, std::int64_t k);

/// P_k^{(alpha,beta)}(t) by upward recurrence. Requires alpha, beta > -1 and
/// |t| <= 1 (std::domain_error otherwise).
double jacobi_eval(JacobiParams p, std::int64_t k, double t);

/// Fills out[k] = P_k^{(alpha,beta)}(t) for k = 0..out.size()-1.
void jacobi_sequence(JacobiParams p, double t, std::span<double> out);

/// Gamma(lambda+1/2) Gamma(k+2 lambda) / (Gamma(2 lambda) Gamma(k+lambda+1/2)),
/// the factor taking P_k^{(lambda-1/2, lambda-1/2)} to C_k^lambda.
double gegenbauer_jacobi_factor(double lambda, std::int64_t k);

/// C_k^lambda(t) through the Jacobi conversion.
double gegenbauer_eval(double lambda, std::int64_t k, double t);

/// C_k^lambda(t) through the direct Gegenbauer recurrence. Kept as the
/// independent route for cross-checks.
double gegenbauer_recurrence(double lambda, std::int64_t k, double t);

/// Fills out[k] = C_k^lambda(t) by the direct recurrence.
void gegenbauer_sequence(double lambda, double t, std::span<double> out);

}  // namespace sumlab::specfun
