#pragma once

// Zonal and Cesaro kernels on S^n as functions of the geodesic distance
// theta, the critical-index decomposition K_N = main + error + antipodal,
// and convolution against atomic measures.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sumlab/specfun.hpp"
#include "sumlab/sphere.hpp"

namespace sumlab::kernels {

/// Z_k(theta) = ((k + lambda)/lambda) C_k^lambda(cos theta), lambda = (n-1)/2.
double zonal_kernel(int n, std::int64_t k, double theta);

/// Z_0(theta) .. Z_K(theta) by the direct Gegenbauer recurrence.
std::vector<double> zonal_sequence(int n, double theta, std::int64_t K);

/// K_N^delta(theta) = sum_k (A_{N-k}^delta / A_N^delta) Z_k(theta).
double cesaro_kernel(int n, double delta, std::int64_t N, double theta);

/// Same sum with precomputed Z_0..Z_N (zonal.size() must exceed N).
double cesaro_kernel(double delta, std::int64_t N, const std::vector<double>& zonal);

/// Coefficient C_N of the Jacobi main term, N >= 1.
double szego_coefficient(int n, std::int64_t N);

/// lim C_N / sqrt(N) = sqrt(pi) 2^{-3(n-1)/2}.
double szego_limit(int n);

/// Jacobi parameters (n - 1/2, (n-2)/2) of the main term.
specfun::JacobiParams main_jacobi_params(int n);

/// k(theta) = pi^{-1/2} sin(theta/2)^{-n} cos(theta/2)^{-(n-1)/2}, 0 < theta < pi.
/// Throws std::domain_error at the endpoints.
double amplitude(int n, double theta);

/// C_N P_N^{(n-1/2,(n-2)/2)}(cos theta) for theta <= pi/2, else 0.
double main_term(int n, std::int64_t N, double theta);

/// Leading asymptotic N^{-1/2} k(theta) cos((N + (3n-1)/4) theta - n pi/2)
/// of P_N^{(n-1/2,(n-2)/2)}(cos theta).
double jacobi_asymptotic(int n, std::int64_t N, double theta);

/// Coefficient (-1)^{l+1} binom(delta0, l) (N+(n+1)/2)_l / (2N+(3n+1)/2)_l of
/// K_N^{delta0+l} in the error series.
double error_coefficient(int n, std::int64_t N, std::int64_t ell);

struct ErrorSeries {
  double partial = 0.0;        ///< sum of the first trunc terms
  double tail_estimate = 0.0;  ///< Levin u estimate of the remaining terms
  double tail_bound = 0.0;     ///< rigorous bound on |remaining terms|
  std::vector<double> terms;   ///< terms l = 1..trunc

  double value() const { return partial + tail_estimate; }
};

/// Error series E_N(theta) through l = trunc. The tail bound is
/// sum_{l > trunc} |coefficient| times sup |K_N^delta| <= sum_{k<=N} dim H_k.
/// The tail estimate is kept only when it does not exceed the bound.
ErrorSeries error_series(int n, std::int64_t N, double theta, int trunc);

/// sum_{l > trunc} |error_coefficient(n, N, l)|, summed directly far out and
/// closed with a power-law remainder bound.
double coefficient_tail(int n, std::int64_t N, int trunc);

struct KernelDecomposition {
  double main = 0.0;
  double error = 0.0;
  double antipodal = 0.0;
  std::int64_t N = 0;
  double theta = 0.0;
  int trunc = 0;
  double trunc_bound = 0.0;

  double total() const { return main + error + antipodal; }
};

inline constexpr int kDefaultTrunc = 40;

/// K_N(theta) = main + error + antipodal at the critical index, N >= 1.
KernelDecomposition decompose(int n, std::int64_t N, double theta, int trunc = kDefaultTrunc);

/// Evaluator of a zonal kernel as a function of (N, theta).
using ZonalKernel = std::function<double(std::int64_t, double)>;

/// sum_j w_j kernel(N, |x - y_j|).
double convolve_atomic(const ZonalKernel& kernel, const sphere::AtomicMeasure& mu,
                       const sphere::SpherePoint& x, std::int64_t N);

/// Kernel CSV: `N,theta,K_full,K_main,K_error,K_antipodal,trunc_bound`.
void write_kernel_csv(std::ostream& out, int n, const std::vector<std::int64_t>& Ns,
                      const std::vector<double>& thetas, int trunc, const std::string& meta_line);

}  // namespace sumlab::kernels
