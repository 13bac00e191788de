#pragma once

// The divergence pipeline on S^n: projections of atomic measures, the
// Kronecker limit of the main-term convolution, running-supremum scans,
// smoothing of atomic measures into polynomials, and the staged builder of
// a function whose critical Cesaro means diverge on most of the sphere.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sumlab/sphere.hpp"

namespace sumlab::divergence {

using sphere::AtomicMeasure;
using sphere::SpherePoint;

/// Greedy maximal r-packing as a uniform probability measure, with
/// near-antipodal pairs moved apart by min(1e-3, r/4).
AtomicMeasure witness_measure(int n, double r, std::uint64_t seed);

/// (proj_k mu)(x) = sum_j w_j Z_k(x, y_j).
double measure_projection(const AtomicMeasure& mu, std::int64_t k, const SpherePoint& x);

/// (proj_k mu)(x) for k = 0..K, one vectorized recurrence over the atoms.
std::vector<double> projection_sequence(const AtomicMeasure& mu, const SpherePoint& x, std::int64_t K);

/// C_inf * sum_j w_j k(theta_j) 1{theta_j <= pi/2}. Throws std::domain_error
/// when x is an atom or the antipode of one.
double kronecker_target(const AtomicMeasure& mu, const SpherePoint& x);

struct ScanResult {
  SpherePoint x;
  double sup_abs = 0.0;        ///< max over 1 <= N <= N_max of |main-term convolution|
  std::int64_t argmax_N = 0;
  double target = 0.0;         ///< Kronecker limit; +inf when x is an atom
  std::int64_t N_max = 0;
};

/// Running maximum over N of |sum_j w_j C_N P_N(cos theta_j)| (atoms within
/// pi/2 only), computed by one Jacobi recurrence across all atoms.
ScanResult scan_sup(const AtomicMeasure& mu, const SpherePoint& x, std::int64_t N_max);

/// scan_sup at every grid point, statically partitioned across threads.
std::vector<ScanResult> scan_grid(const AtomicMeasure& mu, const std::vector<SpherePoint>& grid,
                                  std::int64_t N_max);

/// Scan CSV: point_index, x0..xn, sup_abs, argmax_N, target, r, m, N_max, seed.
void write_scan_csv(std::ostream& out, const std::vector<ScanResult>& rows, const AtomicMeasure& mu,
                    const std::string& meta_line);

/// Cesaro means of order delta of the partial sums of b (b_k = 0 past its
/// end), for N = 0..N_max: (1/A_N) sum_k A_{N-k} b_k. Holds the transformed
/// weight sequence so repeated calls cost one forward and one inverse FFT.
class CesaroPlan {
 public:
  CesaroPlan(double delta, std::int64_t N_max);

  std::vector<double> operator()(std::span<const double> b) const;

  std::int64_t N_max() const { return static_cast<std::int64_t>(a_.size()) - 1; }

 private:
  std::vector<double> a_;
  std::size_t fft_size_ = 0;
  std::vector<std::complex<double>> spectrum_;
};

std::vector<double> cesaro_transform(std::span<const double> b, double delta, std::int64_t N_max);

/// f = S^{delta0+1}_{N1} mu held through its spectral multipliers
/// A^{delta0+1}_{N1-k} / A^{delta0+1}_{N1}, k = 0..N1.
struct SmoothedMeasure {
  AtomicMeasure mu;
  std::int64_t N1 = 0;
  std::vector<double> multipliers;

  int dim() const { return mu.dim(); }

  /// proj_k f(x) for k = 0..N1.
  std::vector<double> spectrum(const SpherePoint& x) const;

  /// f(x) = sum_j w_j K^{delta0+1}_{N1}(theta_j).
  double operator()(const SpherePoint& x) const;

  /// K_N * f(x) for N = 0..N_max.
  std::vector<double> cesaro_means(const SpherePoint& x, std::int64_t N_max) const;
};

SmoothedMeasure smooth_to_polynomial(const AtomicMeasure& mu, std::int64_t N1);

/// (1 - A^{delta0+1}_{N1-N0}/A^{delta0+1}_{N1}) sum_{k <= N0} dim H_k, the
/// bound on |K_N * mu - K_N * f| for N <= N0 <= N1.
double smoothing_bound(int n, std::int64_t N0, std::int64_t N1);

/// ||K^delta_N||_{L^1} by polar Gauss quadrature with enough nodes to
/// resolve the kernel's oscillation.
double kernel_l1_norm(int n, double delta, std::int64_t N);

struct SupNorm {
  double exact = 0.0;     ///< K_N(0) = sum_k (A_{N-k}/A_N) dim H_k
  double grid_max = 0.0;  ///< max |K_N(theta)| on a theta grid refined near 0
};

/// Sup norm of the critical Cesaro kernel K_N.
SupNorm kernel_sup_norm(int n, std::int64_t N);

/// K_N(0) for N = 0..N_max.
std::vector<double> kernel_peak_values(int n, std::int64_t N_max);

struct StagedOptions {
  int n = 2;
  int stages = 3;
  std::size_t grid = 2000;
  std::uint64_t seed = 1;
  std::size_t max_atoms = 5000;
  std::int64_t max_degree = 4096;
  std::vector<double> radii = {0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<std::int64_t> degrees = {4, 16, 64, 256, 1024, 4096};
};

struct Quantiles {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

Quantiles quantiles(std::vector<double> values);

struct Stage {
  int index = 0;
  double eta = 0.0;
  double r = 0.0;
  std::size_t m = 0;
  std::int64_t N1 = 0;
  std::int64_t Nj = 0;
  double l1_normalizer = 0.0;  ///< ||K^{delta0+1}_{N1}||_1, divides S mu
  double threshold = 0.0;      ///< sup_N ||K_N * (earlier stages)|| + j on the grid
  double grid_fraction = 0.0;  ///< fraction of the grid in E_j
  double target = 0.0;         ///< j - 2
  // Checked constraints on eta.
  double eta_previous = 0.0;
  double kernel_peak = 0.0;    ///< max_{N <= N_{j-1}} ||K_N||_inf
  bool eta_halving_ok = false;
  bool eta_kernel_ok = false;
  Quantiles stage_sup;         ///< eta_j max_{N<=Nj} |K_N * f_j|
  Quantiles total_sup;         ///< max_{N<=Nj} |K_N * (eta_1 f_1 + ... + eta_j f_j)|
  std::vector<std::size_t> passing;  ///< grid indices of E_j
};

struct StagedFunction {
  StagedOptions options;
  std::vector<Stage> stages;
  std::vector<SmoothedMeasure> parts;  ///< f_j before scaling by eta_j and 1/l1_normalizer
  bool complete = false;
  std::string diagnostic;

  /// sum_j eta_j f_j(x) / l1_normalizer_j.
  double operator()(const SpherePoint& x) const;
};

/// Runs the inductive construction for options.stages stages. Stops early
/// with complete = false and a diagnostic when no packing radius and
/// smoothing degree within the caps meets a stage condition.
StagedFunction build_staged(const StagedOptions& options);

/// Stage JSON: options, completion flag, diagnostic and one record per stage.
void write_stage_json(std::ostream& out, const StagedFunction& f, const std::string& meta_line);

}  // namespace sumlab::divergence
