#pragma once

// Geometry and measure theory of S^n: points, atomic measures, distances,
// ball measures, greedy maximal r-separated packings, Riemann sums, the
// Hardy-Littlewood maximal function of atomic measures, sampling,
// quadrature and a finite integer-relation probe.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sumlab::sphere {

/// A point of S^n stored as a unit vector in R^{n+1}.
class SpherePoint {
 public:
  /// Takes coordinates that already have unit norm (within 1e-12); throws
  /// std::invalid_argument otherwise or when n < 2.
  explicit SpherePoint(std::vector<double> coords);

  /// Normalizes arbitrary nonzero ambient coordinates.
  static SpherePoint normalized(std::vector<double> coords);

  /// Standard basis vector e_i of R^{n+1}.
  static SpherePoint basis(int n, int i);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  std::vector<double> coords_;
};

double inner(const SpherePoint& x, const SpherePoint& y);

/// Great-circle distance in [0, pi]. Throws std::invalid_argument on a
/// dimension mismatch.
double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

SpherePoint antipode(const SpherePoint& x);

struct Atom {
  SpherePoint point;
  double weight;
};

/// Finitely supported signed measure on S^n.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(int dim) : dim_(dim) {}
  AtomicMeasure(int dim, std::vector<Atom> atoms);

  /// Uniform probability measure (1/m) sum delta_{y_j}.
  static AtomicMeasure uniform(std::vector<SpherePoint> points);

  int dim() const { return dim_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  void add(SpherePoint p, double weight);

  double total_mass() const;
  double total_variation() const;

  /// True iff every weight equals 1/m.
  bool is_probability() const;

  /// Separation r recorded by the packing that produced this measure, if any.
  std::optional<double> separation;
  std::optional<std::uint64_t> seed;

  AtomicMeasure scaled(double factor) const;

  /// Minimum pairwise geodesic distance (pi for fewer than two atoms).
  double min_pairwise_distance() const;

  /// Minimum over pairs of |y_i - antipode(y_j)| (pi for fewer than two atoms).
  double min_antipodal_gap() const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
};

/// Normalized measure of a geodesic ball of radius r on S^n.
double ball_measure(int n, double r);

/// Greedy maximal r-separated set, returned as its uniform probability measure.
AtomicMeasure greedy_packing(int n, double r, std::uint64_t seed);

/// Result of checking a packing against its certificate.
struct PackingCertificate {
  bool separated = false;
  bool maximal_on_grid = false;
  double min_separation = 0.0;
  double grid_mesh = 0.0;
  std::size_t grid_points = 0;
  /// C with r^{-n}/C <= m <= C r^{-n}.
  double cardinality_constant = 0.0;
};
PackingCertificate certify_packing(const AtomicMeasure& mu, double r);

/// Deterministic covering grid of S^n with geodesic mesh at most `mesh`
/// (every point of the sphere lies within `mesh` of a grid point).
std::vector<SpherePoint> covering_grid(int n, double mesh);

/// Moves one member of every near-antipodal pair (|x - y^| < 1e-6) by
/// geodesic distance eps. Throws std::invalid_argument if eps is not below
/// half the separation.
AtomicMeasure remove_antipodal_pairs(const AtomicMeasure& mu, double eps);

/// Threshold below which |x - y^| counts as antipodal.
inline constexpr double kAntipodalThreshold = 1e-6;

inline constexpr double kSingular = std::numeric_limits<double>::infinity();

/// (1/m) sum_j |x - y_j|^{-n}; +infinity when x is within 1e-12 of an atom.
double riemann_sum(const AtomicMeasure& mu, const SpherePoint& x);

/// Exact Hardy-Littlewood maximal function of an atomic measure;
/// +infinity at an atom.
double hl_maximal(const AtomicMeasure& nu, const SpherePoint& x);

/// Searches integer vectors q, max|q_i| <= height, with |sum q_i v_i| <
/// 1e-9 * height. Exhaustive for up to four values, LLL above that.
/// An empty result is evidence of independence, not proof.
std::optional<std::vector<std::int64_t>> integer_relation_probe(std::span<const double> values,
                                                                int height);

/// I.i.d. uniform points from normalized Gaussian vectors.
std::vector<SpherePoint> sample_uniform(int n, std::size_t count, std::uint64_t seed);

/// Seeded low-discrepancy point set on S^n (randomly rotated spherical
/// Fibonacci lattice for n = 2, shifted Halton points mapped through the
/// Gaussian quantile otherwise).
std::vector<SpherePoint> low_discrepancy_grid(int n, std::size_t count, std::uint64_t seed);

struct QuadratureEstimate {
  double estimate;
  double stderr_;
};

/// Gauss rule for the weight (1-t)^alpha (1+t)^beta on [-1, 1], with
/// weights normalized to sum to one. Golub-Welsch.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_jacobi(std::size_t count, double alpha, double beta);

/// Probability-normalized polar rule on S^n: integrates g(theta) against
/// sin^{n-1}(theta) d theta / int_0^pi sin^{n-1}. Exact for polynomials
/// in cos(theta) of degree <= 2*count - 1.
GaussRule polar_rule(int n, std::size_t count);

/// Integral of a zonal field f(theta) (theta = distance to a pole) against
/// the probability measure. Exact for polynomials in cos(theta) of degree
/// <= budget; stderr_ is zero.
QuadratureEstimate sphere_quadrature_zonal(int n, const std::function<double(double)>& f,
                                           std::size_t budget);

/// Monte-Carlo integral of a general field against the probability measure.
QuadratureEstimate sphere_quadrature(int n, const std::function<double(const SpherePoint&)>& f,
                                     std::size_t budget, std::uint64_t seed = 1);

/// Packing CSV: header `# dim=<n> sep=<r> seed=<s>` (extra key=value pairs
/// allowed), then one row per atom with n+1 coordinates and the weight.
void write_packing_csv(std::ostream& out, const AtomicMeasure& mu, const std::string& extra_meta = {});
AtomicMeasure read_packing_csv(std::istream& in);

}  // namespace sumlab::sphere
