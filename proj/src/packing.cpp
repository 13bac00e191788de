#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "sumlab/sphere.hpp"

namespace sumlab::sphere {

namespace {

// Uniform bucket grid on the ambient cube [-1, 1]^{n+1}. With the cell side
// equal to the chord 2 sin(r/2), any point closer than r to x lies in one of
// the 3^{n+1} cells around x.
class PointIndex {
 public:
  PointIndex(int n, double r) : n_(n), cos_r_(std::cos(r)) {
    cell_ = std::max(2.0 * std::sin(0.5 * std::min(r, std::numbers::pi)), 1e-9);
    base_ = static_cast<std::int64_t>(std::ceil(2.0 / cell_)) + 3;
    offsets_.assign(1, {});
    for (int d = 0; d <= n_; ++d) {
      std::vector<std::vector<int>> next;
      for (const auto& o : offsets_) {
        for (int s = -1; s <= 1; ++s) {
          auto e = o;
          e.push_back(s);
          next.push_back(std::move(e));
        }
      }
      offsets_ = std::move(next);
    }
  }

  /// True iff some indexed point y has <x, y> > cos r, that is, d(x, y) < r.
  bool has_close(std::span<const double> x) const {
    const auto cell = cell_of(x);
    for (const auto& o : offsets_) {
      const auto it = buckets_.find(key(cell, o));
      if (it == buckets_.end()) continue;
      for (std::size_t idx : it->second) {
        if (dot(points_[idx], x) > cos_r_) return true;
      }
    }
    return false;
  }

  void insert(std::span<const double> x) {
    const auto cell = cell_of(x);
    buckets_[key(cell, zero())].push_back(points_.size());
    points_.emplace_back(x.begin(), x.end());
  }

  const std::vector<std::vector<double>>& points() const { return points_; }

 private:
  static double dot(const std::vector<double>& a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  std::vector<std::int64_t> cell_of(std::span<const double> x) const {
    std::vector<std::int64_t> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      c[i] = static_cast<std::int64_t>(std::floor((x[i] + 1.0) / cell_)) + 1;
    }
    return c;
  }

  std::vector<int> zero() const { return std::vector<int>(static_cast<std::size_t>(n_ + 1), 0); }

  std::uint64_t key(const std::vector<std::int64_t>& cell, const std::vector<int>& off) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      k = k * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(cell[i] + off[i]);
    }
    return k;
  }

  int n_;
  double cos_r_;
  double cell_;
  std::int64_t base_;
  std::vector<std::vector<int>> offsets_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
  std::vector<std::vector<double>> points_;
};

// Consecutive rejections that end the random phase; the grid sweep then
// fills whatever gaps remain.
constexpr std::size_t kRejectionRun = 2000;

template <class Visit>
void for_each_grid_point(int n, double mesh, Visit&& visit) {
  // Face points of the cube [-1, 1]^{n+1} with spacing h, projected radially.
  // A sphere point projects to a face point within h sqrt(n)/2, and radial
  // projection from outside the ball is 1-Lipschitz, so the geodesic mesh is
  // at most 2 asin(h sqrt(n)/4) <= mesh.
  const double h = 4.0 * std::sin(0.25 * std::min(mesh, std::numbers::pi)) / std::sqrt(static_cast<double>(n));
  const auto steps = static_cast<std::int64_t>(std::ceil(2.0 / h));
  const double spacing = 2.0 / static_cast<double>(steps);
  const std::size_t dim = static_cast<std::size_t>(n + 1);
  std::vector<double> v(dim);
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  for (std::size_t face = 0; face < dim; ++face) {
    for (double sign : {1.0, -1.0}) {
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        double len2 = 1.0;
        std::size_t j = 0;
        for (std::size_t i = 0; i < dim; ++i) {
          if (i == face) {
            v[i] = sign;
          } else {
            v[i] = -1.0 + spacing * static_cast<double>(idx[j++]);
            len2 += v[i] * v[i];
          }
        }
        const double inv = 1.0 / std::sqrt(len2);
        for (double& c : v) c *= inv;
        visit(std::span<const double>(v));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] > steps) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
}

}  // namespace

std::vector<SpherePoint> covering_grid(int n, double mesh) {
  if (!(mesh > 0.0)) throw std::invalid_argument("grid mesh must be positive");
  std::vector<SpherePoint> out;
  for_each_grid_point(n, mesh, [&](std::span<const double> v) {
    out.push_back(SpherePoint::normalized(std::vector<double>(v.begin(), v.end())));
  });
  return out;
}

AtomicMeasure greedy_packing(int n, double r, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("greedy_packing requires n >= 2");
  if (!(r > 0.0 && r <= std::numbers::pi)) {
    throw std::domain_error("packing separation outside (0, pi]");
  }
  PointIndex index(n, r);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n + 1));
  std::size_t rejections = 0;
  while (rejections < kRejectionRun) {
    double len2 = 0.0;
    for (double& c : v) {
      c = gauss(rng);
      len2 += c * c;
    }
    if (len2 < 1e-16) continue;
    const double inv = 1.0 / std::sqrt(len2);
    for (double& c : v) c *= inv;
    if (index.has_close(v)) {
      ++rejections;
    } else {
      index.insert(v);
      rejections = 0;
    }
  }
  for_each_grid_point(n, 0.25 * r, [&](std::span<const double> g) {
    if (!index.has_close(g)) index.insert(g);
  });

  std::vector<SpherePoint> points;
  points.reserve(index.points().size());
  for (const auto& p : index.points()) points.push_back(SpherePoint::normalized(p));
  AtomicMeasure mu = AtomicMeasure::uniform(std::move(points));
  mu.separation = r;
  mu.seed = seed;
  return mu;
}

PackingCertificate certify_packing(const AtomicMeasure& mu, double r) {
  PackingCertificate cert;
  const int n = mu.dim();
  // Separation: insert one by one; a point closer than r (up to rounding in
  // the inner product) to an earlier one breaks the certificate.
  PointIndex index(n, r * (1.0 - 1e-12));
  cert.separated = true;
  for (const Atom& a : mu.atoms()) {
    if (index.has_close(a.point.coords())) cert.separated = false;
    index.insert(a.point.coords());
  }
  cert.min_separation = mu.min_pairwise_distance();

  PointIndex cover(n, r);
  for (const Atom& a : mu.atoms()) cover.insert(a.point.coords());
  cert.maximal_on_grid = true;
  cert.grid_mesh = 0.25 * r;
  for_each_grid_point(n, cert.grid_mesh, [&](std::span<const double> g) {
    ++cert.grid_points;
    if (!cover.has_close(g)) cert.maximal_on_grid = false;
  });

  const double scaled = static_cast<double>(mu.size()) * std::pow(r, n);
  cert.cardinality_constant = std::max(scaled, 1.0 / scaled);
  return cert;
}

AtomicMeasure remove_antipodal_pairs(const AtomicMeasure& mu, double eps) {
  const double sep = mu.separation.value_or(mu.min_pairwise_distance());
  if (!(eps > 0.0) || !(eps < 0.5 * sep)) {
    throw std::invalid_argument("perturbation eps must lie in (0, separation/2)");
  }
  std::vector<Atom> atoms = mu.atoms();
  const std::size_t dim = static_cast<std::size_t>(mu.dim() + 1);
  bool moved_any = false;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    bool paired = false;
    for (std::size_t i = 0; i < j && !paired; ++i) {
      paired = std::numbers::pi - geodesic_distance(atoms[i].point, atoms[j].point) < kAntipodalThreshold;
    }
    if (!paired) continue;
    moved_any = true;
    // Tangent direction: the basis vector least aligned with y, made
    // orthogonal to y. Then move along the great circle by eps.
    const auto y = atoms[j].point.coords();
    std::size_t axis = 0;
    for (std::size_t k = 1; k < dim; ++k) {
      if (std::abs(y[k]) < std::abs(y[axis])) axis = k;
    }
    std::vector<double> t(dim);
    for (std::size_t k = 0; k < dim; ++k) t[k] = (k == axis ? 1.0 : 0.0) - y[axis] * y[k];
    double tn = 0.0;
    for (double c : t) tn += c * c;
    tn = std::sqrt(tn);
    std::vector<double> moved(dim);
    for (std::size_t k = 0; k < dim; ++k) moved[k] = std::cos(eps) * y[k] + std::sin(eps) * t[k] / tn;
    atoms[j].point = SpherePoint::normalized(std::move(moved));
  }
  AtomicMeasure out(mu.dim(), std::move(atoms));
  out.separation = mu.separation;
  if (moved_any && mu.separation) out.separation = *mu.separation - 2.0 * eps;
  out.seed = mu.seed;
  return out;
}

}  // namespace sumlab::sphere
