#include "sumlab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace sumlab::sphere {

namespace {

void check_same_dim(const SpherePoint& x, const SpherePoint& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("sphere points of different dimension");
  }
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) {
    throw std::invalid_argument("SpherePoint needs n >= 2 (at least 3 coordinates)");
  }
  if (std::abs(norm(coords_) - 1.0) > 1e-12) {
    throw std::invalid_argument("SpherePoint coordinates must have unit norm");
  }
}

SpherePoint SpherePoint::normalized(std::vector<double> coords) {
  const double s = norm(coords);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  for (double& c : coords) c /= s;
  return SpherePoint(std::move(coords));
}

SpherePoint SpherePoint::basis(int n, int i) {
  if (i < 0 || i > n) {
    throw std::invalid_argument("basis index out of range");
  }
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  c[static_cast<std::size_t>(i)] = 1.0;
  return SpherePoint(std::move(c));
}

double inner(const SpherePoint& x, const SpherePoint& y) {
  check_same_dim(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.coords().size(); ++i) s += x[i] * y[i];
  return s;
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
  check_same_dim(x, y);
  // atan2 of |x - y| and |x + y| keeps full relative accuracy near 0 and pi,
  // where arccos of the clamped inner product loses half the digits.
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    const double d = x[i] - y[i];
    const double s = x[i] + y[i];
    diff += d * d;
    sum += s * s;
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

SpherePoint antipode(const SpherePoint& x) {
  std::vector<double> c(x.coords().begin(), x.coords().end());
  for (double& v : c) v = -v;
  return SpherePoint(std::move(c));
}

AtomicMeasure::AtomicMeasure(int dim, std::vector<Atom> atoms) : dim_(dim), atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (a.point.dim() != dim_) {
      throw std::invalid_argument("atom dimension does not match measure dimension");
    }
  }
}

AtomicMeasure AtomicMeasure::uniform(std::vector<SpherePoint> points) {
  if (points.empty()) {
    throw std::invalid_argument("uniform measure needs at least one point");
  }
  const int dim = points.front().dim();
  const double w = 1.0 / static_cast<double>(points.size());
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (auto& p : points) atoms.push_back({std::move(p), w});
  return AtomicMeasure(dim, std::move(atoms));
}

void AtomicMeasure::add(SpherePoint p, double weight) {
  if (p.dim() != dim_) {
    throw std::invalid_argument("atom dimension does not match measure dimension");
  }
  atoms_.push_back({std::move(p), weight});
}

double AtomicMeasure::total_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

double AtomicMeasure::total_variation() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += std::abs(a.weight);
  return s;
}

bool AtomicMeasure::is_probability() const {
  if (atoms_.empty()) return false;
  const double w = 1.0 / static_cast<double>(atoms_.size());
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [w](const Atom& a) { return std::abs(a.weight - w) <= 1e-15 * w; });
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
  AtomicMeasure out = *this;
  for (Atom& a : out.atoms_) a.weight *= factor;
  return out;
}

double AtomicMeasure::min_pairwise_distance() const {
  double best = std::numbers::pi;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      best = std::min(best, geodesic_distance(atoms_[i].point, atoms_[j].point));
    }
  }
  return best;
}

double AtomicMeasure::min_antipodal_gap() const {
  double best = std::numbers::pi;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      best = std::min(best, std::numbers::pi - geodesic_distance(atoms_[i].point, atoms_[j].point));
    }
  }
  return best;
}

double ball_measure(int n, double r) {
  if (n < 1) throw std::domain_error("ball_measure requires n >= 1");
  if (!(r >= 0.0 && r <= std::numbers::pi)) {
    throw std::domain_error("ball radius outside [0, pi]");
  }
  if (n == 2) return 0.5 * (1.0 - std::cos(r));
  if (n == 3) return (r - std::sin(r) * std::cos(r)) / std::numbers::pi;
  // int_0^r sin^{n-1} / int_0^pi sin^{n-1} = I_{sin^2 r}(n/2, 1/2) / 2 on [0, pi/2].
  const double s = std::sin(r);
  const double half = 0.5 * boost::math::ibeta(0.5 * n, 0.5, s * s);
  return r <= 0.5 * std::numbers::pi ? half : 1.0 - half;
}

double riemann_sum(const AtomicMeasure& mu, const SpherePoint& x) {
  const int n = mu.dim();
  double s = 0.0;
  for (const Atom& a : mu.atoms()) {
    const double d = geodesic_distance(x, a.point);
    if (d < 1e-12) return kSingular;
    s += std::abs(a.weight) * std::pow(d, -n);
  }
  return s;
}

double hl_maximal(const AtomicMeasure& nu, const SpherePoint& x) {
  std::vector<std::pair<double, double>> dm;
  dm.reserve(nu.size());
  for (const Atom& a : nu.atoms()) {
    const double d = geodesic_distance(x, a.point);
    if (d < 1e-12 && a.weight != 0.0) return kSingular;
    dm.emplace_back(std::min(d, std::numbers::pi), std::abs(a.weight));
  }
  std::sort(dm.begin(), dm.end());
  // The average over B(x, r) only jumps up when r passes an atom distance and
  // decreases in between, so the sup is the max over the atom distances.
  double best = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    mass += dm[i].second;
    if (i + 1 < dm.size() && dm[i + 1].first == dm[i].first) continue;
    best = std::max(best, mass / ball_measure(nu.dim(), dm[i].first));
  }
  return best;
}

std::vector<SpherePoint> sample_uniform(int n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<SpherePoint> out;
  out.reserve(count);
  std::vector<double> v(static_cast<std::size_t>(n + 1));
  while (out.size() < count) {
    for (double& c : v) c = gauss(rng);
    if (norm(v) < 1e-8) continue;
    out.push_back(SpherePoint::normalized(v));
  }
  return out;
}

void write_packing_csv(std::ostream& out, const AtomicMeasure& mu, const std::string& extra_meta) {
  out << "# dim=" << mu.dim() << " sep=" << std::setprecision(17) << mu.separation.value_or(0.0)
      << " seed=" << mu.seed.value_or(0);
  if (!extra_meta.empty()) out << ' ' << extra_meta;
  out << '\n';
  for (const Atom& a : mu.atoms()) {
    for (double c : a.point.coords()) out << c << ',';
    out << a.weight << '\n';
  }
}

AtomicMeasure read_packing_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind('#', 0) != 0) {
    throw std::invalid_argument("packing CSV must start with a '#' header");
  }
  int dim = -1;
  std::optional<double> sep;
  std::optional<std::uint64_t> seed;
  std::istringstream header(line.substr(1));
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "dim") dim = std::stoi(value);
    if (key == "sep") sep = std::stod(value);
    if (key == "seed") seed = std::stoull(value);
  }
  if (dim < 2) throw std::invalid_argument("packing CSV header lacks a valid dim");
  AtomicMeasure mu(dim);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> fields;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) fields.push_back(std::stod(cell));
    if (fields.size() != static_cast<std::size_t>(dim + 2)) {
      throw std::invalid_argument("packing CSV row has the wrong number of columns");
    }
    const double w = fields.back();
    fields.pop_back();
    mu.add(SpherePoint::normalized(std::move(fields)), w);
  }
  mu.separation = sep;
  mu.seed = seed;
  return mu;
}

}  // namespace sumlab::sphere
