#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include "sumlab/sphere.hpp"

namespace sumlab::sphere {

GaussRule gauss_jacobi(std::size_t count, double alpha, double beta) {
  if (count == 0) throw std::invalid_argument("Gauss rule needs at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("Jacobi weight parameters must exceed -1");
  }
  // Golub-Welsch: eigenvalues of the Jacobi matrix of the monic recurrence
  // are the nodes; squared first eigenvector components are the weights.
  const Eigen::Index q = static_cast<Eigen::Index>(count);
  Eigen::VectorXd diag(q);
  Eigen::VectorXd sub(std::max<Eigen::Index>(q - 1, 0));
  const double ab = alpha + beta;
  for (Eigen::Index k = 0; k < q; ++k) {
    const double kd = static_cast<double>(k);
    const double s = 2.0 * kd + ab;
    diag(k) = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (Eigen::Index k = 1; k < q; ++k) {
    const double kd = static_cast<double>(k);
    const double s = 2.0 * kd + ab;
    sub(k - 1) = std::sqrt(4.0 * kd * (kd + alpha) * (kd + beta) * (kd + ab) /
                           (s * s * (s + 1.0) * (s - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Golub-Welsch eigenvalue solve failed");
  }
  GaussRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  double total = 0.0;
  for (Eigen::Index i = 0; i < q; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = v0 * v0;
    total += v0 * v0;
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

GaussRule polar_rule(int n, std::size_t count) {
  // t = cos(theta) turns sin^{n-1}(theta) d theta into (1 - t^2)^{(n-2)/2} dt.
  const double a = 0.5 * (n - 2);
  return gauss_jacobi(count, a, a);
}

QuadratureEstimate sphere_quadrature_zonal(int n, const std::function<double(double)>& f,
                                           std::size_t budget) {
  const GaussRule rule = polar_rule(n, budget / 2 + 1);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(std::acos(std::clamp(rule.nodes[i], -1.0, 1.0)));
  }
  return {s, 0.0};
}

QuadratureEstimate sphere_quadrature(int n, const std::function<double(const SpherePoint&)>& f,
                                     std::size_t budget, std::uint64_t seed) {
  if (budget < 2) throw std::invalid_argument("Monte-Carlo budget must be at least 2");
  const auto points = sample_uniform(n, budget, seed);
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t i = 0;
  for (const auto& p : points) {
    const double v = f(p);
    ++i;
    const double delta = v - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(budget - 1);
  return {mean, std::sqrt(var / static_cast<double>(budget))};
}

std::vector<SpherePoint> low_discrepancy_grid(int n, std::size_t count, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("grid dimension must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<SpherePoint> out;
  out.reserve(count);
  const std::size_t dim = static_cast<std::size_t>(n + 1);
  if (n == 2) {
    // Spherical Fibonacci lattice under a seeded random rotation.
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix3d g;
    for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = gauss(rng);
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
    const Eigen::Matrix3d rot = qr.householderQ();
    const double golden = 0.5 * (1.0 + std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(i) / golden, 1.0);
      const Eigen::Vector3d v = rot * Eigen::Vector3d(rho * std::cos(phi), rho * std::sin(phi), z);
      out.push_back(SpherePoint::normalized({v(0), v(1), v(2)}));
    }
    return out;
  }
  // Halton sequence in n+1 dimensions with a Cranley-Patterson shift, pushed
  // through the Gaussian quantile and normalized (rotation invariance of the
  // Gaussian makes the image uniform on the sphere).
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (dim > std::size(kPrimes)) throw std::invalid_argument("grid dimension too large");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> shift(dim);
  for (double& s : shift) s = unif(rng);
  const boost::math::normal_distribution<double> normal;
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      double h = 0.0;
      double f = 1.0;
      for (std::size_t k = i + 1; k > 0; k /= static_cast<std::size_t>(kPrimes[d])) {
        f /= kPrimes[d];
        h += f * static_cast<double>(k % static_cast<std::size_t>(kPrimes[d]));
      }
      const double u = std::clamp(std::fmod(h + shift[d], 1.0), 1e-12, 1.0 - 1e-12);
      v[d] = boost::math::quantile(normal, u);
    }
    out.push_back(SpherePoint::normalized(v));
  }
  return out;
}

}  // namespace sumlab::sphere
