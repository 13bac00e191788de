#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "sumlab/specfun.hpp"
#include "sumlab/summation.hpp"

namespace sumlab::summation {

namespace {

double bernoulli_number(int j) {
  if (j == 1) return -0.5;
  if (j % 2 == 1) return 0.0;
  return boost::math::bernoulli_b2n<double>(j / 2);
}

double bernoulli_poly(int j, double x) {
  double s = 0.0;
  for (int i = 0; i <= j; ++i) {
    s += boost::math::binomial_coefficient<double>(static_cast<unsigned>(j), static_cast<unsigned>(i)) *
         bernoulli_number(i) * std::pow(x, j - i);
  }
  return s;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
  cod.setThreshold(1e-12);
  return cod.solve(rhs);
}

int order_count_b(double delta) { return static_cast<int>(std::ceil(delta)) + 2; }
int order_count_a(double delta) { return static_cast<int>(std::ceil(delta)) + 1; }

}  // namespace

std::vector<double> gamma_ratio_expansion(double a, double b, int order) {
  // log(Gamma(k+a)/Gamma(k+b)) = (a-b) log k + sum_j L_j k^{-j} with
  // L_j = (-1)^{j+1} (B_{j+1}(a) - B_{j+1}(b)) / (j(j+1)); exponentiate the
  // series through g_i = (1/i) sum_j j L_j g_{i-j}.
  std::vector<double> L(static_cast<std::size_t>(order), 0.0);
  for (int j = 1; j < order; ++j) {
    L[static_cast<std::size_t>(j)] = (j % 2 == 1 ? 1.0 : -1.0) *
                                     (bernoulli_poly(j + 1, a) - bernoulli_poly(j + 1, b)) / (j * (j + 1.0));
  }
  std::vector<double> g(static_cast<std::size_t>(order), 0.0);
  if (order > 0) g[0] = 1.0;
  for (int i = 1; i < order; ++i) {
    double s = 0.0;
    for (int j = 1; j <= i; ++j) s += j * L[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(i - j)];
    g[static_cast<std::size_t>(i)] = s / i;
  }
  return g;
}

std::vector<double> ingham_b_coeffs(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("Ingham B needs delta > 0");
  const int m = order_count_b(delta);
  // A_k^delta = k^delta / Gamma(delta+1) * sum_i g_i k^{-i};
  // (k + j/m)^delta = k^delta * sum_i binom(delta, i) (j/m)^i k^{-i}.
  const auto g = gamma_ratio_expansion(delta + 1.0, 1.0, m);
  const double inv_gamma = std::exp(-specfun::log_gamma(delta + 1.0));
  Eigen::MatrixXd M(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs(i) = g[static_cast<std::size_t>(i)] * inv_gamma;
    for (int j = 1; j <= m; ++j) {
      M(i, j - 1) = specfun::gen_binomial(delta, i) * std::pow(static_cast<double>(j) / m, i);
    }
  }
  const Eigen::VectorXd c = min_norm_solve(M, rhs);
  return {c.data(), c.data() + c.size()};
}

double ingham_b_residual(double delta, const std::vector<double>& c, std::int64_t k) {
  const double m = static_cast<double>(c.size());
  const double kd = static_cast<double>(k);
  double s = 0.0;
  for (std::size_t j = 1; j <= c.size(); ++j) s += c[j - 1] * std::pow(kd + static_cast<double>(j) / m, delta);
  return specfun::cesaro_number(delta, k) - s;
}

std::vector<double> ingham_a_polys(double delta, double eps) {
  if (!(delta > 0.0)) throw std::invalid_argument("Ingham A needs delta > 0");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("Ingham A needs 0 < eps <= 1");
  const int m = order_count_a(delta);
  const int orders = m + 1;
  // A_{k-j}^delta = Gamma(k-j+delta+1) / (Gamma(k-j+1) Gamma(delta+1)), expanded in k.
  const double inv_gamma = std::exp(-specfun::log_gamma(delta + 1.0));
  Eigen::MatrixXd M(orders, m + 1);
  Eigen::VectorXd rhs(orders);
  for (int j = 0; j <= m; ++j) {
    const auto g = gamma_ratio_expansion(delta + 1.0 - j, 1.0 - j, orders);
    for (int i = 0; i < orders; ++i) M(i, j) = g[static_cast<std::size_t>(i)] * inv_gamma;
  }
  for (int i = 0; i < orders; ++i) rhs(i) = specfun::gen_binomial(delta, i) * std::pow(eps, i);
  const Eigen::VectorXd p = min_norm_solve(M, rhs);
  return {p.data(), p.data() + p.size()};
}

double ingham_a_residual(double delta, double eps, const std::vector<double>& p, std::int64_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const std::int64_t idx = k - static_cast<std::int64_t>(j);
    if (idx >= 0) s += p[j] * specfun::cesaro_number(delta, idx);
  }
  return std::pow(static_cast<double>(k) + eps, delta) - s;
}

}  // namespace sumlab::summation
