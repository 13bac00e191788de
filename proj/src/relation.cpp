#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "sumlab/sphere.hpp"

namespace sumlab::sphere {

namespace {

using Relation = std::vector<std::int64_t>;

std::int64_t max_norm(const Relation& q) {
  std::int64_t m = 0;
  for (auto v : q) m = std::max(m, std::abs(v));
  return m;
}

// Sign convention: the first nonzero entry is positive.
void canonicalize(Relation& q) {
  for (auto v : q) {
    if (v == 0) continue;
    if (v < 0) {
      for (auto& w : q) w = -w;
    }
    return;
  }
}

bool better(const Relation& a, const Relation& b) {
  const auto na = max_norm(a);
  const auto nb = max_norm(b);
  if (na != nb) return na < nb;
  return a > b;
}

double residual(std::span<const double> v, const Relation& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) s += static_cast<long double>(q[i]) * v[i];
  return static_cast<double>(std::abs(s));
}

// Enumerates all prefixes q_1..q_{L-1} and, for each, the one or two values
// of q_L that can bring the sum near zero. Equivalent to full enumeration
// of the box, at height^{L-1} cost.
std::optional<Relation> exhaustive(std::span<const double> v, int height, double tol) {
  const std::size_t L = v.size();
  std::optional<Relation> best;
  Relation q(L, -height);
  auto consider = [&](Relation cand) {
    if (std::all_of(cand.begin(), cand.end(), [](auto x) { return x == 0; })) return;
    if (max_norm(cand) > height) return;
    if (!(residual(v, cand) < tol)) return;
    canonicalize(cand);
    if (!best || better(cand, *best)) best = cand;
  };
  if (L == 1) {
    if (std::abs(v[0]) < tol) return Relation{1};
    return std::nullopt;
  }
  std::fill(q.begin(), q.end() - 1, -height);
  while (true) {
    long double partial = 0.0L;
    for (std::size_t i = 0; i + 1 < L; ++i) partial += static_cast<long double>(q[i]) * v[i];
    const double last = v[L - 1];
    if (last != 0.0) {
      const double x = static_cast<double>(-partial / last);
      if (std::abs(x) <= height + 1.0) {
        for (double c : {std::floor(x), std::ceil(x)}) {
          q[L - 1] = static_cast<std::int64_t>(c);
          consider(q);
        }
      }
    } else {
      q[L - 1] = 0;
      consider(q);
      q[L - 1] = 1;
      consider(q);
    }
    std::size_t k = 0;
    while (k + 1 < L && ++q[k] > height) q[k++] = -height;
    if (k + 1 == L) break;
  }
  return best;
}

// Textbook LLL (delta = 0.99) on the rows of b, Gram-Schmidt recomputed after
// every change. The dimensions here are tiny.
void lll_reduce(std::vector<std::vector<double>>& b) {
  const std::size_t m = b.size();
  const std::size_t d = b.front().size();
  auto dot = [d](const std::vector<double>& x, const std::vector<double>& y) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < d; ++i) s += static_cast<long double>(x[i]) * y[i];
    return static_cast<double>(s);
  };
  std::vector<std::vector<double>> bs(m, std::vector<double>(d));
  std::vector<std::vector<double>> mu(m, std::vector<double>(m, 0.0));
  std::vector<double> norms(m);
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      bs[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = norms[j] > 0.0 ? dot(b[i], bs[j]) / norms[j] : 0.0;
        for (std::size_t t = 0; t < d; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      norms[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < m && guard++ < 100000) {
    for (std::size_t j = k; j-- > 0;) {
      const double r = std::round(mu[k][j]);
      if (r != 0.0) {
        for (std::size_t t = 0; t < d; ++t) b[k][t] -= r * b[j][t];
        gram_schmidt();
      }
    }
    if (norms[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

std::optional<Relation> lattice(std::span<const double> v, int height, double tol) {
  const std::size_t L = v.size();
  // Rows (e_i, W v_i): short vectors have small integer part and small W |q.v|.
  const double weight = 1.0 / tol;
  std::vector<std::vector<double>> basis(L, std::vector<double>(L + 1, 0.0));
  for (std::size_t i = 0; i < L; ++i) {
    basis[i][i] = 1.0;
    basis[i][L] = weight * v[i];
  }
  lll_reduce(basis);
  std::optional<Relation> best;
  for (const auto& row : basis) {
    Relation q(L);
    for (std::size_t i = 0; i < L; ++i) q[i] = static_cast<std::int64_t>(std::llround(row[i]));
    if (max_norm(q) == 0 || max_norm(q) > height) continue;
    if (!(residual(v, q) < tol)) continue;
    canonicalize(q);
    if (!best || better(q, *best)) best = q;
  }
  return best;
}

}  // namespace

std::optional<std::vector<std::int64_t>> integer_relation_probe(std::span<const double> values,
                                                                int height) {
  if (height < 1) throw std::invalid_argument("relation height must be at least 1");
  if (values.empty()) return std::nullopt;
  const double tol = 1e-9 * height;
  if (values.size() <= 4) return exhaustive(values, height, tol);
  return lattice(values, height, tol);
}

}  // namespace sumlab::sphere
