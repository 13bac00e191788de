#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sumlab/sphere.hpp"

using namespace sumlab::sphere;
constexpr double kPi = std::numbers::pi;

namespace {

SpherePoint polar(double theta, double phi) {
  return SpherePoint({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
}

}  // namespace

TEST_CASE("points and distances") {
  const auto e1 = SpherePoint::basis(2, 0);
  const auto e2 = SpherePoint::basis(2, 1);
  CHECK(geodesic_distance(e1, e1) == 0.0);
  CHECK(geodesic_distance(e1, antipode(e1)) == doctest::Approx(kPi));
  CHECK(geodesic_distance(e1, e2) == doctest::Approx(kPi / 2));
  CHECK(antipode(antipode(e1)) == e1);
  CHECK(antipode(e1)[0] == -1.0);
  // Small angles keep full relative precision.
  CHECK(geodesic_distance(polar(0.0, 0.0), polar(1e-9, 0.3)) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK_THROWS_AS(SpherePoint({1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(geodesic_distance(e1, SpherePoint::basis(3, 0)), std::invalid_argument);
}

TEST_CASE("ball_measure") {
  CHECK(ball_measure(2, kPi) == doctest::Approx(1.0));
  CHECK(ball_measure(2, kPi / 2) == doctest::Approx(0.5));
  CHECK(ball_measure(2, kPi / 3) == doctest::Approx(0.25));
  CHECK(ball_measure(3, kPi / 2) == doctest::Approx(0.5));
  // S^3: (r - sin r cos r) / pi.
  for (double r : {0.1, 0.9, 2.5}) {
    CHECK(ball_measure(3, r) == doctest::Approx((r - std::sin(r) * std::cos(r)) / kPi).epsilon(1e-12));
  }
}

TEST_CASE("atomic measures") {
  AtomicMeasure mu(2);
  mu.add(SpherePoint::basis(2, 0), 0.25);
  mu.add(SpherePoint::basis(2, 1), -0.5);
  CHECK(mu.total_mass() == doctest::Approx(-0.25));
  CHECK(mu.total_variation() == doctest::Approx(0.75));
  CHECK_FALSE(mu.is_probability());
  CHECK(mu.scaled(2.0).total_mass() == doctest::Approx(-0.5));
  CHECK(mu.min_pairwise_distance() == doctest::Approx(kPi / 2));
  const auto u = AtomicMeasure::uniform({SpherePoint::basis(2, 0), SpherePoint::basis(2, 2)});
  CHECK(u.is_probability());
}

TEST_CASE("greedy_packing") {
  const auto whole = greedy_packing(2, kPi, 3);
  CHECK(whole.size() >= 1);
  CHECK(whole.size() <= 2);
  CHECK(greedy_packing(2, 2.1, 5).size() == 2);

  const double r = 0.2;
  const auto mu = greedy_packing(2, r, 7);
  const double scale = std::pow(r, -2.0);
  // Area argument: caps of radius r cover, caps of radius r/2 are disjoint.
  const double cap_r = 0.5 * (1.0 - std::cos(r));
  const double cap_half = 0.5 * (1.0 - std::cos(r / 2));
  CHECK(static_cast<double>(mu.size()) >= 1.0 / cap_r);
  CHECK(static_cast<double>(mu.size()) <= 1.0 / cap_half);
  CHECK(mu.min_pairwise_distance() >= r - 1e-12);
  const auto cert = certify_packing(mu, r);
  CHECK(cert.separated);
  CHECK(cert.maximal_on_grid);
  // The area bracket allows C up to 16 here; random sequential packing lands near 8.4.
  CHECK(cert.cardinality_constant <= 1.0 / (cap_half * scale));
  CHECK(cert.cardinality_constant == doctest::Approx(static_cast<double>(mu.size()) / scale));
  // Brute-force maximality on random probes: every point is within r of an atom.
  for (const auto& x : sample_uniform(2, 2000, 99)) {
    double best = kPi;
    for (const auto& a : mu.atoms()) best = std::min(best, geodesic_distance(x, a.point));
    CHECK(best < r);
  }
  CHECK(greedy_packing(2, r, 7).atoms().front().point == mu.atoms().front().point);
}

TEST_CASE("remove_antipodal_pairs") {
  AtomicMeasure mu(2, {{SpherePoint::basis(2, 0), 0.5}, {antipode(SpherePoint::basis(2, 0)), 0.5}});
  const auto moved = remove_antipodal_pairs(mu, 0.01);
  const double gap = geodesic_distance(moved[0].point, antipode(moved[1].point));
  CHECK(gap == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(moved.min_antipodal_gap() > 0.0);

  const auto clean = greedy_packing(2, 0.5, 2);
  const auto same = remove_antipodal_pairs(clean, 0.01);
  bool unchanged = same.size() == clean.size();
  for (std::size_t i = 0; unchanged && i < clean.size(); ++i) unchanged = same[i].point == clean[i].point;
  if (clean.min_antipodal_gap() > kAntipodalThreshold) CHECK(unchanged);
  CHECK(same.min_pairwise_distance() >= 0.5 - 0.02);
}

TEST_CASE("riemann_sum") {
  const auto y = SpherePoint::basis(2, 2);
  AtomicMeasure mu(2, {{y, 1.0}});
  CHECK(riemann_sum(mu, SpherePoint::basis(2, 0)) == doctest::Approx(std::pow(kPi / 2, -2.0)));
  CHECK(riemann_sum(mu, y) == kSingular);
  // Permutation invariance.
  const auto pts = sample_uniform(2, 5, 4);
  auto rev = pts;
  std::reverse(rev.begin(), rev.end());
  const auto x = polar(0.4, 1.1);
  CHECK(riemann_sum(AtomicMeasure::uniform(pts), x) ==
        doctest::Approx(riemann_sum(AtomicMeasure::uniform(rev), x)).epsilon(1e-14));
}

TEST_CASE("hl_maximal") {
  const auto y = SpherePoint::basis(2, 2);
  AtomicMeasure delta(2, {{y, 1.0}});
  CHECK(hl_maximal(delta, antipode(y)) == doctest::Approx(1.0));
  for (double d : {0.05, 0.6, 2.0}) {
    CHECK(hl_maximal(delta, polar(d, 0.2)) == doctest::Approx(2.0 / (1.0 - std::cos(d))).epsilon(1e-10));
  }
  CHECK(hl_maximal(delta, y) == kSingular);
  // Two atoms: brute-force sup over a fine radius grid never exceeds the exact value.
  AtomicMeasure two(2, {{polar(0.3, 0.0), 0.5}, {polar(0.9, 2.0), 0.5}});
  const auto x = SpherePoint::basis(2, 2);
  const double exact = hl_maximal(two, x);
  double brute = 0.0;
  for (int i = 1; i <= 20000; ++i) {
    const double r = kPi * i / 20000.0;
    double mass = 0.0;
    for (const auto& a : two.atoms()) mass += geodesic_distance(x, a.point) <= r ? a.weight : 0.0;
    brute = std::max(brute, mass / ball_measure(2, r));
  }
  CHECK(brute <= exact * (1 + 1e-12));
  CHECK(brute >= exact * 0.99);
}

TEST_CASE("integer_relation_probe") {
  const double a[] = {kPi, kPi / 2};
  const auto rel = integer_relation_probe(a, 2);
  REQUIRE(rel.has_value());
  CHECK(std::abs((*rel)[0] * kPi + (*rel)[1] * kPi / 2) < 1e-9);
  CHECK(std::abs((*rel)[0]) == 1);
  CHECK(std::abs((*rel)[1]) == 2);
  const double b[] = {kPi, 1.0};
  CHECK_FALSE(integer_relation_probe(b, 50).has_value());
  const double c[] = {0.731, 0.731};
  const auto same = integer_relation_probe(c, 3);
  REQUIRE(same.has_value());
  CHECK((*same)[0] == -(*same)[1]);
  // Six values go through lattice reduction.
  const double d[] = {1.0, std::sqrt(2.0), std::sqrt(3.0), 1.0 + 2.0 * std::sqrt(2.0) - std::sqrt(3.0), kPi, std::exp(1.0)};
  const auto lll = integer_relation_probe(d, 5);
  REQUIRE(lll.has_value());
  double s = 0.0;
  for (std::size_t i = 0; i < 6; ++i) s += (*lll)[i] * d[i];
  CHECK(std::abs(s) < 5e-9);
}

TEST_CASE("sample_uniform") {
  const std::size_t count = 20000;
  const auto pts = sample_uniform(3, count, 11);
  std::vector<double> mean(4, 0.0);
  for (const auto& p : pts) {
    double norm = 0.0;
    for (int i = 0; i < 4; ++i) {
      norm += p[i] * p[i];
      mean[i] += p[i] / count;
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
  for (double m : mean) CHECK(std::abs(m) < 4.0 / std::sqrt(static_cast<double>(count)));
  CHECK(sample_uniform(3, 10, 11)[7] == pts[7]);
}

TEST_CASE("low_discrepancy_grid is seeded and balanced") {
  for (int n : {2, 3}) {
    const auto g = low_discrepancy_grid(n, 4000, 3);
    CHECK(g.size() == 4000);
    CHECK(low_discrepancy_grid(n, 4000, 3)[1234] == g[1234]);
    // Fraction within pi/3 of the pole matches the cap measure.
    std::size_t inside = 0;
    const auto pole = SpherePoint::basis(n, n);
    for (const auto& p : g) inside += geodesic_distance(p, pole) < kPi / 3;
    CHECK(static_cast<double>(inside) / 4000.0 == doctest::Approx(ball_measure(n, kPi / 3)).epsilon(0.05));
  }
}

TEST_CASE("quadrature") {
  // Gauss-Legendre nodes for two points: +-1/sqrt(3), equal weights.
  const auto rule = gauss_jacobi(2, 0.0, 0.0);
  CHECK(std::abs(rule.nodes[0]) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(rule.weights[0] + rule.weights[1] == doctest::Approx(1.0));
  // Probability-normalized polar moments on S^2: E[cos^2] = 1/3; S^3: 1/4.
  for (int n : {2, 3}) {
    const auto q = polar_rule(n, 6);
    double m2 = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) m2 += q.weights[i] * q.nodes[i] * q.nodes[i];
    CHECK(m2 == doctest::Approx(1.0 / (n + 1)).epsilon(1e-13));
  }
  CHECK(sphere_quadrature_zonal(2, [](double) { return 1.0; }, 4).estimate == doctest::Approx(1.0));
  const auto z1sq = sphere_quadrature_zonal(2, [](double t) { return 9.0 * std::cos(t) * std::cos(t); }, 8);
  CHECK(z1sq.estimate == doctest::Approx(3.0));
  const auto mc = sphere_quadrature(
      2, [](const SpherePoint& p) { return 3.0 * p[2]; }, 50000, 5);
  CHECK(std::abs(mc.estimate) <= 3.0 * mc.stderr_ + 1e-12);
  CHECK(sphere_quadrature(2, [](const SpherePoint&) { return 1.0; }, 100).estimate == doctest::Approx(1.0));
}

TEST_CASE("packing CSV round trip") {
  const auto mu = greedy_packing(2, 0.7, 21);
  std::stringstream ss;
  write_packing_csv(ss, mu, "sumlab=test");
  std::string header;
  std::getline(ss, header);
  CHECK(header.rfind("# ", 0) == 0);
  CHECK(header.find("dim=2") != std::string::npos);
  CHECK(header.find("sumlab=test") != std::string::npos);
  ss.seekg(0);
  const auto back = read_packing_csv(ss);
  REQUIRE(back.size() == mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    CHECK(back[i].point == mu[i].point);
    CHECK(back[i].weight == mu[i].weight);
  }
  CHECK(back.separation.has_value());
}
