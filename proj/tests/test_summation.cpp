#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "sumlab/specfun.hpp"
#include "sumlab/summation.hpp"

using namespace sumlab::summation;
using sumlab::specfun::cesaro_number;

namespace {

std::vector<double> random_coeffs(std::mt19937_64& rng, std::size_t len) {
  std::normal_distribution<double> g;
  std::vector<double> a(len);
  for (double& v : a) v = g(rng);
  return a;
}

// Cesaro mean from the definition: weighted average of partial sums.
double cesaro_oracle(const std::vector<double>& a, double delta, int N) {
  double num = 0.0;
  double partial = 0.0;
  for (int k = 0; k <= N; ++k) {
    if (k < static_cast<int>(a.size())) partial += a[k];
    num += cesaro_number(delta - 1.0, N - k) * partial;
  }
  return num / cesaro_number(delta, N);
}

}  // namespace

TEST_CASE("apply: hand values") {
  const std::vector<double> unit{1.0};
  CHECK(sumlab::summation::apply(SummationSpec::cesaro(0.5, 4), unit) == doctest::Approx(1.0));
  CHECK(sumlab::summation::apply(SummationSpec::riesz(1.0, 0.5), unit) == doctest::Approx(1.0 - 0.0 / 0.5));
  CHECK(sumlab::summation::apply(SummationSpec::bochner_riesz(1.0, 3.0, 2), unit) == doctest::Approx(1.0));

  const std::vector<double> ones(200, 1.0);
  for (double d : {0.0, 0.5, 1.5}) {
    for (int N : {0, 3, 17}) {
      CHECK(sumlab::summation::apply(SummationSpec::cesaro(d, N), ones) == doctest::Approx((N + d + 1) / (d + 1)));
    }
  }
  const std::vector<double> two{1.0, 1.0};
  CHECK(sumlab::summation::apply(SummationSpec::riesz(1.0, 2.0), two) == doctest::Approx(1.5));
}

TEST_CASE("cesaro means against the partial-sum definition") {
  std::mt19937_64 rng(3);
  for (double d : {0.5, 1.0, 2.25}) {
    const auto a = random_coeffs(rng, 25);
    const auto means = cesaro_means(a, d, 40);
    for (int N = 0; N <= 40; ++N) CHECK(means[N] == doctest::Approx(cesaro_oracle(a, d, N)).epsilon(1e-12));
  }
}

TEST_CASE("cutoff semantics") {
  const auto riesz = SummationSpec::riesz(1.0, 3.0);
  CHECK(riesz.includes(2));
  CHECK_FALSE(riesz.includes(3));
  const auto br = SummationSpec::bochner_riesz(0.5, std::sqrt(6.0), 2);
  CHECK_FALSE(br.includes(2));  // 2 * 3 = 6 is not below R^2
  CHECK(br.includes(1));
  CHECK_THROWS_AS(SummationSpec::riesz(0.0, 2.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SummationSpec::cesaro(-1.0, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SummationSpec::quadratic_riesz(0.5, -1.0, 2.0).validate(), std::invalid_argument);
  // Included index sets grow with the cutoff.
  for (double R = 0.5; R < 20.0; R += 0.25) {
    for (int k = 0; k < 30; ++k) {
      if (SummationSpec::shifted_riesz(0.5, 0.7, R).includes(k)) {
        CHECK(SummationSpec::shifted_riesz(0.5, 0.7, R + 0.25).includes(k));
      }
      if (SummationSpec::bochner_riesz(0.5, R, 3).includes(k)) {
        CHECK(SummationSpec::bochner_riesz(0.5, R + 0.25, 3).includes(k));
      }
    }
  }
}

TEST_CASE("all methods reach the full sum for large cutoffs") {
  std::mt19937_64 rng(8);
  const auto a = random_coeffs(rng, 12);
  double total = 0.0;
  for (double v : a) total += v;
  const double big = 1e12;
  CHECK(sumlab::summation::apply(SummationSpec::cesaro(0.5, 1000000000000), a) == doctest::Approx(total).epsilon(1e-9));
  CHECK(sumlab::summation::apply(SummationSpec::riesz(0.5, big), a) == doctest::Approx(total).epsilon(1e-9));
  CHECK(sumlab::summation::apply(SummationSpec::shifted_riesz(0.5, 2.0, big), a) == doctest::Approx(total).epsilon(1e-9));
  CHECK(sumlab::summation::apply(SummationSpec::quadratic_riesz(0.5, 2.0, big), a) == doctest::Approx(total).epsilon(1e-9));
  CHECK(sumlab::summation::apply(SummationSpec::bochner_riesz(0.5, big, 2), a) == doctest::Approx(total).epsilon(1e-9));
}

TEST_CASE("shifted Riesz identity") {
  const std::vector<double> a{1.0, 1.0, 1.0};
  const auto [l, r] = shifted_riesz_identity(1.0, 0.5, 3.0, a);
  CHECK(l == doctest::Approx(r).epsilon(1e-14));
  // Hand value: k + 0.5 < 3 keeps k = 0, 1, 2.
  CHECK(l == doctest::Approx((1 - 0.5 / 3) + (1 - 1.5 / 3) + (1 - 2.5 / 3)));
  const auto [l0, r0] = shifted_riesz_identity(0.7, 0.0, 4.5, a);
  CHECK(l0 == r0);
}

TEST_CASE("Bochner-Riesz reduction") {
  const std::vector<double> unit{1.0};
  const auto [l1, r1] = bochner_riesz_reduction(3, 0.8, 2.0, unit);
  CHECK(l1 == doctest::Approx(1.0));
  CHECK(r1 == doctest::Approx(1.0));
  const std::vector<double> four(4, 1.0);
  const auto [l, r] = bochner_riesz_reduction(2, 0.5, 5.0, four);
  CHECK(l == doctest::Approx(r).epsilon(1e-14));
  // Direct: k(k+1) < 25 for k <= 4.
  double direct = 0.0;
  for (int k = 0; k < 4; ++k) direct += std::sqrt(1.0 - k * (k + 1) / 25.0);
  CHECK(l == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("delta lift") {
  std::mt19937_64 rng(5);
  const auto a = random_coeffs(rng, 10);
  CHECK(delta_lift(a, 0.5, 2.0, 0) == doctest::Approx(a[0]));
  // delta = 0, rho = 1 at N = 3: the arithmetic mean of the first four partial sums.
  const double s0 = a[0], s1 = s0 + a[1], s2 = s1 + a[2], s3 = s2 + a[3];
  CHECK(delta_lift(a, 0.0, 1.0, 3) == doctest::Approx((s0 + s1 + s2 + s3) / 4.0).epsilon(1e-14));
  for (double rho : {0.5, 1.0, 2.5}) {
    for (int N : {5, 30}) {
      CHECK(delta_lift(a, 0.5, rho, N) == doctest::Approx(cesaro_oracle(a, 0.5 + rho, N)).epsilon(1e-12));
    }
  }
}

TEST_CASE("majorization properties") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_coeffs(rng, 1 + i % 30);
    const double delta = 0.5 * (i % 4);
    const double rho = 0.1 + 2.0 * u(rng);
    const auto low = cesaro_means(a, delta, 40);
    double running = 0.0;
    for (int N = 0; N <= 40; ++N) {
      running = std::max(running, std::abs(low[N]));
      CHECK(std::abs(delta_lift(a, delta, rho, N)) <= running + 1e-10);
    }
  }
  // Single coefficient: phi-mean (1 - c/R)^{delta+rho} sits below the sup (1 - c/R)^delta.
  const std::vector<double> unit{1.0};
  CHECK(phi_mean(unit, 0.5, 1.0, 4.0, 1.0) == doctest::Approx(std::pow(0.75, 1.5)));
  CHECK(shifted_riesz_sup(unit, 0.5, 1.0, 4.0) == doctest::Approx(std::pow(0.75, 0.5)));
}

TEST_CASE("phi-mean majorization with matching order") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_coeffs(rng, 1 + i % 25);
    const double delta = 0.1 + 1.5 * u(rng);
    const double c = 3.0 * u(rng);
    const double R = 0.2 + 30.0 * u(rng);
    CHECK(std::abs(phi_mean(a, delta, c, R, 1.0)) <= shifted_riesz_sup(a, delta, c, R) + 1e-10);
  }
}

TEST_CASE("Bochner-Riesz series") {
  std::mt19937_64 rng(29);
  const double delta = 0.5;
  for (double c : {0.0, 0.5}) {
    for (double R : {3.3, 17.0, 60.0}) {
      const auto a = random_coeffs(rng, 70);
      double norm = 0.0;
      for (double v : a) norm += std::abs(v);
      const double B = sumlab::summation::apply(SummationSpec::quadratic_riesz(delta, c, R), a);
      CHECK(std::abs(B - bochner_riesz_series(a, delta, c, R, 40)) <= 1e-8 * norm);
    }
  }
}

TEST_CASE("compare_methods") {
  const std::vector<double> unit{1.0};
  const auto m = compare_methods(unit, 0.5, 10.0);
  CHECK(m.sup_cesaro == doctest::Approx(1.0));
  CHECK(m.sup_riesz == doctest::Approx(1.0));
  CHECK(m.sup_proj == doctest::Approx(1.0));
  CHECK(m.sup_cesaro <= 2.0 * (m.sup_riesz + m.sup_proj));
  std::vector<double> alt(20);
  for (int k = 0; k < 20; ++k) alt[k] = k % 2 ? -1.0 : 1.0;
  const auto ma = compare_methods(alt, 1.0, 40.0);
  CHECK(std::isfinite(ma.sup_cesaro));
  CHECK(std::isfinite(ma.sup_riesz));
  std::vector<double> scaled(alt);
  for (double& v : scaled) v *= -3.0;
  const auto ms = compare_methods(scaled, 1.0, 40.0);
  CHECK(ms.sup_cesaro == doctest::Approx(3.0 * ma.sup_cesaro));
  CHECK(ms.sup_riesz == doctest::Approx(3.0 * ma.sup_riesz));
  CHECK(ms.sup_proj == doctest::Approx(3.0 * ma.sup_proj));
}

TEST_CASE("Ingham B") {
  const auto c = ingham_b_coeffs(0.5);
  REQUIRE(c.size() == 3);
  double s = 0.0;
  for (double v : c) s += v;
  CHECK(s == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-10));
  double worst = 0.0;
  for (int k = 10; k <= 10000; k += 7) worst = std::max(worst, k * double(k) * std::abs(ingham_b_residual(0.5, c, k)));
  CHECK(worst < 1.0);
  const std::vector<double> exact{0.0, 0.0, 1.0};
  for (int k : {0, 1, 10, 33, 5000, 99999}) CHECK(ingham_b_residual(1.0, exact, k) == 0.0);
  const auto c1 = ingham_b_coeffs(1.0);
  for (int k : {1, 50, 3000}) CHECK(std::abs(ingham_b_residual(1.0, c1, k)) < 1e-9);
}

TEST_CASE("Ingham A") {
  for (double eps : {0.25, 0.5, 1.0}) {
    const auto p = ingham_a_polys(1.0, eps);
    REQUIRE(p.size() == 3);
    for (int k : {2, 40, 900}) CHECK(std::abs(ingham_a_residual(1.0, eps, p, k)) < 1e-9);
  }
  const auto p1 = ingham_a_polys(1.0, 1.0);
  CHECK(p1[0] + p1[1] + p1[2] == doctest::Approx(1.0));
  const auto p = ingham_a_polys(0.5, 0.5);
  double worst = 0.0;
  for (int k = 10; k <= 10000; k += 11) worst = std::max(worst, k * double(k) * std::abs(ingham_a_residual(0.5, 0.5, p, k)));
  CHECK(worst < 1.0);
}

TEST_CASE("gamma ratio expansion") {
  const auto g = gamma_ratio_expansion(1.5, 1.0, 6);
  for (double k : {50.0, 400.0}) {
    double s = 0.0, kp = 1.0;
    for (double v : g) {
      s += v * kp;
      kp /= k;
    }
    const double exact = std::exp(std::lgamma(k + 1.5) - std::lgamma(k + 1.0));
    CHECK(std::pow(k, 0.5) * s == doctest::Approx(exact).epsilon(1e-11));
  }
}

TEST_CASE("summability CSV") {
  std::ostringstream out;
  const std::vector<double> a{1.0, -0.5};
  write_summability_csv(out, {SummationSpec::cesaro(0.5, 2), SummationSpec::riesz(0.5, 1.5)}, a, "# meta");
  const std::string text = out.str();
  CHECK(text.rfind("# meta\nmethod,delta,c,cutoff,value\n", 0) == 0);
}
