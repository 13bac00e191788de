#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "sumlab/specfun.hpp"

using namespace sumlab::specfun;

namespace {

// Legendre polynomials written out.
double legendre(int k, double t) {
  switch (k) {
    case 0: return 1.0;
    case 1: return t;
    case 2: return 0.5 * (3 * t * t - 1);
    case 3: return 0.5 * (5 * t * t * t - 3 * t);
    case 4: return (35 * std::pow(t, 4) - 30 * t * t + 3) / 8.0;
    default: throw std::logic_error("legendre oracle covers k <= 4");
  }
}

// Generalized binomial via the gamma function of the C library.
double binom_oracle(double top, double k) {
  return std::exp(std::lgamma(top + 1) - std::lgamma(k + 1) - std::lgamma(top - k + 1));
}

}  // namespace

TEST_CASE("log_gamma anchors") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(log_gamma(2.0)) < 1e-14);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_gamma against the C library") {
  for (double x : {0.01, 0.3, 1.7, 5.5, 33.3, 250.0, 1e4, 3.7e6}) {
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("log_gamma_ratio keeps precision for large arguments") {
  // ln(Gamma(x+1)/Gamma(x)) = ln x exactly.
  for (double x : {3.5, 120.25, 1e5, 1e9}) {
    CHECK(log_gamma_ratio(x + 1.0, x) == doctest::Approx(std::log(x)).epsilon(1e-14));
  }
  CHECK(log_gamma_ratio(7.25, 7.25) == 0.0);
}

TEST_CASE("cesaro_number") {
  CHECK(cesaro_number(0.37, 0) == 1.0);
  CHECK(cesaro_number(1.0, 5) == 6.0);
  CHECK(cesaro_number(0.5, 2) == doctest::Approx(1.875));
  CHECK(cesaro_number(0.0, 1000) == 1.0);
  CHECK(cesaro_number(1.0, 123456) == 123457.0);
  CHECK(cesaro_number(2.0, 99) == 5050.0);
  for (double d : {-0.5, 0.5, 1.5, 2.75}) {
    for (int k : {3, 31, 33, 200, 5000}) {
      // Boost's gamma ratio avoids the cancellation of differenced lgamma values.
      const double oracle = 1.0 / (boost::math::tgamma_delta_ratio(k + 1.0, d) * boost::math::tgamma(d + 1.0));
      CHECK(cesaro_number(d, k) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(cesaro_number(-1.0, 3), std::domain_error);
  CHECK_THROWS_AS(cesaro_number(0.5, -1), std::domain_error);
}

TEST_CASE("cesaro_ratios match direct quotients and survive large N") {
  const auto w = cesaro_ratios(0.5, 40);
  REQUIRE(w.size() == 41);
  for (int k = 0; k <= 40; ++k) {
    CHECK(w[k] == doctest::Approx(cesaro_number(0.5, 40 - k) / cesaro_number(0.5, 40)).epsilon(1e-13));
  }
  const auto big = cesaro_ratios(1.5, 2000000);
  CHECK(big.front() == 1.0);
  CHECK(big.back() == doctest::Approx(1.0 / binom_oracle(2000000 + 1.5, 2000000)).epsilon(1e-10));
}

TEST_CASE("gen_binomial") {
  CHECK(gen_binomial(0.5, 0) == 1.0);
  CHECK(gen_binomial(0.5, 1) == 0.5);
  CHECK(gen_binomial(0.5, 2) == doctest::Approx(-0.125));
  CHECK(gen_binomial(3.0, 4) == 0.0);
  CHECK(gen_binomial(5.0, 2) == 10.0);
}

TEST_CASE("harmonic_dimension") {
  // n = 2: 2k + 1; n = 3: (k + 1)^2.
  for (int k = 0; k <= 50; ++k) {
    CHECK(harmonic_dimension(2, k) == static_cast<std::uint64_t>(2 * k + 1));
    CHECK(harmonic_dimension(3, k) == static_cast<std::uint64_t>((k + 1) * (k + 1)));
  }
  CHECK(harmonic_dimension(2, 2) == 5);
  CHECK(harmonic_dimension(4, 1) == 5);
  CHECK(harmonic_dimension(4, 2) == 14);
}

TEST_CASE("jacobi_eval") {
  const JacobiParams p{0.3, 1.2};
  CHECK(jacobi_eval(p, 0, 0.4) == 1.0);
  CHECK(jacobi_eval({0.0, 0.0}, 2, 0.0) == doctest::Approx(-0.5));
  for (int k = 0; k <= 8; ++k) {
    CHECK(jacobi_eval(p, k, 1.0) == doctest::Approx(binom_oracle(k + p.alpha, k)).epsilon(1e-13));
  }
  // Legendre special case at interior points.
  for (int k = 0; k <= 4; ++k) {
    for (double t : {-0.9, -0.2, 0.35, 0.8}) {
      CHECK(jacobi_eval({0.0, 0.0}, k, t) == doctest::Approx(legendre(k, t)).epsilon(1e-14));
    }
  }
  // P_1 = (alpha+1) + (alpha+beta+2)(t-1)/2.
  CHECK(jacobi_eval(p, 1, 0.25) == doctest::Approx(1.3 + 3.5 * (-0.375)));
  // Symmetry P_k^{(a,b)}(-t) = (-1)^k P_k^{(b,a)}(t).
  for (int k = 0; k <= 10; ++k) {
    CHECK(jacobi_eval(p, k, -0.6) ==
          doctest::Approx((k % 2 ? -1.0 : 1.0) * jacobi_eval({p.beta, p.alpha}, k, 0.6)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(jacobi_eval(p, 3, 1.5), std::domain_error);
  CHECK_THROWS_AS(jacobi_eval({-1.0, 0.0}, 3, 0.5), std::domain_error);
}

TEST_CASE("jacobi_sequence agrees with single evaluations") {
  std::vector<double> out(30);
  const JacobiParams p{1.5, 0.0};
  jacobi_sequence(p, 0.17, out);
  for (int k = 0; k < 30; ++k) CHECK(out[k] == doctest::Approx(jacobi_eval(p, k, 0.17)).epsilon(1e-13));
}

TEST_CASE("gegenbauer") {
  CHECK(gegenbauer_eval(0.8, 0, 0.1) == 1.0);
  CHECK(gegenbauer_eval(0.5, 2, 1.0) == doctest::Approx(1.0));
  CHECK(gegenbauer_eval(0.5, 2, 0.0) == doctest::Approx(-0.5));
  // C_1^l = 2 l t, C_2^l = 2 l (l+1) t^2 - l.
  for (double l : {0.5, 1.0, 1.5}) {
    for (double t : {-0.7, 0.0, 0.45}) {
      CHECK(gegenbauer_eval(l, 1, t) == doctest::Approx(2 * l * t).epsilon(1e-14));
      CHECK(gegenbauer_eval(l, 2, t) == doctest::Approx(2 * l * (l + 1) * t * t - l).epsilon(1e-13));
    }
  }
  // C_k^1(cos x) = sin((k+1)x)/sin x.
  for (int k = 0; k <= 60; k += 7) {
    const double x = 0.77;
    CHECK(gegenbauer_recurrence(1.0, k, std::cos(x)) ==
          doctest::Approx(std::sin((k + 1) * x) / std::sin(x)).epsilon(1e-12));
  }
  // Jacobi route and direct recurrence agree.
  for (double l : {0.5, 1.0, 1.5}) {
    for (int k : {0, 3, 17, 80}) {
      CHECK(gegenbauer_eval(l, k, 0.31) == doctest::Approx(gegenbauer_recurrence(l, k, 0.31)).epsilon(1e-10));
    }
  }
}

TEST_CASE("critical index") {
  CHECK(critical_index(2) == 0.5);
  CHECK(critical_index(3) == 1.0);
  CHECK(critical_index(4) == 1.5);
}
