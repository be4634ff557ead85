#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "test_support.hpp"
#include "wegnerlab/errors.hpp"
#include "wegnerlab/symbol.hpp"

using namespace wegnerlab;
using wegnerlab::test::field1d;
using wegnerlab::test::field2d;

TEST_CASE("coefficient field support radius and validation") {
  const auto alpha = field1d({{0, 2.0}, {3, -1.0}, {1, 0.0}});
  CHECK(alpha.support_radius() == 3);
  CHECK(alpha.values().size() == 2);  // zero entry dropped
  CHECK(alpha.at({1}) == 0.0);
  CHECK_THROWS_AS(CoefficientField(1, {{{0}, 0.0}}), InvalidGeometry);
  CHECK_THROWS_AS(CoefficientField(2, {{{0}, 1.0}}), InvalidGeometry);
}

TEST_CASE("symbol evaluation examples") {
  const auto delta = field1d({{0, 1.0}});
  CHECK(evaluate_symbol(delta, {0.0}) == std::complex<double>(1.0, 0.0));
  CHECK(evaluate_symbol(delta, {2.1}).real() == doctest::Approx(1.0));

  CHECK(evaluate_symbol(field1d({{0, 2.0}, {1, -1.0}}), {0.0}).real() ==
        doctest::Approx(1.0));
  CHECK(std::abs(evaluate_symbol(field1d({{0, 1.0}, {1, -1.0}}), {0.0})) ==
        doctest::Approx(0.0));
}

TEST_CASE("symbol evaluation agrees with a DFT of the coefficients") {
  const auto alpha = field1d({{0, 1.0}, {1, -0.4}, {-2, 0.7}});
  const int N = 16;
  for (int n = 0; n < N; ++n) {
    // Direct DFT over an embedding of alpha into Z/NZ.
    std::complex<double> dft = 0.0;
    for (const auto& [k, v] : alpha.values()) {
      const double phase = -2.0 * std::numbers::pi * n * k[0] / N;
      dft += v * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    const auto sym =
        evaluate_symbol(alpha, {2.0 * std::numbers::pi * n / N});
    CHECK(std::abs(sym - dft) <= 1e-12);
  }
}

TEST_CASE("diagonal dominance examples") {
  CHECK(check_diagonal_dominance(field1d({{0, 2.0}, {1, -1.0}})));
  CHECK_FALSE(check_diagonal_dominance(field1d({{0, 1.0}, {1, -1.0}})));
  CHECK(check_diagonal_dominance(field1d({{0, 1.0}, {1, -0.4}, {-1, -0.4}})));
}

TEST_CASE("dominant fields certify on a fine grid") {
  Xoshiro256PlusPlus rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    std::map<LatticePoint, double> values;
    double off_sum = 0.0;
    const int width = 1 + static_cast<int>(rng.uniform() * 3);
    for (int k = -width; k <= width; ++k) {
      if (k == 0) continue;
      const double v = (rng.uniform() - 0.5) * 0.4;
      values[{k}] = v;
      off_sum += std::abs(v);
    }
    values[{0}] = off_sum + 0.2 + rng.uniform();
    const CoefficientField alpha(1, values);
    REQUIRE(check_diagonal_dominance(alpha));
    const auto cert = certify_nonvanishing(alpha, 512);
    CHECK(cert.nonvanishing);
    CHECK(cert.certified_lower_bound > 0.0);
  }
}

TEST_CASE("certificate examples") {
  const auto cert = certify_nonvanishing(field1d({{0, 2.0}, {1, -1.0}}), 256);
  CHECK(cert.min_modulus_on_grid == doctest::Approx(1.0));
  CHECK(cert.lipschitz_bound == doctest::Approx(1.0));
  CHECK(cert.certified_lower_bound > 0.0);
  CHECK(cert.nonvanishing);
  CHECK_FALSE(cert.definitely_vanishing);

  // Symbol vanishing exactly at theta = 0, which every grid contains.
  const auto bad = certify_nonvanishing(field1d({{0, 1.0}, {1, -1.0}}), 64);
  CHECK(bad.min_modulus_on_grid == 0.0);
  CHECK_FALSE(bad.nonvanishing);
  CHECK(bad.definitely_vanishing);

  const auto flat = certify_nonvanishing(field1d({{0, 1.0}}), 2);
  CHECK(flat.certified_lower_bound == doctest::Approx(1.0));
  CHECK(flat.nonvanishing);
}

TEST_CASE("wiener inverse of the identity") {
  const auto wiener = wiener_inverse(field1d({{0, 1.0}}), 1e-10);
  CHECK(wiener.at({0}) == doctest::Approx(1.0));
  CHECK(wiener.column_sum_norm == doctest::Approx(1.0));
  CHECK(wiener.tail_bound <= 1e-10);
}

TEST_CASE("wiener inverse geometric series") {
  const auto wiener = wiener_inverse(field1d({{0, 2.0}, {1, -1.0}}), 1e-10);
  for (int n = 0; n <= 20; ++n)
    CHECK(wiener.at({n}) == doctest::Approx(std::pow(2.0, -(n + 1))).epsilon(1e-10));
  for (int n = 1; n <= 20; ++n) CHECK(std::abs(wiener.at({-n})) <= 1e-12);
  CHECK(wiener.column_sum_norm == doctest::Approx(1.0));
  CHECK(wiener.tail_bound <= 1e-10);
}

TEST_CASE("wiener inverse against a dense Laurent section oracle") {
  // Oracle: invert a large banded section of the Laurent matrix of alpha and
  // read the central row; far from the section boundary it agrees with the
  // Laurent inverse coefficients.
  const auto alpha = field1d({{0, 1.0}, {1, -0.5}});
  const int half = 100;
  const int n = 2 * half + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) A(j, k) = alpha.at({j - k});
  const Eigen::MatrixXd Ainv = A.inverse();

  const auto wiener = wiener_inverse(alpha, 1e-10);
  CHECK(wiener.column_sum_norm == doctest::Approx(2.0));
  for (int m = -20; m <= 20; ++m)
    CHECK(wiener.at({m}) ==
          doctest::Approx(Ainv(half + m, half)).epsilon(1e-9));
}

TEST_CASE("deconvolution identity on the stored window") {
  const double tol = 1e-10;
  for (const auto& alpha :
       {field1d({{0, 2.0}, {1, -1.0}}), field1d({{0, 1.0}, {1, -0.5}}),
        field1d({{0, 1.0}, {1, -0.4}, {-1, -0.4}}),
        field1d({{0, 3.0}, {2, 1.0}, {-1, -0.5}})}) {
    const auto wiener = wiener_inverse(alpha, tol);
    double worst = 0.0;
    for (int m = -wiener.truncation_radius; m <= wiener.truncation_radius;
         ++m) {
      double conv = 0.0;
      for (const auto& [k, v] : alpha.values()) conv += v * wiener.at({m - k[0]});
      worst = std::max(worst, std::abs(conv - (m == 0 ? 1.0 : 0.0)));
    }
    CHECK(worst <= 10.0 * tol);
  }
}

TEST_CASE("column sum estimates are monotone in the truncation radius") {
  const auto wiener = wiener_inverse(field1d({{0, 1.0}, {1, -0.5}}), 1e-10);
  double prev = 0.0;
  for (int rho = 0; rho <= wiener.truncation_radius; ++rho) {
    double partial = 0.0;
    for (int m = -rho; m <= rho; ++m) partial += std::abs(wiener.at({m}));
    CHECK(partial >= prev);
    prev = partial;
  }
  CHECK(prev == doctest::Approx(wiener.column_sum_norm));
}

TEST_CASE("wiener inverse in two dimensions") {
  const auto alpha = field2d({{{0, 0}, 2.0}, {{1, 0}, -0.5}, {{0, 1}, -0.5}});
  const auto wiener = wiener_inverse(alpha, 1e-10);
  CHECK(wiener.dim == 2);
  // The inverse of 1/symbol at theta = 0 fixes the total beta sum.
  double sum = 0.0;
  for (const auto& [k, v] : wiener.beta) sum += v;
  CHECK(sum == doctest::Approx(1.0));  // 1 / symbol(0) = 1 / (2 - 1)
  CHECK(wiener.tail_bound <= 1e-10);
}

TEST_CASE("vanishing symbol is rejected") {
  CHECK_THROWS_AS(wiener_inverse(field1d({{0, 1.0}, {1, -1.0}}), 1e-10),
                  SymbolVanishes);
}

TEST_CASE("near-vanishing symbol exhausts the grid cap") {
  // Decay rate so close to 1 that the norm estimates cannot settle.
  CHECK_THROWS_AS(wiener_inverse(field1d({{0, 1.0}, {1, -0.9999999}}), 1e-10),
                  NoConvergence);
}

TEST_CASE("coefficient serialization round trip") {
  const auto alpha = field1d({{0, 1.5}, {2, -0.25}, {-3, 1e-7}});
  std::istringstream in(alpha.serialize());
  const auto back = CoefficientField::parse(1, in);
  CHECK(back.values() == alpha.values());
  CHECK(back.support_radius() == alpha.support_radius());

  std::istringstream commented("# header\n0 0 2.0\n1 -1 -0.5  # tail\n\n");
  const auto parsed = CoefficientField::parse(2, commented);
  CHECK(parsed.at({0, 0}) == 2.0);
  CHECK(parsed.at({1, -1}) == -0.5);

  std::istringstream broken("0\n");
  CHECK_THROWS_AS(CoefficientField::parse(1, broken), ConfigError);
}
