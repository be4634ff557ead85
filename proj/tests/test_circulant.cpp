#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "test_support.hpp"
#include "wegnerlab/circulant.hpp"
#include "wegnerlab/errors.hpp"
#include "wegnerlab/model.hpp"

using namespace wegnerlab;
using wegnerlab::test::field1d;
using wegnerlab::test::field2d;
using wegnerlab::test::product_field;

namespace {

double inverse_residual(const CirculantOperator& A, const CirculantOperator& B) {
  const Eigen::MatrixXd a = A.to_dense();
  const Eigen::MatrixXd b = B.to_dense();
  return (a * b - Eigen::MatrixXd::Identity(a.rows(), a.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

TEST_CASE("build_circulant examples") {
  // Delta sequence periodizes to the identity.
  const auto id = build_circulant(field1d({{0, 1.0}}), 3, 0);
  CHECK((id.to_dense() - Eigen::MatrixXd::Identity(7, 7)).norm() == 0.0);

  const auto A = build_circulant(field1d({{0, 2.0}, {1, -1.0}}), 2, 1);
  CHECK(A.size() == 7);
  CHECK(A.generating_at({0}) == 2.0);
  CHECK(A.generating_at({1}) == -1.0);
  CHECK(A.generating_at({2}) == 0.0);
  CHECK(A.generating_at({-1}) == 0.0);
  for (std::int64_t ni = 0; ni < 7; ++ni) {
    const int n = A.index_box().point_at(ni)[0];
    const std::complex<double> expected =
        2.0 - std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * n / 7.0));
    CHECK(std::abs(A.dft_eigenvalues()[ni] - expected) <= 1e-14);
  }
  CHECK(A.min_eigenvalue_modulus() == doctest::Approx(1.0));

  const auto A2 = build_circulant(field1d({{0, 1.0}, {1, -0.5}}), 2, 1);
  CHECK(A2.generating_at({0}) == 1.0);
  CHECK(A2.generating_at({1}) == -0.5);
}

TEST_CASE("build_circulant geometry errors") {
  const auto alpha = field1d({{0, 2.0}, {1, -1.0}});
  CHECK_THROWS_AS(build_circulant(alpha, 1, 1), InvalidGeometry);  // l <= R
  CHECK_THROWS_AS(build_circulant(alpha, 3, 0), InvalidGeometry);  // R < D
}

TEST_CASE("rectangle condition examples") {
  const auto alpha = field1d({{0, 2.0}, {1, -1.0}});
  const auto A = build_circulant(alpha, 2, 1);
  CHECK(verify_rectangle_condition(A, alpha, 2, 0, 1));

  const auto delta = field1d({{0, 1.0}});
  CHECK(verify_rectangle_condition(build_circulant(delta, 3, 0), delta, 3, 0, 0));

  const auto alpha2 = product_field(field1d({{0, 1.0}, {1, -0.5}}),
                                    field1d({{0, 1.0}, {1, -0.5}}));
  const auto A2 = build_circulant(alpha2, 2, 1);
  CHECK(verify_rectangle_condition(A2, alpha2, 2, 0, 1));

  CHECK_THROWS_AS(verify_rectangle_condition(A, alpha, 2, 0, 2),
                  InvalidGeometry);  // R != r + D
}

TEST_CASE("invert_circulant examples") {
  const auto id = build_circulant(field1d({{0, 1.0}}), 3, 0);
  CHECK((invert_circulant(id).to_dense() - Eigen::MatrixXd::Identity(7, 7))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);

  const auto A = build_circulant(field1d({{0, 2.0}, {1, -1.0}}), 2, 1);
  const auto B = invert_circulant(A);
  // Periodized geometric series: b_m = 2^-(m+1) * 128/127 for offsets 0..6.
  for (int m = 0; m < 7; ++m)
    CHECK(B.generating_at({m}) ==
          doctest::Approx(std::pow(2.0, -(m + 1)) * 128.0 / 127.0));
  CHECK(B.column_sum_norm() == doctest::Approx(1.0));
  CHECK(inverse_residual(A, B) <= 1e-10);

  const auto singular = CirculantOperator::from_symbol(
      field1d({{0, 1.0}, {1, -1.0}}), 3);
  CHECK_THROWS_AS(invert_circulant(singular), SingularCirculant);
}

TEST_CASE("fold_laurent_inverse examples") {
  WienerInverse delta;
  delta.dim = 1;
  delta.beta = {{{0}, 1.0}};
  delta.truncation_radius = 0;
  delta.column_sum_norm = 1.0;
  const auto folded = fold_laurent_inverse(delta, 2, 0);
  CHECK((folded.to_dense() - Eigen::MatrixXd::Identity(5, 5)).norm() == 0.0);

  const auto alpha = field1d({{0, 2.0}, {1, -1.0}});
  const auto wiener = wiener_inverse(alpha, 1e-10);
  const auto fold = fold_laurent_inverse(wiener, 2, 1);
  const auto direct = invert_circulant(build_circulant(alpha, 2, 1));
  CHECK((fold.to_dense() - direct.to_dense()).cwiseAbs().maxCoeff() <= 1e-10);

  const auto alpha2 = field1d({{0, 1.0}, {1, -0.5}});
  const auto wiener2 = wiener_inverse(alpha2, 1e-10);
  const auto fold2 = fold_laurent_inverse(wiener2, 3, 1);
  const auto direct2 = invert_circulant(build_circulant(alpha2, 3, 1));
  CHECK((fold2.to_dense() - direct2.to_dense()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("eta_from_omega examples") {
  const auto alpha = field1d({{0, 1.0}, {1, -0.5}});
  // Q_2 fixture (l = R = 1): the geometry of the worked example.
  const auto A = CirculantOperator::from_symbol(alpha, 2);

  const std::vector<double> zero(5, 0.0);
  CHECK(eta_from_omega(A, zero).values == zero);

  std::vector<double> indicator(5, 0.0);
  indicator[A.index_box().index_of({-2})] = 1.0;
  const auto eta = eta_from_omega(A, indicator);
  CHECK(eta.values[A.index_box().index_of({-2})] == 1.0);
  CHECK(eta.values[A.index_box().index_of({-1})] == -0.5);
  CHECK(eta.values[A.index_box().index_of({0})] == 0.0);
  CHECK(eta.values[A.index_box().index_of({1})] == 0.0);
  CHECK(eta.values[A.index_box().index_of({2})] == 0.0);

  const auto id = CirculantOperator::from_symbol(field1d({{0, 1.0}}), 2);
  Xoshiro256PlusPlus rng(3);
  const auto omega = test::random_vector(rng, 5, -1.0, 1.0);
  CHECK(eta_from_omega(id, omega).values == omega);

  CHECK_THROWS_AS(eta_from_omega(A, std::vector<double>(4, 0.0)),
                  InvalidGeometry);
}

TEST_CASE("column_sum_norm examples") {
  CHECK(column_sum_norm(CirculantOperator::from_symbol(field1d({{0, 1.0}}), 2)) ==
        1.0);
  const auto alpha = field1d({{0, 2.0}, {1, -1.0}});
  CHECK(column_sum_norm(invert_circulant(build_circulant(alpha, 2, 1))) ==
        doctest::Approx(1.0));
  CHECK(column_sum_norm(CirculantOperator::from_symbol(
            field1d({{0, 1.0}, {1, -0.5}}), 3)) == 1.5);
}

TEST_CASE("circulant suite invariants") {
  struct Instance {
    CoefficientField alpha;
    int l;
  };
  const std::vector<Instance> suite = {
      {field1d({{0, 2.0}, {1, -1.0}}), 2},
      {field1d({{0, 2.0}, {1, -1.0}}), 5},
      {field1d({{0, 1.0}, {1, -0.5}}), 4},
      {field1d({{0, 1.0}, {1, -0.4}, {-1, -0.4}}), 6},
      {field1d({{0, 3.0}, {1, 1.0}, {2, -1.0}}), 8},
      {product_field(field1d({{0, 1.0}, {1, -0.5}}),
                     field1d({{0, 1.0}, {1, -0.5}})), 3},
      {field2d({{{0, 0}, 4.0}, {{1, 0}, -1.0}, {{0, 1}, -1.0}}), 4},
  };
  for (const auto& [alpha, l] : suite) {
    CAPTURE(l);
    const int R = alpha.support_radius();  // r = 0 (v = delta)
    const auto A = build_circulant(alpha, l, R);
    const auto B = invert_circulant(A);
    const auto wiener = wiener_inverse(alpha, 1e-10);
    const auto folded = fold_laurent_inverse(wiener, l, R);

    CHECK(verify_rectangle_condition(A, alpha, l, 0, R));
    CHECK(inverse_residual(A, B) <= 1e-10);
    CHECK(B.column_sum_norm() <=
          wiener.column_sum_norm + wiener.tail_bound + 1e-12);
    CHECK((folded.to_dense() - B.to_dense()).cwiseAbs().maxCoeff() <=
          wiener.tail_bound + 1e-12);

    // A and B round-trip coupling vectors.
    Xoshiro256PlusPlus rng(17);
    const auto omega =
        test::random_vector(rng, static_cast<std::size_t>(A.size()), -1.0, 1.0);
    const auto eta = eta_from_omega(A, omega);
    const auto back = B.apply(eta.values);
    for (std::size_t i = 0; i < omega.size(); ++i)
      CHECK(back[i] == doctest::Approx(omega[i]).epsilon(1e-10));
  }
}

TEST_CASE("sign-definite folding preserves the norm exactly") {
  // All beta of 1/(2 - z) are positive, so periodization cannot cancel.
  const auto alpha = field1d({{0, 2.0}, {1, -1.0}});
  const auto wiener = wiener_inverse(alpha, 1e-10);
  for (int l : {2, 4, 7}) {
    const auto B = invert_circulant(build_circulant(alpha, l, 1));
    CHECK(std::abs(B.column_sum_norm() - wiener.column_sum_norm) <= 1e-12);
  }
}

TEST_CASE("potential identity links the circulant to the model") {
  // For all x in the box: sum_k omega_k u(x-k) = sum_m eta_m v(x-m).
  struct Case {
    CoefficientField alpha;
    SingleSiteProfile v;
    int l;
  };
  const std::vector<Case> cases = {
      {field1d({{0, 1.0}, {1, -0.5}}), SingleSiteProfile::delta(1), 4},
      {field1d({{0, 2.0}, {1, -1.0}}),
       test::profile1d({{0, 2.0}, {1, 1.0}}, 2.0), 4},
      {field2d({{{0, 0}, 4.0}, {{1, 0}, -1.0}, {{0, 1}, -1.0}}),
       SingleSiteProfile::delta(2), 3},
  };
  Xoshiro256PlusPlus rng(23);
  for (const auto& c : cases) {
    const int d = c.alpha.dim();
    const int R = c.v.support_radius() + c.alpha.support_radius();
    const auto A = build_circulant(c.alpha, c.l, R);
    const auto u = build_u(c.alpha, c.v);
    const Box sites(BoxSpec{d, c.l});
    const Box couplings(BoxSpec{d, c.l + R});

    for (int trial = 0; trial < 20; ++trial) {
      const auto omega = test::random_vector(
          rng, static_cast<std::size_t>(couplings.size()), -1.0, 1.0);
      const auto eta = eta_from_omega(A, omega);
      for (std::int64_t xi = 0; xi < sites.size(); ++xi) {
        const LatticePoint x = sites.point_at(xi);
        double via_u = 0.0;
        LatticePoint diff(d);
        for (std::int64_t ki = 0; ki < couplings.size(); ++ki) {
          const LatticePoint k = couplings.point_at(ki);
          for (int i = 0; i < d; ++i) diff[i] = x[i] - k[i];
          via_u += omega[static_cast<std::size_t>(ki)] * u.at(diff);
        }
        double via_eta = 0.0;
        for (std::int64_t mi = 0; mi < couplings.size(); ++mi) {
          const LatticePoint m = couplings.point_at(mi);
          for (int i = 0; i < d; ++i) diff[i] = x[i] - m[i];
          via_eta += eta.values[static_cast<std::size_t>(mi)] * c.v.at(diff);
        }
        CHECK(std::abs(via_u - via_eta) <= 1e-12);
      }
    }
  }
}

TEST_CASE("dense text export") {
  const auto A = build_circulant(field1d({{0, 2.0}, {1, -1.0}}), 2, 1);
  const std::string text = A.to_text();
  // 7 rows, safely parseable numbers.
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
  CHECK(text.find("2 ") != std::string::npos);
}
