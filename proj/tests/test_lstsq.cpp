#include <doctest.h>

#include <cmath>
#include <limits>

#include "transnet/lstsq.hpp"

using namespace transnet;

namespace {

LstsqSystem<double> system_of(Mat<double> a, Mat<double> b, Vec<double> w = {}) {
  return {std::move(a), std::move(b), std::move(w)};
}

}  // namespace

TEST_CASE("identity system returns the rhs") {
  const Mat<double> b = Mat<double>::Random(6, 2);
  const auto sol = solve(system_of(Mat<double>::Identity(6, 6), b));
  CHECK((sol.x - b).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(sol.rank == 6);
}

TEST_CASE("overdetermined constant fit gives the mean") {
  Mat<double> a(2, 1), b(2, 1);
  a << 1, 1;
  b << 0, 2;
  const auto sol = solve(system_of(a, b));
  CHECK(sol.x(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sol.residual_norm == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rank-deficient system gives the minimum-norm solution") {
  Mat<double> a(2, 2), b(2, 1);
  a << 1, 1, 1, 1;
  b << 2, 2;
  const auto sol = solve(system_of(a, b));
  CHECK(sol.rank == 1);
  CHECK(sol.x(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sol.x(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("weighted residual is orthogonal to the column space") {
  for (int trial = 0; trial < 5; ++trial) {
    std::srand(trial + 1);
    const Index rows = 80 + 10 * trial, cols = 30;
    const Mat<double> a = Mat<double>::Random(rows, cols);
    const Mat<double> b = Mat<double>::Random(rows, 1);
    const Vec<double> w = (Vec<double>::Random(rows).array() + 1.5).matrix();
    const auto sol = solve(system_of(a, b, w));
    const Vec<double> r = a * sol.x - b;
    const Vec<double> g = a.transpose() * (w.array() * r.array()).matrix();
    CHECK(g.cwiseAbs().maxCoeff() <= 1e-8 * a.norm() * b.norm());
  }
}

TEST_CASE("adding a null-space vector increases the norm") {
  std::srand(5);
  const Mat<double> left = Mat<double>::Random(40, 6);
  const Mat<double> right = Mat<double>::Random(6, 15);
  const Mat<double> a = left * right;  // rank 6
  const Mat<double> b = Mat<double>::Random(40, 1);
  const auto sol = solve(system_of(a, b));
  CHECK(sol.rank == 6);
  Eigen::JacobiSVD<Mat<double>> svd(a, Eigen::ComputeFullV);
  const Mat<double> null = svd.matrixV().rightCols(15 - 6);
  CHECK((a * null).cwiseAbs().maxCoeff() < 1e-10);
  for (Index k = 0; k < null.cols(); ++k) {
    const Vec<double> shifted = sol.x.col(0) + 0.1 * null.col(k);
    CHECK((a * shifted - b).norm() == doctest::Approx((a * sol.x - b).norm()).epsilon(1e-10));
    CHECK(shifted.norm() > sol.x.norm());
  }
  CHECK((null.transpose() * sol.x).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("uniform weight scaling does not move the minimizer") {
  std::srand(9);
  const Mat<double> a = Mat<double>::Random(50, 20);
  const Mat<double> b = Mat<double>::Random(50, 3);
  const Vec<double> w = Vec<double>::Constant(50, 0.02);
  const auto one = solve(system_of(a, b, w));
  const auto two = solve(system_of(a, b, Vec<double>(2 * w)));
  CHECK((one.x - two.x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("multiple right-hand sides solve independently") {
  std::srand(3);
  const Mat<double> a = Mat<double>::Random(30, 10);
  const Mat<double> b = Mat<double>::Random(30, 4);
  const auto all = solve(system_of(a, b));
  for (Index q = 0; q < 4; ++q) {
    const auto one = solve(system_of(a, b.col(q)));
    CHECK((all.x.col(q) - one.x).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("invalid systems are rejected") {
  Mat<double> a = Mat<double>::Identity(3, 3);
  Mat<double> b = Mat<double>::Ones(3, 1);
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solve(system_of(a, b)), NumericalError);
  a(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(solve(system_of(a, b)), NumericalError);
  a = Mat<double>::Identity(3, 3);
  CHECK_THROWS_AS(solve(system_of(a, Mat<double>::Ones(2, 1))), DimensionError);
  CHECK_THROWS_AS(solve(system_of(a, b, Vec<double>::Constant(3, -1.0))), ConfigError);
}

TEST_CASE("solve is deterministic") {
  std::srand(1);
  const Mat<double> a = Mat<double>::Random(200, 60);
  const Mat<double> b = Mat<double>::Random(200, 2);
  CHECK(solve(system_of(a, b)).x == solve(system_of(a, b)).x);
}
