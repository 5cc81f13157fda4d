#include <doctest.h>

#include <cmath>

#include "transnet/baselines.hpp"

using namespace transnet;

TEST_CASE("random feature entries lie in the fan-in range") {
  for (const Index d : {1, 2, 3}) {
    const auto rf = sample_random_features(d, 5000, 4);
    const double bound = 1.0 / std::sqrt(double(d));
    CHECK(rf.w.cwiseAbs().maxCoeff() <= bound);
    CHECK(rf.b.cwiseAbs().maxCoeff() <= bound);
    CHECK(rf.w.rows() == 5000);
    CHECK(rf.w.cols() == d);
  }
}

TEST_CASE("random feature weights have near-zero mean") {
  const Index count = 100000;
  const auto rf = sample_random_features(2, count, 12);
  const double bound = 3.0 * (2.0 / std::sqrt(12.0) / std::sqrt(2.0 * count)) / std::sqrt(2.0);
  CHECK(std::abs(rf.w.mean()) < bound);
}

TEST_CASE("random features are deterministic in the seed") {
  const auto a = sample_random_features(3, 100, 77);
  const auto b = sample_random_features(3, 100, 77);
  const auto c = sample_random_features(3, 100, 78);
  CHECK(a.w == b.w);
  CHECK(a.b == b.b);
  CHECK(a.w != c.w);
}

TEST_CASE("random features share the evaluation contract") {
  const auto rf = sample_random_features(2, 40, 1);
  const Mat<double> pts = Mat<double>::Random(7, 2);
  const auto e = eval_features(rf, pts, 2);
  const auto ref = eval_features(AffineFeatures<double>{rf.w, rf.b}, pts, 2);
  CHECK(e.values.rows() == 7);
  CHECK(e.values.cols() == 41);
  CHECK(e.values == ref.values);
  REQUIRE(e.grad.size() == 2);
  REQUIRE(e.hess.size() == 4);
  CHECK(e.hess[1] == ref.hess[1]);
  const Mat<double> expect = (rf.w * pts.transpose()).transpose().rowwise() + rf.b.transpose();
  CHECK((e.values.rightCols(40) - expect.array().tanh().matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("invalid sizes are rejected") {
  CHECK_THROWS_AS(sample_random_features(0, 10, 1), ConfigError);
  CHECK_THROWS_AS(sample_random_features(2, 0, 1), ConfigError);
}
