#include <doctest.h>

#include <cmath>

#include "transnet/gp.hpp"
#include "oracles.hpp"

using namespace transnet;

namespace {

Mat<double> empirical_covariance(const GpSampler& sampler, Index points, int draws) {
  Mat<double> values(draws, points);
  for (int k = 0; k < draws; ++k) values.row(k) = sampler.sample(k).values.transpose();
  const Mat<double> centred = values.rowwise() - values.colwise().mean();
  return centred.transpose() * centred / double(draws - 1);
}

}  // namespace

TEST_CASE("kernel at lag zero equals the variance") {
  const GpConfig cfg{0.3, 2.5, 2048, 0};
  const Vec<double> x = Vec<double>::Random(3);
  CHECK(gp_kernel(cfg, x, x) == 2.5);
  const Mat<double> pts = Mat<double>::Random(20, 2);
  const Mat<double> k = gp_kernel_matrix(cfg, pts);
  CHECK((k.diagonal().array() == 2.5).all());
  CHECK(k == k.transpose());
  CHECK(k(3, 7) == doctest::Approx(gp_kernel(cfg, pts.row(3).transpose(), pts.row(7).transpose())).epsilon(1e-14));
}

TEST_CASE("single point values are N(0, variance)") {
  const GpConfig cfg{0.5, 1.7, 2048, 21};
  const GpSampler sampler(Mat<double>::Constant(1, 2, 0.2), cfg);
  CHECK(sampler.method() == GpSampler::Method::kCholesky);
  const int draws = 100000;
  double sum = 0, sq = 0;
  for (int k = 0; k < draws; ++k) {
    const double v = sampler.sample(k).values(0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  CHECK(std::abs(var / cfg.variance - 1.0) < 0.05);
  CHECK(std::abs(mean) < 4.0 * std::sqrt(cfg.variance / draws));
}

TEST_CASE("coincident points receive identical values") {
  Mat<double> pts(4, 2);
  pts << 0.1, 0.2, 0.5, -0.3, 0.1, 0.2, 0.0, 0.0;
  const GpSampler sampler(pts, GpConfig{0.5, 1.0, 2048, 3});
  for (int k = 0; k < 20; ++k) {
    const auto g = sampler.sample(k);
    CHECK(g.values(0) == g.values(2));
    CHECK(g.values(0) != g.values(1));
  }
}

TEST_CASE("sampling is deterministic in seed and realization index") {
  Engine rng(1);
  const Mat<double> pts = oracle::uniform_in_ball(2, 1.0, 30, rng);
  const GpConfig cfg{0.5, 1.0, 256, 5};
  for (const auto method : {GpSampler::Method::kCholesky, GpSampler::Method::kFourier}) {
    const GpSampler a(pts, cfg, method), b(pts, cfg, method);
    CHECK(a.sample(3).values == b.sample(3).values);
    CHECK(a.sample(3).values != a.sample(4).values);
    CHECK(a.sample(3).realization_index == 3);
  }
  CHECK(sample_gp(pts, cfg, 2).values == GpSampler(pts, cfg).sample(2).values);
}

TEST_CASE("empirical covariance matches the kernel on a small set") {
  Engine rng(8);
  const Mat<double> pts = oracle::uniform_in_ball(2, 1.0, 10, rng);
  const GpConfig cfg{0.5, 1.0, 2048, 13};
  const Mat<double> k = gp_kernel_matrix(cfg, pts);
  for (const auto method : {GpSampler::Method::kCholesky, GpSampler::Method::kFourier}) {
    const GpSampler sampler(pts, cfg, method);
    const Mat<double> c = empirical_covariance(sampler, 10, 2000);
    CHECK((c - k).cwiseAbs().maxCoeff() < 0.1 * cfg.variance);
  }
}

TEST_CASE("realization values stay within the soft bound") {
  Engine rng(2);
  const Mat<double> pts = oracle::uniform_in_ball(3, 1.0, 5000, rng);
  const GpConfig cfg{0.5, 4.0, 2048, 1};
  const GpSampler sampler(pts, cfg);
  CHECK(sampler.method() == GpSampler::Method::kFourier);
  for (int k = 0; k < 3; ++k) CHECK(sampler.sample(k).values.cwiseAbs().maxCoeff() < 10 * std::sqrt(cfg.variance));
}

TEST_CASE("tight grids factorize with at most the largest jitter") {
  const Mat<double> pts = Mat<double>::Random(400, 2) * 0.05;
  const GpSampler sampler(pts, GpConfig{2.0, 1.0, 2048, 0}, GpSampler::Method::kCholesky);
  CHECK(sampler.jitter() <= 1e-6);
  CHECK(sampler.sample(0).values.allFinite());
}

TEST_CASE("invalid configurations are rejected") {
  const Mat<double> pts = Mat<double>::Zero(2, 2);
  CHECK_THROWS_AS(GpSampler(pts, GpConfig{0.0, 1.0, 2048, 0}), ConfigError);
  CHECK_THROWS_AS(GpSampler(pts, GpConfig{0.5, -1.0, 2048, 0}), ConfigError);
  CHECK_THROWS_AS(GpSampler(Mat<double>(0, 2), GpConfig{}), ConfigError);
}
