#include <doctest.h>

#include <cmath>
#include <numbers>

#include "transnet/pde.hpp"
#include "transnet/tuning.hpp"
#include "oracles.hpp"

using namespace transnet;

namespace {

constexpr double kPi = std::numbers::pi;

// The residual operator of `base` with its rhs replaced by f on the interior
// and g on the boundary.
PdeProblem with_data(PdeProblem base, double f, double g) {
  auto blocks = base.blocks;
  base.blocks = [blocks, f, g](const CollocationSet& c, const Solution* it) {
    auto out = blocks(c, it);
    for (auto& b : out) b.rhs.setConstant(b.tag == "interior" ? f : g);
    return out;
  };
  return base;
}

PdeProblem scaled_weights(PdeProblem base, double factor) {
  auto blocks = base.blocks;
  base.blocks = [blocks, factor](const CollocationSet& c, const Solution* it) {
    auto out = blocks(c, it);
    for (auto& b : out) b.weight *= factor;
    return out;
  };
  return base;
}

}  // namespace

TEST_CASE("exact solutions satisfy the implemented rows") {
  for (const CaseId id : {CaseId::C1, CaseId::C2, CaseId::C3, CaseId::C4, CaseId::C5, CaseId::C7, CaseId::C8,
                          CaseId::C9}) {
    const PdeProblem p = make_problem(id);
    const CollocationSet c = make_collocation(id);
    for (const Block& b : p.blocks(c, nullptr)) {
      CAPTURE(to_string(id));
      CAPTURE(b.tag);
      CHECK(oracle::exact_block_residual(p, b) < 1e-8);
    }
  }
}

TEST_CASE("the zero absorbing boundary drops the Gaussian tail values") {
  // Largest tail at x = 2 is near t = pi/6, where the mean reaches 2/3: about 1.2e-2.
  ProblemOptions opt;
  opt.absorbing_exact = false;
  const PdeProblem p = make_problem(CaseId::C7, opt);
  const CollocationSet c = make_collocation(CaseId::C7);
  for (const Block& b : p.blocks(c, nullptr)) {
    if (b.tag != "absorbing") continue;
    CHECK(b.rhs.cwiseAbs().maxCoeff() == 0.0);
    CHECK(oracle::exact_block_residual(p, b) < 1.5e-2);
    CHECK(oracle::exact_block_residual(p, b) > 1e-2);
  }
}

TEST_CASE("Poisson source is the scaled exact solution") {
  const PdeProblem p = make_problem(CaseId::C1);
  const CollocationSet c = make_collocation(CaseId::C1);
  const Block b = p.blocks(c, nullptr).front();
  REQUIRE(b.tag == "interior");
  const Vec<double> u = p.exact(c.interior).col(0);
  CHECK((b.rhs + 8 * kPi * kPi * u).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(b.weight == 1.0 / 2500);
  CHECK(p.blocks(c, nullptr).back().weight == 1.0 / 200);
}

TEST_CASE("Kovasznay flow is divergence free and solves the momentum equations") {
  const PdeProblem p = make_problem(CaseId::C6);
  const CollocationSet c = make_collocation(CaseId::C6);
  for (const Block& b : p.blocks(c, nullptr))
    if (b.tag == "continuity") CHECK(oracle::exact_block_residual(p, b) < 1e-10);

  const double nu = 1.0 / 40;
  double worst = 0;
  for (Index j = 0; j < c.test.rows(); j += 7) {
    const Vec<double> x = c.test.row(j).transpose();
    Vec<double> g[3], s[3];
    double v[3];
    for (int f = 0; f < 3; ++f) {
      const auto fn = [&](const oracle::HyperDual* y) { return exact::value<oracle::HyperDual>(CaseId::C6, f, y, nu); };
      oracle::derivatives(fn, x, v[f], g[f], s[f]);
    }
    for (int comp = 0; comp < 2; ++comp) {
      const double r = v[0] * g[comp](0) + v[1] * g[comp](1) - nu * s[comp].sum() + g[2](comp);
      worst = std::max(worst, std::abs(r));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("one-dimensional Fokker-Planck starts from the N(0, 0.16) density") {
  for (const double x : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
    const double pts[2] = {x, 0.0};
    const double expect = std::exp(-x * x / (2 * 0.16)) / std::sqrt(2 * kPi * 0.16);
    CHECK(exact::value<double>(CaseId::C7, 0, pts) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("a constant field zeroes the Laplace rows") {
  const double value = 2.75;
  const PdeProblem p = with_data(make_problem(CaseId::C2), 0.0, value);
  const FeatureSpace fs = FeatureSpace::generate(2, 80, 1, 3.0);
  const CollocationSet c = make_collocation(CaseId::C2);
  const auto sys = assemble(p, fs.affine(), c);
  Mat<double> alpha = Mat<double>::Zero(81, 1);
  alpha(0, 0) = value;
  CHECK((sys.a * alpha - sys.b).cwiseAbs().maxCoeff() < 1e-12);
  const Solution sol = solve_linear(p, fs.affine(), c);
  CHECK((sol.evaluate(c.test).array() - value).abs().maxCoeff() < 1e-8);
}

TEST_CASE("zero data gives zero coefficients") {
  const PdeProblem p = with_data(make_problem(CaseId::C1), 0.0, 0.0);
  const FeatureSpace fs = FeatureSpace::generate(2, 100, 2, 2.0);
  const Solution sol = solve_linear(p, fs.affine(), make_collocation(CaseId::C1));
  CHECK(sol.alpha().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("uniformly scaled weights leave the coefficients unchanged") {
  const PdeProblem p = make_problem(CaseId::C1);
  const FeatureSpace fs = FeatureSpace::generate(2, 100, 2, 2.0);
  const CollocationSet c = make_collocation(CaseId::C1);
  const Solution one = solve_linear(p, fs.affine(), c);
  const Solution two = solve_linear(scaled_weights(p, 2.0), fs.affine(), c);
  CHECK((one.alpha() - two.alpha()).norm() <= 1e-8 * one.alpha().norm());
}

TEST_CASE("assembly validates its inputs") {
  const PdeProblem p = make_problem(CaseId::C6);
  const FeatureSpace fs3 = FeatureSpace::generate(3, 10, 1, 1.0);
  const FeatureSpace fs2 = FeatureSpace::generate(2, 10, 1, 1.0);
  const CollocationSet c = make_collocation(CaseId::C6);
  CHECK_THROWS_AS(assemble(p, fs3.affine(), c), DimensionError);
  CHECK_THROWS_AS(assemble(p, fs2.affine(), c, nullptr, 2), ConfigError);
  CHECK_NOTHROW(assemble(p, fs2.affine(), c, nullptr, 0));
  CHECK_THROWS_AS(make_problem(CaseId::C6, ProblemOptions{-1.0, 1.0, true}), ConfigError);
}

TEST_CASE("Stokes limit converges after one Picard step") {
  ProblemOptions opt;
  opt.advection_scale = 0.0;
  const PdeProblem p = make_problem(CaseId::C6, opt);
  CHECK_FALSE(p.nonlinear);
  const FeatureSpace fs = FeatureSpace::generate(2, 100, 3, 2.0);
  const CollocationSet c = make_collocation(CaseId::C6);
  const Solution sol = solve_picard(p, fs.affine(), c);
  CHECK(sol.diagnostics().iterations == 1);
  CHECK(sol.diagnostics().converged);
  CHECK(sol.alpha() == solve_linear(p, fs.affine(), c).alpha());
}

TEST_CASE("Picard iteration is deterministic") {
  const PdeProblem p = make_problem(CaseId::C6);
  const FeatureSpace fs = FeatureSpace::generate(2, 100, 3, 2.0);
  const CollocationSet c = make_collocation(CaseId::C6);
  const Solution a = solve_picard(p, fs.affine(), c, 1e-10, 4);
  const Solution b = solve_picard(p, fs.affine(), c, 1e-10, 4);
  CHECK(a.alpha() == b.alpha());
  CHECK(a.diagnostics().changes == b.diagnostics().changes);
  CHECK(a.diagnostics().changes.size() == std::size_t(a.diagnostics().iterations));
  CHECK(a.num_fields() == 3);
}

TEST_CASE("MSE against simple predictors") {
  const PdeProblem p = make_problem(CaseId::C1);
  const CollocationSet c = make_collocation(CaseId::C1);
  const MseReport zero = evaluate_mse(Mat<double>::Zero(c.test.rows(), 1), p, c.test);
  CHECK(zero.mean == doctest::Approx(0.25).epsilon(0.06));
  CHECK(evaluate_mse(p.exact(c.test), p, c.test).mean == 0.0);

  const PdeProblem ns = make_problem(CaseId::C6);
  const CollocationSet cn = make_collocation(CaseId::C6);
  Mat<double> shifted = ns.exact(cn.test);
  shifted.col(2).array() += 4.0;
  const MseReport gauge = evaluate_mse(shifted, ns, cn.test);
  CHECK(gauge.per_field(2) < 1e-25);
  CHECK(gauge.mean >= 0.0);
  shifted.col(0).array() += 1.0;
  CHECK(evaluate_mse(shifted, ns, cn.test).per_field(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(evaluate_mse(Mat<double>::Zero(3, 2), p, c.test), DimensionError);
}

TEST_CASE("solution derivatives follow the physical coordinates") {
  const PdeProblem p = make_problem(CaseId::C6);
  const FeatureSpace fs = FeatureSpace::generate(2, 50, 4, 2.0);
  const AffineFeatures<double> phys = p.domain.ball.pull_back(fs.affine());
  const Solution sol(phys, Mat<double>::Random(51, 3));
  Mat<double> x(1, 2), xp(1, 2), xm(1, 2);
  x << 0.3, 0.9;
  const double h = 1e-6;
  for (Index axis = 0; axis < 2; ++axis) {
    xp = x;
    xm = x;
    xp(0, axis) += h;
    xm(0, axis) -= h;
    const double fd = (sol.evaluate(xp)(0, 1) - sol.evaluate(xm)(0, 1)) / (2 * h);
    CHECK(sol.derivative(x, 1, axis)(0) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("tuned feature space solves the square Poisson case") {
  const FeatureSpace geo = FeatureSpace::generate(2, 1000, 0);
  TuneConfig cfg;
  cfg.gamma_grid = log_spaced_grid();
  cfg.sample_points = tuning_points(2);
  const FeatureSpace fs = apply_tuning(geo, cfg, tune_gamma(geo, cfg, GpConfig{}));
  const PdeProblem p = make_problem(CaseId::C1);
  const CollocationSet c = make_collocation(CaseId::C1);
  const MseReport mse = evaluate_mse(solve_linear(p, fs.affine(), c), p, c.test);
  MESSAGE("C1 test MSE at M=1000: " << mse.mean);
  CHECK(mse.mean < 1e-6);
  CHECK(mse.mean > 0.0);
}
