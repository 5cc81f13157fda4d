#include "transnet/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "transnet/lstsq.hpp"
#include "transnet/rng.hpp"

namespace transnet {

std::vector<double> log_spaced_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 1) throw ConfigError("gamma grid: need 0 < lo < hi and count >= 1");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(step * i);
  grid.back() = hi;
  return grid;
}

Mat<double> tuning_points(Index dim, int per_axis, Index cap, std::uint64_t seed) {
  if (dim < 1 || per_axis < 2 || cap < 1) throw ConfigError("tuning_points: bad arguments");
  Index total = 1;
  for (Index i = 0; i < dim; ++i) total *= per_axis;
  std::vector<Index> idx(dim, 0);
  const auto coord = [&](Index k) { return -1.0 + 2.0 * static_cast<double>(k) / (per_axis - 1); };
  std::vector<Vec<double>> kept;
  for (Index flat = 0; flat < total; ++flat) {
    Index rest = flat;
    Vec<double> p(dim);
    for (Index i = dim - 1; i >= 0; --i) {
      p(i) = coord(rest % per_axis);
      rest /= per_axis;
    }
    if (p.squaredNorm() <= 1.0) kept.push_back(std::move(p));
  }
  std::vector<Index> rows(kept.size());
  std::iota(rows.begin(), rows.end(), Index{0});
  if (static_cast<Index>(rows.size()) > cap) {
    Engine rng = make_engine(seed, streams::kSubsample);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(cap);
    std::sort(rows.begin(), rows.end());
  }
  Mat<double> out(static_cast<Index>(rows.size()), dim);
  for (Index j = 0; j < out.rows(); ++j) out.row(j) = kept[rows[j]].transpose();
  return out;
}

Vec<double> fit_mse(const AffineFeatures<double>& features, const Mat<double>& points, const Mat<double>& targets) {
  if (targets.rows() != points.rows()) throw DimensionError("fit_mse: targets do not match points");
  LstsqSystem<double> sys;
  sys.a = eval_features(features, points, 0).values;
  sys.b = targets;
  const auto sol = solve(sys);
  const Mat<double> resid = sys.a * sol.x - sys.b;
  return resid.colwise().squaredNorm().transpose() / static_cast<double>(points.rows());
}

double fit_mse(const FeatureSpace& fs, const GpRealization& realization) {
  if (realization.points.cols() != fs.dim()) throw DimensionError("fit_mse: realization dimension mismatch");
  return fit_mse(fs.affine(), realization.points, realization.values)(0);
}

TuneResult tune_gamma(const FeatureSpace& geometry, const TuneConfig& cfg, GpConfig gp) {
  if (cfg.gamma_grid.empty()) throw ConfigError("tune: gamma grid is empty");
  for (std::size_t i = 0; i < cfg.gamma_grid.size(); ++i) {
    if (!(cfg.gamma_grid[i] > 0)) throw ConfigError("tune: gamma grid entries must be positive");
    if (i > 0 && !(cfg.gamma_grid[i] > cfg.gamma_grid[i - 1]))
      throw ConfigError("tune: gamma grid must be strictly ascending");
  }
  if (cfg.realizations < 1) throw ConfigError("tune: need at least one realization");
  if (cfg.sample_points.cols() != geometry.dim()) throw DimensionError("tune: sample points dimension mismatch");
  if ((cfg.sample_points.rowwise().norm().array() > 1.0 + 1e-12).any())
    throw ConfigError("tune: sample points must lie in the unit ball");

  gp.eta = cfg.eta;
  const GpSampler sampler(cfg.sample_points, gp);
  Mat<double> targets(cfg.sample_points.rows(), cfg.realizations);
  for (int k = 0; k < cfg.realizations; ++k) targets.col(k) = sampler.sample(k).values;

  TuneResult out;
  out.losses.reserve(cfg.gamma_grid.size());
  bool first = true;
  for (const double gamma : cfg.gamma_grid) {
    const Vec<double> mse = fit_mse(geometry.with_gamma(gamma).affine(), cfg.sample_points, targets);
    double total = 0;
    for (Index k = 0; k < mse.size(); ++k) total += mse(k);
    out.losses.emplace_back(gamma, total);
    if (first || total < out.best_loss) {
      out.best_loss = total;
      out.gamma_star = gamma;
      first = false;
    }
  }
  return out;
}

FeatureSpace apply_tuning(const FeatureSpace& geometry, const TuneConfig& cfg, const TuneResult& result) {
  TuningMeta meta{cfg.eta, cfg.realizations, cfg.gamma_grid, result.best_loss};
  return geometry.with_gamma(result.gamma_star, std::move(meta));
}

}  // namespace transnet
