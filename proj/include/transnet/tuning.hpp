#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "transnet/features.hpp"
#include "transnet/gp.hpp"

namespace transnet {

struct TuneConfig {
  std::vector<double> gamma_grid;  // strictly ascending, positive
  int realizations{10};            // K
  double eta{0.5};
  Mat<double> sample_points;       // J x d inside the unit ball
};

struct TuneResult {
  double gamma_star{0};
  double best_loss{0};
  std::vector<std::pair<double, double>> losses;  // (gamma, total loss) in grid order
};

/// `count` log-spaced values in [lo, hi].
std::vector<double> log_spaced_grid(double lo = 0.25, double hi = 8.0, int count = 24);

/// Uniform `per_axis`^dim grid on [-1,1]^dim masked to the closed unit ball.
/// When more than `cap` points survive, a seeded uniform subsample of `cap`
/// rows is kept (original order preserved).
Mat<double> tuning_points(Index dim, int per_axis = 50, Index cap = 20000, std::uint64_t seed = 0);

/// Mean squared residual of the best least-squares fit of each column of
/// `targets` in span{1, features}. One factorization serves all columns.
Vec<double> fit_mse(const AffineFeatures<double>& features, const Mat<double>& points, const Mat<double>& targets);

double fit_mse(const FeatureSpace& fs, const GpRealization& realization);

/// Grid search over gamma of sum_k min_alpha MSE(u, G_k). Ties go to the
/// smaller gamma. `gp.eta` is overridden by `cfg.eta`.
TuneResult tune_gamma(const FeatureSpace& geometry, const TuneConfig& cfg, GpConfig gp);

/// Convenience: geometry with gamma set to the tuned value and tuning
/// metadata attached.
FeatureSpace apply_tuning(const FeatureSpace& geometry, const TuneConfig& cfg, const TuneResult& result);

}  // namespace transnet
