#include "transnet/baselines.hpp"

#include <cmath>
#include <random>

#include "transnet/rng.hpp"

namespace transnet {

RandomFeatureSpace sample_random_features(Index dim, Index count, std::uint64_t seed) {
  if (dim < 1 || count < 1) throw ConfigError("random features: dim and M must be >= 1");
  const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
  std::uniform_real_distribution<double> u(-bound, bound);
  RandomFeatureSpace rf{dim, count, seed, Mat<double>(count, dim), Vec<double>(count)};
  Engine wr = make_engine(seed, streams::kRandomWeights);
  for (Index m = 0; m < count; ++m)
    for (Index i = 0; i < dim; ++i) rf.w(m, i) = u(wr);
  Engine br = make_engine(seed, streams::kRandomBiases);
  for (Index m = 0; m < count; ++m) rf.b(m) = u(br);
  return rf;
}

}  // namespace transnet
