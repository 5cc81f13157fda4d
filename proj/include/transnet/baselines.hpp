#pragma once

#include <cstdint>

#include "transnet/features.hpp"

namespace transnet {

/// Conventionally initialized random features: every weight and bias is
/// i.i.d. Uniform(-1/sqrt(d), 1/sqrt(d)) (the usual dense-layer default with
/// fan-in d).
struct RandomFeatureSpace {
  Index dim{0};
  Index count{0};
  std::uint64_t seed{0};
  Mat<double> w;  // M x d
  Vec<double> b;  // M

  AffineFeatures<double> affine() const { return {w, b}; }
};

RandomFeatureSpace sample_random_features(Index dim, Index count, std::uint64_t seed);

inline FeatureEval<double> eval_features(const RandomFeatureSpace& rf, const Mat<double>& points, int order) {
  return eval_features(rf.affine(), points, order);
}

}  // namespace transnet
