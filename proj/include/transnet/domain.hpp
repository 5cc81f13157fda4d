#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "transnet/exact.hpp"
#include "transnet/features.hpp"

namespace transnet {

enum class DomainKind { kBox2d, kDisk, kLShape, kAnnulus, kBox3d, kNsBox, kFp1d, kFp2d, kWave1d };

std::string to_string(DomainKind kind);

/// A bounded region with its bounding box and the ball map that places it
/// inside the unit ball. Space-time domains list time last.
struct Domain {
  DomainKind kind{DomainKind::kBox2d};
  Vec<double> lower;
  Vec<double> upper;
  BallMap<double> ball;

  Index dim() const { return lower.size(); }
  /// Membership of the closed domain.
  bool contains(const Vec<double>& x) const;
};

Domain make_domain(DomainKind kind);
DomainKind domain_kind(CaseId id);
inline Domain make_domain(CaseId id) { return make_domain(domain_kind(id)); }

/// Applies the ball map. Throws NumericalError if any mapped point leaves
/// the closed unit ball, which means the domain geometry is wrong.
Mat<double> map_to_ball(const Domain& domain, const Mat<double>& points);

/// `count` i.i.d. uniform points in the domain (rejection from the box).
Mat<double> sample_uniform(const Domain& domain, Index count, Engine& rng);

/// Boundary or initial-slice points sharing one condition. `paired` is
/// non-empty for conditions coupling two points (periodicity).
struct BoundarySet {
  std::string tag;
  Mat<double> points;
  Mat<double> paired;
};

struct CollocationSet {
  Mat<double> interior;
  std::vector<BoundarySet> boundary;
  Mat<double> test;

  Index interior_count() const { return interior.rows(); }
  Index boundary_count() const;
  const BoundarySet& boundary_set(const std::string& tag) const;
};

inline constexpr Index kTestPoints = 10000;

/// Collocation, boundary and test sets for a benchmark case. Grids are
/// deterministic; random sets derive from `seed`.
CollocationSet make_collocation(CaseId id, std::uint64_t seed = 0);

/// n equally spaced values in [lo, hi], endpoints included.
Vec<double> linspace(double lo, double hi, Index n);

}  // namespace transnet
