#include "transnet/domain.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "transnet/errors.hpp"
#include "transnet/rng.hpp"

namespace transnet {

namespace {

using std::numbers::pi;

Vec<double> vec(std::initializer_list<double> v) {
  Vec<double> out(static_cast<Index>(v.size()));
  Index i = 0;
  for (const double x : v) out(i++) = x;
  return out;
}

// Ball circumscribing an axis-aligned box.
BallMap<double> box_ball(const Vec<double>& lo, const Vec<double>& hi) {
  return {0.5 * (lo + hi), 0.5 * (hi - lo).norm()};
}

Mat<double> stack(const std::vector<Vec<double>>& rows, Index dim) {
  Mat<double> out(static_cast<Index>(rows.size()), dim);
  for (Index j = 0; j < out.rows(); ++j) out.row(j) = rows[j].transpose();
  return out;
}

// Tensor grid over the given axes (first axis varies slowest), filtered by
// `keep`.
template <typename Keep>
Mat<double> grid(const std::vector<Vec<double>>& axes, Keep keep) {
  const Index dim = static_cast<Index>(axes.size());
  Index total = 1;
  for (const auto& a : axes) total *= a.size();
  std::vector<Vec<double>> rows;
  rows.reserve(total);
  Vec<double> p(dim);
  for (Index flat = 0; flat < total; ++flat) {
    Index rest = flat;
    for (Index i = dim - 1; i >= 0; --i) {
      p(i) = axes[i](rest % axes[i].size());
      rest /= axes[i].size();
    }
    if (keep(p)) rows.push_back(p);
  }
  return stack(rows, dim);
}

Mat<double> grid(const std::vector<Vec<double>>& axes) {
  return grid(axes, [](const Vec<double>&) { return true; });
}

// Walks a closed polygon placing `per_edge[e]` points on edge e starting
// at its first vertex, evenly spaced along the edge.
Mat<double> polygon_boundary(const std::vector<Vec<double>>& vertices, const std::vector<Index>& per_edge) {
  std::vector<Vec<double>> rows;
  const auto n = vertices.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Vec<double>& a = vertices[e];
    const Vec<double>& b = vertices[(e + 1) % n];
    for (Index k = 0; k < per_edge[e]; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(per_edge[e]);
      rows.push_back(a + s * (b - a));
    }
  }
  return stack(rows, vertices.front().size());
}

Mat<double> circle(double radius, Index count) {
  Mat<double> out(count, 2);
  for (Index k = 0; k < count; ++k) {
    const double th = 2.0 * pi * static_cast<double>(k) / static_cast<double>(count);
    out(k, 0) = radius * std::cos(th);
    out(k, 1) = radius * std::sin(th);
  }
  return out;
}

// Cell-centred n x n grid on each face of [-1,1]^3.
Mat<double> cube_faces(Index per_axis) {
  std::vector<Vec<double>> rows;
  Vec<double> centres(per_axis);
  for (Index k = 0; k < per_axis; ++k) centres(k) = -1.0 + (2.0 * k + 1.0) / static_cast<double>(per_axis);
  for (int axis = 0; axis < 3; ++axis) {
    for (const double side : {-1.0, 1.0}) {
      const int u = (axis + 1) % 3;
      const int v = (axis + 2) % 3;
      for (Index i = 0; i < per_axis; ++i) {
        for (Index j = 0; j < per_axis; ++j) {
          Vec<double> p(3);
          p(axis) = side;
          p(u) = centres(i);
          p(v) = centres(j);
          rows.push_back(p);
        }
      }
    }
  }
  return stack(rows, 3);
}

Mat<double> with_column(const Mat<double>& base, Index col, double value) {
  Mat<double> out(base.rows(), base.cols() + 1);
  out.leftCols(col) = base.leftCols(col);
  out.col(col).setConstant(value);
  out.rightCols(base.cols() - col) = base.rightCols(base.cols() - col);
  return out;
}

}  // namespace

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::kBox2d: return "box2d";
    case DomainKind::kDisk: return "disk";
    case DomainKind::kLShape: return "lshape";
    case DomainKind::kAnnulus: return "annulus";
    case DomainKind::kBox3d: return "box3d";
    case DomainKind::kNsBox: return "ns_box";
    case DomainKind::kFp1d: return "fp1d";
    case DomainKind::kFp2d: return "fp2d";
    case DomainKind::kWave1d: return "wave1d";
  }
  return "unknown";
}

Vec<double> linspace(double lo, double hi, Index n) {
  if (n < 1) throw ConfigError("linspace: n must be >= 1");
  if (n == 1) return vec({lo});
  Vec<double> out(n);
  for (Index k = 0; k < n; ++k) out(k) = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  out(n - 1) = hi;
  return out;
}

bool Domain::contains(const Vec<double>& x) const {
  // Closed sets with a rounding allowance so boundary points computed from
  // cos/sin are not rejected.
  constexpr double eps = 1e-12;
  if (((x - lower).array() < -eps).any() || ((upper - x).array() < -eps).any()) return false;
  switch (kind) {
    case DomainKind::kDisk: return x.squaredNorm() <= 1.0 + eps;
    case DomainKind::kLShape: return !(x(0) > 0 && x(1) > 0);
    case DomainKind::kAnnulus: {
      const double r2 = x.squaredNorm();
      return r2 <= 1.0 + eps && r2 >= 0.25 - eps;
    }
    default: return true;
  }
}

DomainKind domain_kind(CaseId id) {
  switch (id) {
    case CaseId::C1: return DomainKind::kBox2d;
    case CaseId::C2: return DomainKind::kDisk;
    case CaseId::C3: return DomainKind::kLShape;
    case CaseId::C4: return DomainKind::kAnnulus;
    case CaseId::C5: return DomainKind::kBox3d;
    case CaseId::C6: return DomainKind::kNsBox;
    case CaseId::C7: return DomainKind::kFp1d;
    case CaseId::C8: return DomainKind::kFp2d;
    case CaseId::C9: return DomainKind::kWave1d;
  }
  throw ConfigError("domain_kind: bad case");
}

Domain make_domain(DomainKind kind) {
  Domain d;
  d.kind = kind;
  switch (kind) {
    case DomainKind::kBox2d:
    case DomainKind::kLShape:
      d.lower = vec({-1, -1});
      d.upper = vec({1, 1});
      break;
    case DomainKind::kDisk:
    case DomainKind::kAnnulus:
      d.lower = vec({-1, -1});
      d.upper = vec({1, 1});
      d.ball = {vec({0, 0}), 1.0};
      return d;
    case DomainKind::kBox3d:
      d.lower = vec({-1, -1, -1});
      d.upper = vec({1, 1, 1});
      break;
    case DomainKind::kNsBox:
      d.lower = vec({-0.5, -0.5});
      d.upper = vec({1.0, 1.5});
      break;
    case DomainKind::kFp1d:
      d.lower = vec({-2, 0});
      d.upper = vec({2, 1});
      break;
    case DomainKind::kFp2d:
      d.lower = vec({-2, -2, 0});
      d.upper = vec({2, 2, 1});
      break;
    case DomainKind::kWave1d:
      d.lower = vec({0, 0});
      d.upper = vec({1, 2});
      break;
  }
  // The L-shape's smallest enclosing circle is the square's circumcircle.
  d.ball = box_ball(d.lower, d.upper);
  return d;
}

Mat<double> map_to_ball(const Domain& domain, const Mat<double>& points) {
  if (points.cols() != domain.dim()) throw DimensionError("map_to_ball: point dimension mismatch");
  Mat<double> y = domain.ball.apply(points);
  if (y.rows() > 0 && y.rowwise().norm().maxCoeff() > 1.0 + 1e-12)
    throw NumericalError("map_to_ball: mapped point outside the unit ball for domain " + to_string(domain.kind));
  return y;
}

Mat<double> sample_uniform(const Domain& domain, Index count, Engine& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec<double>> rows;
  rows.reserve(count);
  Vec<double> p(domain.dim());
  while (static_cast<Index>(rows.size()) < count) {
    for (Index i = 0; i < p.size(); ++i) p(i) = domain.lower(i) + (domain.upper(i) - domain.lower(i)) * u(rng);
    if (domain.contains(p)) rows.push_back(p);
  }
  return stack(rows, domain.dim());
}

Index CollocationSet::boundary_count() const {
  Index n = 0;
  for (const auto& b : boundary) n += b.points.rows();
  return n;
}

const BoundarySet& CollocationSet::boundary_set(const std::string& tag) const {
  for (const auto& b : boundary)
    if (b.tag == tag) return b;
  throw ConfigError("collocation set has no boundary tagged '" + tag + "'");
}

CollocationSet make_collocation(CaseId id, std::uint64_t seed) {
  const Domain domain = make_domain(id);
  CollocationSet c;
  Engine interior_rng = make_engine(seed, streams::kInterior);
  const Vec<double> unit50 = linspace(-1, 1, 50);

  switch (id) {
    case CaseId::C1:
      c.interior = grid({unit50, unit50});
      c.boundary.push_back({"dirichlet",
                            polygon_boundary({vec({-1, -1}), vec({1, -1}), vec({1, 1}), vec({-1, 1})}, {50, 50, 50, 50}),
                            {}});
      break;
    case CaseId::C2:
      c.interior = grid({unit50, unit50}, [](const Vec<double>& p) { return p.squaredNorm() < 1.0; });
      c.boundary.push_back({"dirichlet", circle(1.0, 200), {}});
      break;
    case CaseId::C3: {
      c.interior = grid({unit50, unit50}, [](const Vec<double>& p) { return !(p(0) >= 0 && p(1) >= 0); });
      // Perimeter 8 split into unit-length steps of 25 points each.
      const std::vector<Vec<double>> verts = {vec({-1, -1}), vec({1, -1}), vec({1, 0}),
                                              vec({0, 0}),   vec({0, 1}),  vec({-1, 1})};
      c.boundary.push_back({"dirichlet", polygon_boundary(verts, {50, 25, 25, 25, 25, 50}), {}});
      break;
    }
    case CaseId::C4: {
      c.interior = grid({unit50, unit50}, [](const Vec<double>& p) {
        const double r2 = p.squaredNorm();
        return r2 < 1.0 && r2 > 0.25;
      });
      // Split proportional to circumference (2 pi : pi).
      Mat<double> both(200, 2);
      both << circle(1.0, 133), circle(0.5, 67);
      c.boundary.push_back({"dirichlet", both, {}});
      break;
    }
    case CaseId::C5:
      c.interior = sample_uniform(domain, 10000, interior_rng);
      c.boundary.push_back({"dirichlet", cube_faces(20), {}});
      break;
    case CaseId::C6: {
      c.interior = grid({linspace(-0.5, 1.0, 50), linspace(-0.5, 1.5, 50)});
      const std::vector<Vec<double>> verts = {vec({-0.5, -0.5}), vec({1.0, -0.5}), vec({1.0, 1.5}), vec({-0.5, 1.5})};
      c.boundary.push_back({"dirichlet", polygon_boundary(verts, {50, 50, 50, 50}), {}});
      break;
    }
    case CaseId::C7: {
      c.interior = grid({linspace(-2, 2, 200), linspace(0, 1, 50)});
      const Vec<double> xs = linspace(-2, 2, 1000);
      const Vec<double> ts = linspace(0, 1, 1000);
      c.boundary.push_back({"initial", with_column(xs, 1, 0.0), {}});
      Mat<double> sides(2000, 2);
      sides << with_column(ts, 0, -2.0), with_column(ts, 0, 2.0);
      c.boundary.push_back({"absorbing", sides, {}});
      break;
    }
    case CaseId::C8: {
      c.interior = sample_uniform(domain, 10000, interior_rng);
      const Vec<double> xs = linspace(-2, 2, 50);
      const Vec<double> ts = linspace(0, 1, 20);
      c.boundary.push_back({"initial", with_column(grid({xs, xs}), 2, 0.0), {}});
      const Mat<double> st = grid({xs, ts});  // (s, t)
      Mat<double> sides(4000, 3);
      sides << with_column(st, 0, -2.0), with_column(st, 0, 2.0), with_column(st, 1, -2.0), with_column(st, 1, 2.0);
      c.boundary.push_back({"absorbing", sides, {}});
      break;
    }
    case CaseId::C9: {
      c.interior = grid({linspace(0, 1, 100), linspace(0, 2, 50)});
      const Vec<double> xs = linspace(0, 1, 500);
      const Vec<double> ts = linspace(0, 2, 500);
      c.boundary.push_back({"initial", with_column(xs, 1, 0.0), {}});
      c.boundary.push_back({"periodic", with_column(ts, 0, 0.0), with_column(ts, 0, 1.0)});
      c.boundary.push_back({"velocity", with_column(xs, 1, 0.0), {}});
      break;
    }
  }

  Engine test_rng = make_engine(seed, streams::kTestSet);
  c.test = sample_uniform(domain, kTestPoints, test_rng);
  return c;
}

}  // namespace transnet
