#include "transnet/pde.hpp"

#include <cmath>
#include <numbers>

#include "transnet/errors.hpp"

namespace transnet {

namespace {

constexpr double kPi = std::numbers::pi;

Vec<double> exact_column(CaseId id, int field, const Mat<double>& points, double nu) {
  Vec<double> out(points.rows());
  Vec<double> p(points.cols());
  for (Index j = 0; j < points.rows(); ++j) {
    p = points.row(j).transpose();
    out(j) = exact::value<double>(id, field, p.data(), nu);
  }
  return out;
}

LinearCoeffs<double> identity(Index rows) {
  LinearCoeffs<double> c;
  c.c0 = Vec<double>::Ones(rows);
  return c;
}

LinearCoeffs<double> laplacian(Index rows, Index dim, double scale = 1.0) {
  LinearCoeffs<double> c;
  c.c2 = Mat<double>::Constant(rows, dim, scale);
  return c;
}

// Single-axis first derivative.
LinearCoeffs<double> partial(Index rows, Index dim, Index axis) {
  LinearCoeffs<double> c;
  c.c1 = Mat<double>::Zero(rows, dim);
  c.c1.col(axis).setOnes();
  return c;
}

double interior_weight(const CollocationSet& c) { return 1.0 / static_cast<double>(c.interior_count()); }
double boundary_weight(const CollocationSet& c) { return 1.0 / static_cast<double>(c.boundary_count()); }

std::vector<Block> poisson_blocks(CaseId id, const CollocationSet& c) {
  const Index dim = c.interior.cols();
  const double k2 = static_cast<double>(dim) * 4.0 * kPi * kPi;  // -Laplacian eigenvalue
  std::vector<Block> out;
  Block interior{"interior", interior_weight(c), -k2 * exact_column(id, 0, c.interior, 0), {}};
  interior.terms.push_back({0, c.interior, laplacian(c.interior_count(), dim)});
  out.push_back(std::move(interior));
  const BoundarySet& b = c.boundary_set("dirichlet");
  Block bc{"dirichlet", boundary_weight(c), exact_column(id, 0, b.points, 0), {}};
  bc.terms.push_back({0, b.points, identity(b.points.rows())});
  out.push_back(std::move(bc));
  return out;
}

// u_t + b(t) . grad_x u - (sigma^2 / 2) Laplacian_x u = 0, time last.
std::vector<Block> fokker_planck_blocks(CaseId id, const CollocationSet& c, bool absorbing_exact) {
  const Index dim = c.interior.cols();
  const Index space = dim - 1;
  const Index rows = c.interior_count();
  const double half_sigma2 = 0.5 * exact::kFpSigma * exact::kFpSigma;

  LinearCoeffs<double> op;
  op.c1 = Mat<double>::Zero(rows, dim);
  op.c2 = Mat<double>::Zero(rows, dim);
  for (Index j = 0; j < rows; ++j) {
    const double t = c.interior(j, space);
    for (Index i = 0; i < space; ++i) {
      op.c1(j, i) = id == CaseId::C7 ? exact::fp1d_drift(t) : exact::fp2d_drift(static_cast<int>(i), t);
      op.c2(j, i) = -half_sigma2;
    }
    op.c1(j, space) = 1.0;
  }
  std::vector<Block> out;
  Block interior{"interior", interior_weight(c), Vec<double>::Zero(rows), {}};
  interior.terms.push_back({0, c.interior, std::move(op)});
  out.push_back(std::move(interior));

  const BoundarySet& init = c.boundary_set("initial");
  Block ic{"initial", boundary_weight(c), exact_column(id, 0, init.points, 0), {}};
  ic.terms.push_back({0, init.points, identity(init.points.rows())});
  out.push_back(std::move(ic));

  const BoundarySet& side = c.boundary_set("absorbing");
  Vec<double> g = absorbing_exact ? exact_column(id, 0, side.points, 0) : Vec<double>::Zero(side.points.rows());
  Block ab{"absorbing", boundary_weight(c), std::move(g), {}};
  ab.terms.push_back({0, side.points, identity(side.points.rows())});
  out.push_back(std::move(ab));
  return out;
}

// u_tt - c u_xx = 0 on (x, t); displacement, periodicity and zero initial
// velocity as boundary rows.
std::vector<Block> wave_blocks(const CollocationSet& c) {
  const Index rows = c.interior_count();
  std::vector<Block> out;
  LinearCoeffs<double> op;
  op.c2 = Mat<double>(rows, 2);
  op.c2.col(0).setConstant(-exact::kWaveSpeedSq);
  op.c2.col(1).setOnes();
  Block interior{"interior", interior_weight(c), Vec<double>::Zero(rows), {}};
  interior.terms.push_back({0, c.interior, std::move(op)});
  out.push_back(std::move(interior));

  const double w = boundary_weight(c);
  const BoundarySet& init = c.boundary_set("initial");
  Vec<double> disp(init.points.rows());
  for (Index j = 0; j < disp.size(); ++j) disp(j) = std::sin(4.0 * kPi * init.points(j, 0));
  Block ic{"initial", w, std::move(disp), {}};
  ic.terms.push_back({0, init.points, identity(init.points.rows())});
  out.push_back(std::move(ic));

  const BoundarySet& per = c.boundary_set("periodic");
  Block pc{"periodic", w, Vec<double>::Zero(per.points.rows()), {}};
  pc.terms.push_back({0, per.points, identity(per.points.rows())});
  LinearCoeffs<double> minus;
  minus.c0 = -Vec<double>::Ones(per.paired.rows());
  pc.terms.push_back({0, per.paired, std::move(minus)});
  out.push_back(std::move(pc));

  const BoundarySet& vel = c.boundary_set("velocity");
  Block vc{"velocity", w, Vec<double>::Zero(vel.points.rows()), {}};
  vc.terms.push_back({0, vel.points, partial(vel.points.rows(), 2, 1)});
  out.push_back(std::move(vc));
  return out;
}

// Steady incompressible Navier-Stokes, fields (v1, v2, p), with the
// advection velocity frozen at `iterate` (zero when absent).
std::vector<Block> navier_stokes_blocks(const CollocationSet& c, const Solution* iterate, const ProblemOptions& opt) {
  const double nu = 1.0 / opt.reynolds;
  const Index rows = c.interior_count();
  Mat<double> vel = Mat<double>::Zero(rows, 2);
  if (iterate != nullptr && opt.advection_scale != 0.0) vel = opt.advection_scale * iterate->evaluate(c.interior).leftCols(2);

  std::vector<Block> out;
  const double wi = interior_weight(c);
  for (int comp = 0; comp < 2; ++comp) {
    LinearCoeffs<double> mom;
    mom.c1 = vel;
    mom.c2 = Mat<double>::Constant(rows, 2, -nu);
    Block b{comp == 0 ? "momentum_x" : "momentum_y", wi, Vec<double>::Zero(rows), {}};
    b.terms.push_back({comp, c.interior, std::move(mom)});
    b.terms.push_back({2, c.interior, partial(rows, 2, comp)});
    out.push_back(std::move(b));
  }
  Block div{"continuity", wi, Vec<double>::Zero(rows), {}};
  div.terms.push_back({0, c.interior, partial(rows, 2, 0)});
  div.terms.push_back({1, c.interior, partial(rows, 2, 1)});
  out.push_back(std::move(div));

  const BoundarySet& bnd = c.boundary_set("dirichlet");
  const double wb = boundary_weight(c);
  for (int comp = 0; comp < 2; ++comp) {
    Block b{comp == 0 ? "dirichlet_v1" : "dirichlet_v2", wb, exact_column(CaseId::C6, comp, bnd.points, nu), {}};
    b.terms.push_back({comp, bnd.points, identity(bnd.points.rows())});
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

Mat<double> PdeProblem::exact(const Mat<double>& points) const {
  Mat<double> out(points.rows(), num_fields());
  for (int f = 0; f < num_fields(); ++f) out.col(f) = exact_column(id, f, points, 1.0 / options.reynolds);
  return out;
}

PdeProblem make_problem(CaseId id, const ProblemOptions& options) {
  if (!(options.reynolds > 0)) throw ConfigError("reynolds number must be positive");
  PdeProblem p;
  p.id = id;
  p.domain = make_domain(id);
  p.options = options;
  p.field_names = {"u"};
  switch (id) {
    case CaseId::C1:
    case CaseId::C2:
    case CaseId::C3:
    case CaseId::C4:
    case CaseId::C5:
      p.blocks = [id](const CollocationSet& c, const Solution*) { return poisson_blocks(id, c); };
      break;
    case CaseId::C6:
      p.field_names = {"v1", "v2", "p"};
      p.nonlinear = options.advection_scale != 0.0;
      p.gauge_fields = {2};
      p.blocks = [options](const CollocationSet& c, const Solution* it) { return navier_stokes_blocks(c, it, options); };
      break;
    case CaseId::C7:
    case CaseId::C8: {
      const bool absorbing = options.absorbing_exact;
      p.blocks = [id, absorbing](const CollocationSet& c, const Solution*) {
        return fokker_planck_blocks(id, c, absorbing);
      };
      break;
    }
    case CaseId::C9:
      p.blocks = [](const CollocationSet& c, const Solution*) { return wave_blocks(c); };
      break;
  }
  return p;
}

Solution::Solution(AffineFeatures<double> physical, Mat<double> alpha, SolveDiagnostics diag)
    : physical_(std::move(physical)), alpha_(std::move(alpha)), diag_(std::move(diag)) {
  if (alpha_.rows() != physical_.size() + 1) throw DimensionError("solution: alpha rows must be M + 1");
}

Mat<double> Solution::evaluate(const Mat<double>& points) const {
  return eval_features(physical_, points, 0).values * alpha_;
}

Vec<double> Solution::derivative(const Mat<double>& points, int field, Index axis) const {
  if (axis < 0 || axis >= physical_.dim()) throw DimensionError("solution: derivative axis out of range");
  LinearCoeffs<double> c;
  c.c1 = Mat<double>::Zero(points.rows(), physical_.dim());
  c.c1.col(axis).setOnes();
  return operator_matrix(physical_, points, c) * alpha_.col(field);
}

LstsqSystem<double> assemble(const PdeProblem& problem, const AffineFeatures<double>& features,
                             const CollocationSet& colloc, const Solution* iterate, int iteration) {
  if (features.dim() != problem.dim())
    throw DimensionError("feature space has dim " + std::to_string(features.dim()) + ", " + to_string(problem.id) +
                         " needs " + std::to_string(problem.dim()));
  if (problem.nonlinear && iteration > 0 && iterate == nullptr)
    throw ConfigError("assemble: nonlinear problem needs the previous Picard iterate");

  const AffineFeatures<double> physical = problem.domain.ball.pull_back(features);
  const Index width = features.size() + 1;
  const std::vector<Block> blocks = problem.blocks(colloc, iterate);

  Index total = 0;
  for (const auto& b : blocks) total += b.rows();
  LstsqSystem<double> sys;
  sys.a = Mat<double>::Zero(total, problem.num_fields() * width);
  sys.b.resize(total, 1);
  sys.row_weights.resize(total);

  Index row = 0;
  for (const auto& b : blocks) {
    for (const auto& t : b.terms) {
      if (t.points.rows() != b.rows()) throw DimensionError("assemble: term rows differ from block rows");
      sys.a.block(row, t.field * width, b.rows(), width) += operator_matrix(physical, t.points, t.coeffs);
    }
    sys.b.col(0).segment(row, b.rows()) = b.rhs;
    sys.row_weights.segment(row, b.rows()).setConstant(b.weight);
    row += b.rows();
  }
  return sys;
}

namespace {

Mat<double> unpack(const Mat<double>& x, Index width, int fields) {
  Mat<double> alpha(width, fields);
  for (int f = 0; f < fields; ++f) alpha.col(f) = x.col(0).segment(f * width, width);
  return alpha;
}

}  // namespace

Solution solve_linear(const PdeProblem& problem, const AffineFeatures<double>& features,
                      const CollocationSet& colloc, double rcond) {
  const LstsqSystem<double> sys = assemble(problem, features, colloc);
  const auto sol = solve(sys, rcond);
  SolveDiagnostics diag;
  diag.residual_norm = sol.residual_norm;
  diag.rank = sol.rank;
  diag.iterations = 1;
  return Solution(problem.domain.ball.pull_back(features), unpack(sol.x, features.size() + 1, problem.num_fields()),
                  std::move(diag));
}

Solution solve_picard(const PdeProblem& problem, const AffineFeatures<double>& features,
                      const CollocationSet& colloc, double tol, int max_iter, double rcond) {
  if (max_iter < 1) throw ConfigError("picard: max_iter must be >= 1");
  if (!problem.nonlinear) return solve_linear(problem, features, colloc, rcond);

  const Index width = features.size() + 1;
  const AffineFeatures<double> physical = problem.domain.ball.pull_back(features);
  Solution current(physical, Mat<double>::Zero(width, problem.num_fields()));
  SolveDiagnostics diag;
  diag.converged = false;
  for (int k = 1; k <= max_iter; ++k) {
    const LstsqSystem<double> sys = assemble(problem, features, colloc, &current, k);
    const auto sol = solve(sys, rcond);
    Mat<double> alpha = unpack(sol.x, width, problem.num_fields());
    const double change = (alpha - current.alpha()).norm() / std::max(1.0, current.alpha().norm());
    diag.changes.push_back(change);
    diag.residual_norm = sol.residual_norm;
    diag.rank = sol.rank;
    diag.iterations = k;
    current = Solution(physical, std::move(alpha));
    if (change < tol) {
      diag.converged = true;
      break;
    }
  }
  current.diagnostics() = diag;
  return current;
}

Solution solve(const PdeProblem& problem, const AffineFeatures<double>& features, const CollocationSet& colloc) {
  return problem.nonlinear ? solve_picard(problem, features, colloc) : solve_linear(problem, features, colloc);
}

MseReport evaluate_mse(const Mat<double>& predicted, const PdeProblem& problem, const Mat<double>& test_points) {
  const Mat<double> truth = problem.exact(test_points);
  if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols())
    throw DimensionError("evaluate_mse: prediction shape does not match problem fields");
  Mat<double> err = predicted - truth;
  for (const int f : problem.gauge_fields) err.col(f).array() -= err.col(f).mean();
  MseReport out;
  out.per_field = err.colwise().squaredNorm().transpose() / static_cast<double>(test_points.rows());
  out.mean = out.per_field.mean();
  return out;
}

MseReport evaluate_mse(const Solution& solution, const PdeProblem& problem, const Mat<double>& test_points) {
  return evaluate_mse(solution.evaluate(test_points), problem, test_points);
}

}  // namespace transnet
