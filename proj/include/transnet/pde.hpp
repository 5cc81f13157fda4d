#pragma once

#include <functional>
#include <string>
#include <vector>

#include "transnet/domain.hpp"
#include "transnet/exact.hpp"
#include "transnet/features.hpp"
#include "transnet/lstsq.hpp"

namespace transnet {

class Solution;

/// One linear operator applied to one unknown field at a set of points.
struct Term {
  int field{0};
  Mat<double> points;
  LinearCoeffs<double> coeffs;
};

/// A group of residual rows sharing a weight: row j is
/// sum over terms of (operator on field at term.points[j]) - rhs[j].
struct Block {
  std::string tag;
  double weight{1};
  Vec<double> rhs;
  std::vector<Term> terms;

  Index rows() const { return rhs.size(); }
};

struct ProblemOptions {
  double reynolds{40};
  // Multiplies the linearized advection term of C6; 0 gives Stokes flow.
  double advection_scale{1};
  // Absorbing boundary of C7/C8 as u = exact (true) or u = 0 (false).
  bool absorbing_exact{true};
};

/// A benchmark PDE: geometry, unknown fields, residual rows, exact solution.
/// Residual rows are linear in the coefficients for a fixed Picard iterate.
struct PdeProblem {
  CaseId id{CaseId::C1};
  Domain domain;
  std::vector<std::string> field_names;
  bool nonlinear{false};
  // Fields determined only up to an additive constant (compared after
  // removing the mean offset).
  std::vector<int> gauge_fields;
  ProblemOptions options;

  std::function<std::vector<Block>(const CollocationSet&, const Solution* iterate)> blocks;

  int num_fields() const { return static_cast<int>(field_names.size()); }
  Index dim() const { return domain.dim(); }
  /// Exact field values, J x num_fields.
  Mat<double> exact(const Mat<double>& points) const;
};

PdeProblem make_problem(CaseId id, const ProblemOptions& options = {});

struct SolveDiagnostics {
  double residual_norm{0};
  Index rank{0};
  std::vector<double> changes;  // Picard: relative coefficient change per iteration
  int iterations{0};
  bool converged{true};
};

/// Coefficients over span{1, features} for each field, bound to the
/// features expressed in physical coordinates.
class Solution {
 public:
  Solution(AffineFeatures<double> physical, Mat<double> alpha, SolveDiagnostics diag = {});

  const Mat<double>& alpha() const { return alpha_; }
  const SolveDiagnostics& diagnostics() const { return diag_; }
  SolveDiagnostics& diagnostics() { return diag_; }
  const AffineFeatures<double>& physical_features() const { return physical_; }
  int num_fields() const { return static_cast<int>(alpha_.cols()); }

  /// Field values at physical points, J x num_fields.
  Mat<double> evaluate(const Mat<double>& points) const;
  /// d field / d x_axis at physical points.
  Vec<double> derivative(const Mat<double>& points, int field, Index axis) const;

 private:
  AffineFeatures<double> physical_;
  Mat<double> alpha_;
  SolveDiagnostics diag_;
};

/// Weighted collocation system. `features` live on the unit ball; the
/// problem's ball map is applied through the chain rule. `iteration` > 0
/// for a nonlinear problem requires `iterate`.
LstsqSystem<double> assemble(const PdeProblem& problem, const AffineFeatures<double>& features,
                             const CollocationSet& colloc, const Solution* iterate = nullptr, int iteration = 0);

Solution solve_linear(const PdeProblem& problem, const AffineFeatures<double>& features,
                      const CollocationSet& colloc, double rcond = kDefaultRcond);

/// Picard iteration: the advection velocity is frozen at the previous
/// iterate (iterate 0 is zero velocity). Stops when
/// ||a_k - a_{k-1}|| / max(1, ||a_{k-1}||) < tol. A problem whose rows do
/// not depend on the iterate converges after one solve.
Solution solve_picard(const PdeProblem& problem, const AffineFeatures<double>& features,
                      const CollocationSet& colloc, double tol = 1e-10, int max_iter = 25,
                      double rcond = kDefaultRcond);

/// Dispatches on problem.nonlinear.
Solution solve(const PdeProblem& problem, const AffineFeatures<double>& features, const CollocationSet& colloc);

struct MseReport {
  Vec<double> per_field;
  double mean{0};
};

/// Mean squared error against the exact solution; gauge fields are shifted
/// by the mean difference before comparison.
MseReport evaluate_mse(const Mat<double>& predicted, const PdeProblem& problem, const Mat<double>& test_points);
MseReport evaluate_mse(const Solution& solution, const PdeProblem& problem, const Mat<double>& test_points);

}  // namespace transnet
