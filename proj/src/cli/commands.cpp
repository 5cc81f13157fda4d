#include "transnet/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "transnet/baselines.hpp"
#include "transnet/domain.hpp"
#include "transnet/errors.hpp"
#include "transnet/feature_io.hpp"
#include "transnet/gp.hpp"
#include "transnet/pde.hpp"
#include "transnet/tuning.hpp"

#ifndef TRANSNET_VERSION
#define TRANSNET_VERSION "unknown"
#endif

namespace transnet::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void prepare_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory " + out.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

json manifest(const std::string& command, const json& config) {
  json m;
  m["tool"] = "transnet";
  m["version"] = TRANSNET_VERSION;
  m["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  m["command"] = command;
  m["config"] = config;
  return m;
}

void finish(json& m, const fs::path& out, const std::vector<std::string>& outputs) {
  m["outputs"] = outputs;
  write_text(out / "manifest.json", m.dump(2) + "\n");
}

std::vector<std::string> axis_names(Index dim, const std::string& prefix) {
  std::vector<std::string> out;
  for (Index i = 0; i < dim; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

// per_axis^dim grid on [-1,1]^dim masked to the closed unit ball.
Mat<double> ball_grid(Index dim, int per_axis) {
  return tuning_points(dim, per_axis, std::numeric_limits<Index>::max(), 0);
}

ProblemOptions problem_options(double reynolds, bool absorbing_exact) {
  ProblemOptions o;
  o.reynolds = reynolds;
  o.absorbing_exact = absorbing_exact;
  return o;
}

CaseId checked_case(const std::string& s) {
  try {
    return parse_case(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Solution run_case(const PdeProblem& problem, const AffineFeatures<double>& features, const CollocationSet& colloc,
                  double tol, int max_iter, double rcond) {
  return problem.nonlinear ? solve_picard(problem, features, colloc, tol, max_iter, rcond)
                           : solve_linear(problem, features, colloc, rcond);
}

json diagnostics_json(const SolveDiagnostics& d) {
  return {{"residual_norm", d.residual_norm},
          {"rank", d.rank},
          {"iterations", d.iterations},
          {"converged", d.converged},
          {"picard_changes", d.changes}};
}

json mse_json(const PdeProblem& problem, const MseReport& mse) {
  json j;
  for (int f = 0; f < problem.num_fields(); ++f) j[problem.field_names[f]] = mse.per_field(f);
  j["mean"] = mse.mean;
  return j;
}

}  // namespace

json run_tune(const TuneConfig& cfg, const fs::path& out) {
  require(cfg.dim >= 1, "tune: --dim must be >= 1");
  require(cfg.neurons >= 1, "tune: --neurons must be >= 1");
  require(cfg.eta > 0, "tune: --eta must be positive");
  require(cfg.realizations >= 1, "tune: --realizations must be >= 1");
  require(cfg.grid >= 2, "tune: --grid must be >= 2");
  require(cfg.gamma_count >= 1 && cfg.gamma_min > 0 && cfg.gamma_max > cfg.gamma_min,
          "tune: need 0 < gamma-min < gamma-max and gamma-count >= 1");
  prepare_dir(out);

  transnet::TuneConfig tc;
  tc.gamma_grid = log_spaced_grid(cfg.gamma_min, cfg.gamma_max, cfg.gamma_count);
  tc.realizations = cfg.realizations;
  tc.eta = cfg.eta;
  tc.sample_points = tuning_points(cfg.dim, cfg.grid, cfg.subsample_cap, cfg.seed);
  GpConfig gp;
  gp.seed = cfg.seed;
  gp.num_fourier = cfg.num_fourier;

  const FeatureSpace geometry = FeatureSpace::generate(cfg.dim, cfg.neurons, cfg.seed);
  const TuneResult result = tune_gamma(geometry, tc, gp);
  const FeatureSpace tuned = apply_tuning(geometry, tc, result);

  Csv csv({"gamma", "total_loss"});
  for (const auto& [g, loss] : result.losses) csv.row({format_double(g), format_double(loss)});
  write_text(out / "landscape.csv", csv.str());
  save_feature_space(tuned, out / "feature_space.json");

  json m = manifest("tune", cfg);
  m["results"] = {{"gamma_star", result.gamma_star},
                  {"best_loss", result.best_loss},
                  {"sample_points", tc.sample_points.rows()}};
  finish(m, out, {"landscape.csv", "feature_space.json"});
  return m;
}

json run_solve(const SolveConfig& cfg, const fs::path& out) {
  const CaseId id = checked_case(cfg.case_id);
  require(cfg.method == "transnet" || cfg.method == "random-features",
          "solve: --method must be transnet or random-features");
  require(cfg.method != "transnet" || !cfg.feature_space.empty(),
          "solve: transnet needs a tuned --feature-space file (run `transnet tune` first)");
  require(cfg.neurons >= 1, "solve: --neurons must be >= 1");
  require(cfg.picard_max_iter >= 1 && cfg.picard_tol > 0, "solve: bad Picard settings");
  prepare_dir(out);

  const PdeProblem problem = make_problem(id, problem_options(cfg.reynolds, cfg.absorbing_exact));
  AffineFeatures<double> features;
  json basis;
  if (cfg.method == "transnet") {
    const FeatureSpace space = load_feature_space(cfg.feature_space, problem.dim());
    features = space.affine();
    basis = {{"m", space.size()}, {"gamma", space.gamma()}, {"seed", space.seed()}};
  } else {
    features = sample_random_features(problem.dim(), cfg.neurons, cfg.seed).affine();
    basis = {{"m", cfg.neurons}, {"seed", cfg.seed}};
  }
  const CollocationSet colloc = make_collocation(id, cfg.seed);
  const Solution sol = run_case(problem, features, colloc, cfg.picard_tol, cfg.picard_max_iter, cfg.rcond);
  const MseReport mse = evaluate_mse(sol, problem, colloc.test);

  json alpha = json::object();
  for (int f = 0; f < problem.num_fields(); ++f) {
    const Vec<double> col = sol.alpha().col(f);
    alpha[problem.field_names[f]] = std::vector<double>(col.data(), col.data() + col.size());
  }
  json solution = {{"case", to_string(id)},
                   {"method", cfg.method},
                   {"basis", basis},
                   {"fields", problem.field_names},
                   {"alpha", alpha},
                   {"diagnostics", diagnostics_json(sol.diagnostics())},
                   {"mse", mse_json(problem, mse)}};
  write_text(out / "solution.json", solution.dump(1) + "\n");

  std::vector<std::string> header = axis_names(problem.dim(), "x");
  for (const auto& n : problem.field_names) header.push_back(n);
  for (const auto& n : problem.field_names) header.push_back(n + "_exact");
  Csv csv(header);
  const Mat<double> pred = sol.evaluate(colloc.test);
  const Mat<double> truth = problem.exact(colloc.test);
  for (Index j = 0; j < colloc.test.rows(); ++j) {
    std::vector<std::string> cells;
    for (Index i = 0; i < colloc.test.cols(); ++i) cells.push_back(format_double(colloc.test(j, i)));
    for (Index f = 0; f < pred.cols(); ++f) cells.push_back(format_double(pred(j, f)));
    for (Index f = 0; f < truth.cols(); ++f) cells.push_back(format_double(truth(j, f)));
    csv.row(cells);
  }
  write_text(out / "field.csv", csv.str());

  json m = manifest("solve", cfg);
  m["results"] = {{"mse", mse_json(problem, mse)},
                  {"status", sol.diagnostics().converged ? "ok" : "not_converged"},
                  {"basis", basis}};
  finish(m, out, {"solution.json", "field.csv"});
  return m;
}

json run_sweep(const SweepConfig& cfg, const fs::path& out) {
  const CaseId id = checked_case(cfg.case_id);
  require(cfg.method == "transnet" || cfg.method == "random-features" || cfg.method == "both",
          "sweep: --method must be transnet, random-features or both");
  const bool want_tn = cfg.method != "random-features";
  const bool want_rf = cfg.method != "transnet";
  require(!want_tn || !cfg.feature_spaces.empty(), "sweep: transnet needs --feature-space file(s)");
  for (const Index m : cfg.neurons) require(m >= 1, "sweep: --neurons entries must be >= 1");
  prepare_dir(out);

  const PdeProblem problem = make_problem(id, problem_options(cfg.reynolds, cfg.absorbing_exact));
  const CollocationSet colloc = make_collocation(id, cfg.seed);

  std::vector<std::pair<std::string, FeatureSpace>> spaces;
  if (!cfg.feature_spaces.empty()) {
    std::vector<FeatureSpace> loaded;
    for (const auto& f : cfg.feature_spaces) loaded.push_back(load_feature_space(f, problem.dim()));
    if (loaded.size() == 1 && !cfg.neurons.empty()) {
      for (const Index m : cfg.neurons) {
        require(m <= loaded[0].size(), "sweep: --neurons entry exceeds the feature space size");
        spaces.emplace_back("transnet", loaded[0].prefix(m));
      }
    } else {
      for (auto& s : loaded) spaces.emplace_back("transnet", std::move(s));
    }
  }
  std::vector<Index> rf_sizes = cfg.neurons;
  if (rf_sizes.empty())
    for (const auto& [_, s] : spaces) rf_sizes.push_back(s.size());
  require(!want_rf || !rf_sizes.empty(), "sweep: random-features needs --neurons or feature spaces");

  std::vector<std::string> header = {"case", "method", "m"};
  for (const auto& n : problem.field_names) header.push_back("mse_" + n);
  header.push_back("mse_mean");
  Csv csv(header);
  Csv timing({"case", "method", "m", "wallclock_seconds"});
  json rows = json::array();

  const auto record = [&](const std::string& method, Index m, const AffineFeatures<double>& features) {
    const auto t0 = std::chrono::steady_clock::now();
    const Solution sol = run_case(problem, features, colloc, cfg.picard_tol, cfg.picard_max_iter, cfg.rcond);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const MseReport mse = evaluate_mse(sol, problem, colloc.test);
    std::vector<std::string> cells = {to_string(id), method, std::to_string(m)};
    for (Index f = 0; f < mse.per_field.size(); ++f) cells.push_back(format_double(mse.per_field(f)));
    cells.push_back(format_double(mse.mean));
    csv.row(cells);
    timing.row({to_string(id), method, std::to_string(m), format_double(secs)});
    rows.push_back({{"method", method}, {"m", m}, {"mse", mse_json(problem, mse)},
                    {"converged", sol.diagnostics().converged}});
  };

  if (want_tn)
    for (const auto& [method, space] : spaces) record(method, space.size(), space.affine());
  if (want_rf)
    for (const Index m : rf_sizes) record("random-features", m, sample_random_features(problem.dim(), m, cfg.seed).affine());

  write_text(out / "sweep.csv", csv.str());
  // Wall-clock timings vary run to run, so they live outside the
  // reproducible outputs.
  write_text(out / "sweep_timing.csv", timing.str());
  json m = manifest("sweep", cfg);
  m["results"] = {{"rows", rows}};
  finish(m, out, {"sweep.csv"});
  return m;
}

json run_density(const DensityConfig& cfg, const fs::path& out) {
  require(cfg.dim >= 1, "density: --dim must be >= 1");
  require(cfg.neurons >= 1, "density: --neurons must be >= 1");
  require(cfg.tau > 0 && cfg.tau < 1, "density: --tau must lie in (0,1)");
  require(cfg.method == "transnet" || cfg.method == "random-features",
          "density: --method must be transnet or random-features");
  require(cfg.grid >= 2, "density: --grid must be >= 2");
  prepare_dir(out);

  const AffineFeatures<double> features =
      cfg.method == "transnet" ? FeatureSpace::generate(cfg.dim, cfg.neurons, cfg.seed).affine()
                               : sample_random_features(cfg.dim, cfg.neurons, cfg.seed).affine();
  const Mat<double> pts = ball_grid(cfg.dim, cfg.grid);

  std::vector<std::string> header = axis_names(cfg.dim, "y");
  header.push_back("density");
  Csv csv(header);
  const double band = 3.0 * std::sqrt(cfg.tau * (1.0 - cfg.tau) / static_cast<double>(cfg.neurons));
  double sum = 0;
  double sum_sq = 0;
  Index inner = 0;
  Index in_band = 0;
  for (Index j = 0; j < pts.rows(); ++j) {
    const Vec<double> y = pts.row(j).transpose();
    const double d = density(y, features, cfg.tau);
    std::vector<std::string> cells;
    for (Index i = 0; i < cfg.dim; ++i) cells.push_back(format_double(y(i)));
    cells.push_back(format_double(d));
    csv.row(cells);
    if (y.norm() <= 1.0 - cfg.tau) {
      ++inner;
      sum += d;
      sum_sq += d * d;
      if (std::abs(d - cfg.tau) <= band) ++in_band;
    }
  }
  write_text(out / "density.csv", csv.str());

  json m = manifest("density", cfg);
  const double n = static_cast<double>(std::max<Index>(inner, 1));
  const double mean = sum / n;
  m["results"] = {{"inner_points", inner},
                  {"inner_mean", mean},
                  {"inner_variance", std::max(0.0, sum_sq / n - mean * mean)},
                  {"band_halfwidth", band},
                  {"fraction_in_band", static_cast<double>(in_band) / n}};
  finish(m, out, {"density.csv"});
  return m;
}

json run_gp_sample(const GpSampleConfig& cfg, const fs::path& out) {
  require(cfg.dim >= 1, "gp-sample: --dim must be >= 1");
  require(cfg.eta > 0 && cfg.variance > 0, "gp-sample: --eta and --variance must be positive");
  require(cfg.realizations >= 1, "gp-sample: --realizations must be >= 1");
  require(cfg.grid >= 2, "gp-sample: --grid must be >= 2");
  prepare_dir(out);

  const Mat<double> pts = ball_grid(cfg.dim, cfg.grid);
  GpConfig gp{cfg.eta, cfg.variance, cfg.num_fourier, cfg.seed};
  const GpSampler sampler(pts, gp);

  std::vector<std::string> header = {"realization"};
  for (const auto& a : axis_names(cfg.dim, "y")) header.push_back(a);
  header.push_back("value");
  Csv csv(header);
  for (int k = 0; k < cfg.realizations; ++k) {
    const GpRealization r = sampler.sample(k);
    for (Index j = 0; j < pts.rows(); ++j) {
      std::vector<std::string> cells = {std::to_string(k)};
      for (Index i = 0; i < cfg.dim; ++i) cells.push_back(format_double(pts(j, i)));
      cells.push_back(format_double(r.values(j)));
      csv.row(cells);
    }
  }
  write_text(out / "gp.csv", csv.str());
  json m = manifest("gp-sample", cfg);
  m["results"] = {{"points", pts.rows()},
                  {"method", sampler.method() == GpSampler::Method::kCholesky ? "cholesky" : "fourier"}};
  finish(m, out, {"gp.csv"});
  return m;
}

json replay(const fs::path& manifest_path, const fs::path& out) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw ConfigError("cannot read manifest " + manifest_path.string());
  json m;
  try {
    m = json::parse(in);
    const std::string command = m.at("command").get<std::string>();
    const json& cfg = m.at("config");
    if (command == "tune") return run_tune(cfg.get<TuneConfig>(), out);
    if (command == "solve") return run_solve(cfg.get<SolveConfig>(), out);
    if (command == "sweep") return run_sweep(cfg.get<SweepConfig>(), out);
    if (command == "density") return run_density(cfg.get<DensityConfig>(), out);
    if (command == "gp-sample") return run_gp_sample(cfg.get<GpSampleConfig>(), out);
    throw ConfigError("manifest names unknown command '" + command + "'");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace transnet::cli
