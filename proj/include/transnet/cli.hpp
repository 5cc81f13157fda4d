#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "transnet/exact.hpp"
#include "transnet/features.hpp"

namespace transnet::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kNumericalFailure = 2 };

struct TuneConfig {
  Index dim{2};
  Index neurons{1000};
  double eta{0.5};
  std::uint64_t seed{0};
  int realizations{10};
  double gamma_min{0.25};
  double gamma_max{8.0};
  int gamma_count{24};
  int grid{50};
  Index subsample_cap{20000};
  int num_fourier{2048};
};

struct SolveConfig {
  std::string case_id{"C1"};
  std::string method{"transnet"};  // transnet | random-features
  std::string feature_space;       // required for transnet
  Index neurons{1000};             // random-features only
  std::uint64_t seed{0};           // random features and collocation/test sets
  double reynolds{40};
  double picard_tol{1e-10};
  int picard_max_iter{25};
  bool absorbing_exact{true};
  double rcond{1e-12};
};

struct SweepConfig {
  std::string case_id{"C1"};
  std::string method{"both"};  // transnet | random-features | both
  // One tuned file per M, or a single file whose prefixes are swept over
  // `neurons` (keeping its gamma).
  std::vector<std::string> feature_spaces;
  std::vector<Index> neurons;
  std::uint64_t seed{0};
  double reynolds{40};
  double picard_tol{1e-10};
  int picard_max_iter{25};
  bool absorbing_exact{true};
  double rcond{1e-12};
};

struct DensityConfig {
  Index dim{2};
  Index neurons{1000};
  double tau{0.05};
  std::uint64_t seed{0};
  std::string method{"transnet"};  // transnet | random-features
  int grid{101};
};

struct GpSampleConfig {
  Index dim{2};
  double eta{0.5};
  double variance{1.0};
  std::uint64_t seed{0};
  int realizations{3};
  int grid{50};
  int num_fourier{2048};
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TuneConfig, dim, neurons, eta, seed, realizations, gamma_min,
                                                gamma_max, gamma_count, grid, subsample_cap, num_fourier)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SolveConfig, case_id, method, feature_space, neurons, seed,
                                                reynolds, picard_tol, picard_max_iter, absorbing_exact, rcond)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SweepConfig, case_id, method, feature_spaces, neurons, seed,
                                                reynolds, picard_tol, picard_max_iter, absorbing_exact, rcond)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DensityConfig, dim, neurons, tau, seed, method, grid)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GpSampleConfig, dim, eta, variance, seed, realizations, grid,
                                                num_fourier)

// Each command validates its config (ConfigError on failure), writes its
// outputs and a manifest.json into `out`, and returns the manifest.
nlohmann::json run_tune(const TuneConfig& cfg, const fs::path& out);
nlohmann::json run_solve(const SolveConfig& cfg, const fs::path& out);
nlohmann::json run_sweep(const SweepConfig& cfg, const fs::path& out);
nlohmann::json run_density(const DensityConfig& cfg, const fs::path& out);
nlohmann::json run_gp_sample(const GpSampleConfig& cfg, const fs::path& out);

/// Re-runs the command recorded in a manifest into a new directory.
nlohmann::json replay(const fs::path& manifest, const fs::path& out);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace transnet::cli
