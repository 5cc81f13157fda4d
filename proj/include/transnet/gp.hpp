#pragma once

#include <cstdint>
#include <vector>

#include "transnet/features.hpp"

namespace transnet {

/// Zero-mean stationary Gaussian process with squared-exponential kernel
///   k(x, x') = variance * exp(-|x - x'|^2 / (2 eta^2)).
struct GpConfig {
  double eta{0.5};
  double variance{1.0};
  int num_fourier{2048};
  std::uint64_t seed{0};
};

struct GpRealization {
  Mat<double> points;  // J x d
  Vec<double> values;  // J
  GpConfig config;
  int realization_index{0};
};

/// Above this many distinct points sampling switches from an exact Cholesky
/// factorization to random Fourier features.
inline constexpr Index kCholeskyLimit = 4096;

double gp_kernel(const GpConfig& cfg, const Vec<double>& x, const Vec<double>& y);
Mat<double> gp_kernel_matrix(const GpConfig& cfg, const Mat<double>& points);

/// Draws realizations on a fixed point set. The Cholesky factor is computed
/// once and shared by every realization. Realization k depends only on
/// (cfg.seed, k).
class GpSampler {
 public:
  enum class Method { kAuto, kCholesky, kFourier };

  GpSampler(Mat<double> points, GpConfig cfg, Method method = Method::kAuto);

  GpRealization sample(int k) const;
  Method method() const { return method_; }
  // Diagonal jitter that made the kernel matrix factorizable (Cholesky only).
  double jitter() const { return jitter_; }

 private:
  Vec<double> sample_cholesky(int k) const;
  Vec<double> sample_fourier(int k) const;

  Mat<double> points_;
  GpConfig cfg_;
  Method method_;
  std::vector<Index> unique_of_;  // point j -> row of the deduplicated set
  Mat<double> factor_;            // lower Cholesky factor over unique points
  double jitter_{0};
};

/// One realization; exact Cholesky when J <= kCholeskyLimit, Fourier otherwise.
GpRealization sample_gp(const Mat<double>& points, const GpConfig& cfg, int k);

}  // namespace transnet
