#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace transnet {

enum class CaseId { C1 = 1, C2, C3, C4, C5, C6, C7, C8, C9 };

inline constexpr CaseId kAllCases[] = {CaseId::C1, CaseId::C2, CaseId::C3, CaseId::C4, CaseId::C5,
                                       CaseId::C6, CaseId::C7, CaseId::C8, CaseId::C9};

inline std::string to_string(CaseId id) { return "C" + std::to_string(static_cast<int>(id)); }

/// Parses "C1".."C9" (case-insensitive prefix).
inline CaseId parse_case(std::string_view s) {
  if (s.size() == 2 && (s[0] == 'C' || s[0] == 'c') && s[1] >= '1' && s[1] <= '9')
    return static_cast<CaseId>(s[1] - '0');
  throw std::invalid_argument("unknown case '" + std::string(s) + "' (expected C1..C9)");
}

/// Closed-form solutions of the benchmark problems. Templated on the scalar
/// so they can be evaluated with dual numbers. Space-time cases order the
/// coordinates as (space..., t).
namespace exact {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFpSigma = 0.3;
inline constexpr double kFpInitialVariance = 0.16;  // 0.4^2
inline constexpr double kWaveSpeedSq = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi);

template <typename T>
T poisson2d(const T& x1, const T& x2) {
  using std::sin;
  return sin(kTwoPi * x1) * sin(kTwoPi * x2);
}

template <typename T>
T poisson3d(const T& x1, const T& x2, const T& x3) {
  using std::sin;
  return sin(kTwoPi * x1) * sin(kTwoPi * x2) * sin(kTwoPi * x3);
}

/// Kovasznay flow parameter lambda = 1/(2 nu) - sqrt(1/(4 nu^2) + 4 pi^2).
inline double kovasznay_lambda(double nu) {
  return 1.0 / (2.0 * nu) - std::sqrt(1.0 / (4.0 * nu * nu) + 4.0 * std::numbers::pi * std::numbers::pi);
}

template <typename T>
T kovasznay_v1(const T& x1, const T& x2, double nu) {
  using std::cos;
  using std::exp;
  return 1.0 - exp(kovasznay_lambda(nu) * x1) * cos(kTwoPi * x2);
}

template <typename T>
T kovasznay_v2(const T& x1, const T& x2, double nu) {
  using std::exp;
  using std::sin;
  const double lam = kovasznay_lambda(nu);
  return lam / kTwoPi * exp(lam * x1) * sin(kTwoPi * x2);
}

template <typename T>
T kovasznay_p(const T& x1, const T& /*x2*/, double nu) {
  using std::exp;
  return 0.5 * (1.0 - exp(2.0 * kovasznay_lambda(nu) * x1));
}

// 1D Fokker-Planck: drift 2 cos(3t), sigma 0.3.
inline double fp1d_drift(double t) { return 2.0 * std::cos(3.0 * t); }

template <typename T>
T fp1d(const T& x, const T& t) {
  using std::exp;
  using std::sin;
  using std::sqrt;
  const T mean = 2.0 * sin(3.0 * t) / 3.0;
  const T var = kFpInitialVariance + kFpSigma * kFpSigma * t;
  const T dx = x - mean;
  return exp(-(dx * dx) / (2.0 * var)) / sqrt(kTwoPi * var);
}

// 2D Fokker-Planck: drift (sin 2 pi t, cos 2 pi t), sigma 0.3.
inline double fp2d_drift(int axis, double t) {
  return axis == 0 ? std::sin(kTwoPi * t) : std::cos(kTwoPi * t);
}

template <typename T>
T fp2d(const T& x1, const T& x2, const T& t) {
  using std::cos;
  using std::exp;
  using std::sin;
  const T m1 = -(cos(kTwoPi * t) - 1.0) / kTwoPi;
  const T m2 = sin(kTwoPi * t) / kTwoPi;
  const T var = kFpInitialVariance + kFpSigma * kFpSigma * t;
  const T d1 = x1 - m1;
  const T d2 = x2 - m2;
  return exp(-(d1 * d1 + d2 * d2) / (2.0 * var)) / (kTwoPi * var);
}

template <typename T>
T wave(const T& x, const T& t) {
  using std::sin;
  const double k = 2.0 * kTwoPi;  // 4 pi
  return 0.5 * (sin(k * x + t) + sin(k * x - t));
}

/// Field `field` of case `id` at point `x` (length = problem dimension).
/// `nu` is only used by C6.
template <typename T>
T value(CaseId id, int field, const T* x, double nu = 1.0 / 40.0) {
  switch (id) {
    case CaseId::C1:
    case CaseId::C2:
    case CaseId::C3:
    case CaseId::C4:
      return poisson2d(x[0], x[1]);
    case CaseId::C5:
      return poisson3d(x[0], x[1], x[2]);
    case CaseId::C6:
      if (field == 0) return kovasznay_v1(x[0], x[1], nu);
      if (field == 1) return kovasznay_v2(x[0], x[1], nu);
      return kovasznay_p(x[0], x[1], nu);
    case CaseId::C7:
      return fp1d(x[0], x[1]);
    case CaseId::C8:
      return fp2d(x[0], x[1], x[2]);
    case CaseId::C9:
      return wave(x[0], x[1]);
  }
  throw std::invalid_argument("exact::value: bad case");
}

}  // namespace exact
}  // namespace transnet
