#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "transnet/features.hpp"

namespace transnet {

inline constexpr int kFeatureSpaceFormatVersion = 1;

/// JSON text: {version, dim, m, seed, gamma, a: [[...]], r: [...], tuning?}.
/// Doubles are written with round-trip precision, so serialize/deserialize
/// is bit-exact.
std::string serialize(const FeatureSpace& fs);

/// Throws FormatError on malformed input and DimensionError when
/// `expected_dim` is given and differs from the stored dimension.
FeatureSpace deserialize(const std::string& text, std::optional<Index> expected_dim = std::nullopt);

void save_feature_space(const FeatureSpace& fs, const std::filesystem::path& path);
FeatureSpace load_feature_space(const std::filesystem::path& path, std::optional<Index> expected_dim = std::nullopt);

}  // namespace transnet
