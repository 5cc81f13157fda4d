#include "transnet/feature_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace transnet {

using nlohmann::json;

std::string serialize(const FeatureSpace& fs) {
  json j;
  j["version"] = kFeatureSpaceFormatVersion;
  j["dim"] = fs.dim();
  j["m"] = fs.size();
  j["seed"] = fs.seed();
  j["gamma"] = fs.gamma();
  json a = json::array();
  for (Index m = 0; m < fs.size(); ++m) {
    json row = json::array();
    for (Index i = 0; i < fs.dim(); ++i) row.push_back(fs.directions()(m, i));
    a.push_back(std::move(row));
  }
  j["a"] = std::move(a);
  j["r"] = std::vector<double>(fs.radii().data(), fs.radii().data() + fs.size());
  if (const auto& meta = fs.tuning()) {
    j["tuning"] = {{"eta", meta->eta},
                   {"realizations", meta->realizations},
                   {"gamma_grid", meta->gamma_grid},
                   {"achieved_loss", meta->achieved_loss}};
  }
  return j.dump(1);
}

FeatureSpace deserialize(const std::string& text, std::optional<Index> expected_dim) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("feature space: parse error: ") + e.what());
  }
  try {
    if (!j.is_object()) throw FormatError("feature space: top level is not an object");
    if (j.at("version").get<int>() != kFeatureSpaceFormatVersion)
      throw FormatError("feature space: unsupported version " + j.at("version").dump());
    const auto dim = j.at("dim").get<Index>();
    const auto count = j.at("m").get<Index>();
    if (dim < 1 || count < 1) throw FormatError("feature space: dim and m must be >= 1");
    if (expected_dim && *expected_dim != dim)
      throw DimensionError("feature space has dim " + std::to_string(dim) + ", problem needs " +
                           std::to_string(*expected_dim));
    const auto& a = j.at("a");
    const auto& r = j.at("r");
    if (!a.is_array() || !r.is_array() || static_cast<Index>(a.size()) != count ||
        static_cast<Index>(r.size()) != count)
      throw FormatError("feature space: a/r arrays do not have m entries");
    Mat<double> dirs(count, dim);
    Vec<double> radii(count);
    for (Index m = 0; m < count; ++m) {
      const auto& row = a.at(m);
      if (!row.is_array() || static_cast<Index>(row.size()) != dim)
        throw FormatError("feature space: direction row " + std::to_string(m) + " does not have dim entries");
      for (Index i = 0; i < dim; ++i) dirs(m, i) = row.at(i).get<double>();
      radii(m) = r.at(m).get<double>();
    }
    std::optional<TuningMeta> meta;
    if (j.contains("tuning")) {
      const auto& t = j.at("tuning");
      meta = TuningMeta{t.at("eta").get<double>(), t.at("realizations").get<int>(),
                        t.at("gamma_grid").get<std::vector<double>>(), t.at("achieved_loss").get<double>()};
    }
    const auto seed = j.at("seed").get<std::uint64_t>();
    const auto gamma = j.at("gamma").get<double>();
    try {
      return FeatureSpace(std::move(dirs), std::move(radii), seed, gamma, std::move(meta));
    } catch (const DimensionError&) {
      throw;
    } catch (const ConfigError& e) {
      throw FormatError(e.what());
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("feature space: ") + e.what());
  }
}

void save_feature_space(const FeatureSpace& fs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << serialize(fs) << '\n';
}

FeatureSpace load_feature_space(const std::filesystem::path& path, std::optional<Index> expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read feature space file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str(), expected_dim);
}

}  // namespace transnet
