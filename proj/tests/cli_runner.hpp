#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace cli_runner {

namespace fs = std::filesystem;

/// Runs the CLI with `args`, discarding its output, and returns the exit code.
inline int run(const std::string& args) {
  const std::string cmd = std::string("\"") + TRANSNET_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

/// Fresh scratch directory under the system temp dir.
inline fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("transnet_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

/// True when every file listed in the manifest (and the manifest itself) is
/// byte-identical between the two directories.
inline bool same_outputs(const fs::path& a, const fs::path& b) {
  const auto m = read_json(a / "manifest.json");
  if (slurp(a / "manifest.json") != slurp(b / "manifest.json")) return false;
  for (const auto& f : m.at("outputs")) {
    const std::string name = f.get<std::string>();
    if (!fs::exists(a / name) || slurp(a / name) != slurp(b / name)) return false;
  }
  return true;
}

}  // namespace cli_runner
