#include "safesets/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace safesets {

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["config_echo"] = config_echo;
  j["tool_version"] = tool_version;
  return j.dump(2) + "\n";
}

void RunManifest::write_alongside(const std::filesystem::path& primary_output) const {
  const std::filesystem::path path =
      primary_output.string() + ".manifest.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
  out << to_json();
}

}  // namespace safesets
