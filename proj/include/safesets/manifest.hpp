#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace safesets {

// Reproducibility record written alongside every CLI output. Contains no
// timestamps so repeated runs stay byte-identical.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::map<std::string, std::string> config_echo;
  std::string tool_version;

  std::string to_json() const;

  // Writes <primary_output>.manifest.json next to the primary output.
  void write_alongside(const std::filesystem::path& primary_output) const;
};

}  // namespace safesets
