#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace safesets {

// Raised for any malformed config/model/scenario input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal "[section]" / "key = value" file format shared by model and
// scenario files. '#' and ';' start comments; duplicate keys in a section
// are rejected.
class Config {
 public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has_section(const std::string& section) const;
  bool has_key(const std::string& section, const std::string& key) const;
  std::vector<std::string> sections_with_prefix(const std::string& prefix) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_long(const std::string& section, const std::string& key) const;
  long get_long_or(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& section, const std::string& key) const;

  // Flattened "section.key" -> raw value view, for manifest echoing.
  std::map<std::string, std::string> flattened() const;

  const std::filesystem::path& origin_path() const { return origin_path_; }

 private:
  [[noreturn]] void missing(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string origin_;
  std::filesystem::path origin_path_;
};

}  // namespace safesets
