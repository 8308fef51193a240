#include "safesets/config.hpp"

#include <fstream>
#include <sstream>

namespace safesets {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Config cfg = parse_string(buf.str(), path.string());
  cfg.origin_path_ = path;
  return cfg;
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      if (cfg.sections_.count(section)) {
        throw ConfigError(where + ": duplicate section [" + section + "]");
      }
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) {
      throw ConfigError(where + ": duplicate key '" + key + "' in [" + section + "]");
    }
    sec[key] = value;
  }
  return cfg;
}

bool Config::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool Config::has_key(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::vector<std::string> Config::sections_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [name, _] : sections_) {
    if (name.rfind(prefix, 0) == 0) out.push_back(name);
  }
  return out;
}

void Config::missing(const std::string& section, const std::string& key) const {
  throw ConfigError(origin_ + ": missing key '" + key + "' in [" + section + "]");
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  const auto sec = sections_.find(section);
  if (sec == sections_.end()) missing(section, key);
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) missing(section, key);
  return it->second;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  return has_key(section, key) ? get_string(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const std::string raw = get_string(section, key);
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (trim(raw.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(origin_ + ": [" + section + "] " + key + " = '" + raw +
                    "' is not a number");
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has_key(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long(const std::string& section, const std::string& key) const {
  const std::string raw = get_string(section, key);
  try {
    std::size_t used = 0;
    const long v = std::stol(raw, &used);
    if (trim(raw.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(origin_ + ": [" + section + "] " + key + " = '" + raw +
                    "' is not an integer");
}

long Config::get_long_or(const std::string& section, const std::string& key,
                         long fallback) const {
  return has_key(section, key) ? get_long(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
  if (!has_key(section, key)) return fallback;
  const std::string raw = get_string(section, key);
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw ConfigError(origin_ + ": [" + section + "] " + key + " = '" + raw +
                    "' is not a boolean");
}

std::vector<double> Config::get_doubles(const std::string& section,
                                        const std::string& key) const {
  const std::string raw = get_string(section, key);
  std::istringstream in(raw);
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (in.eof() && !values.empty()) return values;
  throw ConfigError(origin_ + ": [" + section + "] " + key + " = '" + raw +
                    "' is not a list of numbers");
}

std::map<std::string, std::string> Config::flattened() const {
  std::map<std::string, std::string> flat;
  for (const auto& [sec, kv] : sections_) {
    for (const auto& [key, value] : kv) flat[sec + "." + key] = value;
  }
  return flat;
}

}  // namespace safesets
