#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpc {

/// Flat key-value config: `key = value` lines, optional `[section]` headers
/// that prefix subsequent keys as `section.key`, `#` comments.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;  // comma separated

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// Config lookup failure carrying the offending key (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("config error: key `" + key + "`: " + what), key(key) {}
  std::string key;
};

// Write-temp-rename; the destination never holds a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string csv_join(const std::vector<std::string>& cells);
std::string format_double(double v);

}  // namespace dpc
