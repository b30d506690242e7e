#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace edgeflow {

/// Line-oriented key = value settings. '#' starts a comment, blank lines are
/// skipped, keys are unique. Typed getters raise ParseError carrying the line
/// of the offending entry.
class Config {
 public:
  static Config parse(std::string_view text, std::string source = "<text>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  /// Comma or whitespace separated numbers.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  /// Sets or replaces an entry (used for command-line overrides).
  void set(const std::string& key, const std::string& value);

  /// Keys present in the text that no getter asked for.
  std::vector<std::string> unused_keys() const;

  /// Sorted key=value lines; the input of the config hash.
  std::string canonical() const;
  const std::string& source() const { return source_; }
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  const std::string* find(const std::string& key) const;
  int line_of(const std::string& key) const;

  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  mutable std::set<std::string> used_;
  std::string source_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
/// 16 lower-case hex digits.
std::string hex64(std::uint64_t v);

}  // namespace edgeflow
