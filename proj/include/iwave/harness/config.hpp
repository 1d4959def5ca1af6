#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iwave/error.hpp"

namespace iwave {

// Malformed configuration; what() starts with "<source>:<line>:".
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Plain-text configuration: one "key = value" per line, '#' starts a comment,
// arrays are comma separated. Keys may be dotted ("grid.points"). A key may
// appear once.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& source = "<config>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<int> get_ints(const std::string& key) const;

  // Rejects the first key not in the set, in file order.
  void require_known(const std::set<std::string>& known) const;

  // Line of a key, 0 when absent.
  int line_of(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string source_;
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  const Entry& at(const std::string& key) const;
};

}  // namespace iwave
