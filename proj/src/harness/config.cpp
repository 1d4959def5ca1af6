#include "iwave/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace iwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& source) {
  Config c;
  c.source_ = source;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line) + ": expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line) + ": missing key before '='");
    const bool valid = std::all_of(key.begin(), key.end(), [](unsigned char ch) {
      return std::isalnum(ch) || ch == '_' || ch == '.';
    });
    if (!valid) throw ConfigError(source + ":" + std::to_string(line) + ": invalid key '" + key + "'");
    if (value.empty()) throw ConfigError(source + ":" + std::to_string(line) + ": missing value for '" + key + "'");
    if (auto it = c.entries_.find(key); it != c.entries_.end())
      throw ConfigError(source + ":" + std::to_string(line) + ": duplicate key '" + key + "' (first set on line " +
                        std::to_string(it->second.line) + ")");
    c.entries_[key] = {value, line};
    c.order_.push_back(key);
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ":0: cannot open configuration file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

int Config::line_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

void Config::fail(const std::string& key, const std::string& message) const {
  throw ConfigError(source_ + ":" + std::to_string(line_of(key)) + ": " + key + ": " + message);
}

const Config::Entry& Config::at(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(source_ + ":0: missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return at(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? at(key).value : fallback;
}

double Config::get_double(const std::string& key) const {
  const auto v = to_double(at(key).value);
  if (!v) fail(key, "expected a number, got '" + at(key).value + "'");
  return *v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::optional<double> Config::get_optional_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

int Config::get_int(const std::string& key) const {
  const auto v = to_int(at(key).value);
  if (!v) fail(key, "expected an integer, got '" + at(key).value + "'");
  return *v;
}

int Config::get_int(const std::string& key, int fallback) const { return has(key) ? get_int(key) : fallback; }

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = at(key).value;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(key, "expected true or false, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_commas(at(key).value)) {
    const auto v = to_double(item);
    if (!v) fail(key, "expected a comma-separated list of numbers, got '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<int> Config::get_ints(const std::string& key) const {
  std::vector<int> out;
  for (const std::string& item : split_commas(at(key).value)) {
    const auto v = to_int(item);
    if (!v) fail(key, "expected a comma-separated list of integers, got '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

void Config::require_known(const std::set<std::string>& known) const {
  for (const std::string& key : order_)
    if (!known.count(key)) fail(key, "unknown key");
}

std::vector<std::pair<std::string, std::string>> Config::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& key : order_) out.emplace_back(key, entries_.at(key).value);
  return out;
}

}  // namespace iwave
