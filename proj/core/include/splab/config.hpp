#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "splab/vec.hpp"

namespace splab {

/// Flat string map read from `key = value` lines (# comments) or from a JSON
/// object. JSON arrays become comma lists, arrays of arrays become
/// `a b; c d` vector lists. Every accessor throws ConfigError on a missing
/// key or a malformed value.
class Config {
 public:
  Config() = default;

  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void erase(const std::string& key) { values_.erase(key); }
  const std::map<std::string, std::string>& entries() const { return values_; }

  std::string str(const std::string& key) const;
  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
  // `1 0; 0 1` or `1/0, 0/1`; missing components are zero.
  std::vector<Vec> vectors(const std::string& key) const;

  // Returns a copy with the entries of `over` replacing ours.
  Config merged(const Config& over) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace splab
