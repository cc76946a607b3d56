#include "splab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "splab/errors.hpp"

namespace splab {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + key + "': '" + text + "' is not a number");
  }
  return v;
}

std::string scalar_text(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  return j.dump();
}

std::string json_value_text(const std::string& key, const nlohmann::json& j) {
  if (!j.is_array()) {
    if (j.is_object()) throw ConfigError("config key '" + key + "': nested objects are not supported");
    return scalar_text(j);
  }
  std::string out;
  const bool nested = !j.empty() && j.front().is_array();
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) out += nested ? "; " : ",";
    if (nested) {
      for (std::size_t k = 0; k < j[i].size(); ++k) {
        if (k) out += ' ';
        out += scalar_text(j[i][k]);
      }
    } else {
      out += scalar_text(j[i]);
    }
  }
  return out;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config c;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config JSON does not parse: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) c.set(it.key(), json_value_text(it.key(), it.value()));
    return c;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    c.set(key, trim(t.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

double Config::num(const std::string& key) const { return to_double(key, str(key)); }

int Config::integer(const std::string& key) const {
  const double v = num(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

bool Config::flag(const std::string& key) const {
  std::string v = str(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty()) return false;
  throw ConfigError("config key '" + key + "' must be a boolean");
}

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& part : split(str(key), ',')) {
    if (!part.empty()) out.push_back(to_double(key, part));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "' is an empty list");
  return out;
}

std::vector<Vec> Config::vectors(const std::string& key) const {
  const std::string raw = str(key);
  const bool slash = raw.find('/') != std::string::npos;
  std::vector<Vec> out;
  for (std::string group : split(raw, slash ? ',' : ';')) {
    if (group.empty()) continue;
    std::replace(group.begin(), group.end(), '/', ' ');
    std::istringstream in(group);
    Vec v{};
    std::string tok;
    int d = 0;
    while (in >> tok) {
      if (d >= kMaxDim) throw ConfigError("config key '" + key + "': vector has more than 3 components");
      v[d++] = to_double(key, tok);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("config key '" + key + "' is an empty vector list");
  return out;
}

Config Config::merged(const Config& over) const {
  Config c = *this;
  for (const auto& [k, v] : over.values_) c.values_[k] = v;
  return c;
}

}  // namespace splab
