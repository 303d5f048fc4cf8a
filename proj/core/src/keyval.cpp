#include "magcut/keyval.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "magcut/errors.hpp"
#include "magcut/signal_io.hpp"

namespace magcut {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

void KeyValues::set(const std::string& key, const std::string& value) {
  auto it = map_.find(key);
  if (it == map_.end()) {
    items_.emplace_back(key, value);
  } else {
    for (auto& kv : items_)
      if (kv.first == key) kv.second = value;
  }
  map_[key] = value;
}

bool KeyValues::has(const std::string& key) const { return map_.count(key) > 0; }

std::string KeyValues::get_string(const std::string& key,
                                  const std::string& fallback) const {
  auto it = map_.find(key);
  return it == map_.end() ? fallback : it->second;
}

std::string KeyValues::require_string(const std::string& key) const {
  auto it = map_.find(key);
  if (it == map_.end()) throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad number '" + it->second + "'");
  }
}

int KeyValues::get_int(const std::string& key, int fallback) const {
  auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  try {
    size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad integer '" + it->second + "'");
  }
}

std::uint64_t KeyValues::get_uint64(const std::string& key,
                                    std::uint64_t fallback) const {
  auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad integer '" + it->second + "'");
  }
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "': bad boolean '" + it->second + "'");
}

std::vector<std::string> KeyValues::get_list(const std::string& key) const {
  std::vector<std::string> out;
  auto it = map_.find(key);
  if (it == map_.end()) return out;
  std::stringstream ss(it->second);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::string KeyValues::to_text() const {
  std::string out;
  for (const auto& [k, v] : items_) out += k + " = " + v + "\n";
  return out;
}

KeyValues parse_keyval_text(const std::string& text, const std::string& origin) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    kv.set(key, value);
  }
  return kv;
}

KeyValues parse_keyval_file(const std::string& path) {
  return parse_keyval_text(read_text_file(path), path);
}

}  // namespace magcut
