#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace magcut {

/// Flat "key = value" configuration with '#' comments and dotted section
/// keys (solver.mu, refine.max_iters). Later assignments override earlier
/// ones; insertion order is preserved for round-tripping.
class KeyValues {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated list value.
  std::vector<std::string> get_list(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& items() const {
    return items_;
  }
  bool empty() const { return items_.empty(); }

  std::string to_text() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
  std::map<std::string, std::string> map_;
};

/// Parses config text; errors carry the offending line number and key.
KeyValues parse_keyval_text(const std::string& text, const std::string& origin = "<config>");
KeyValues parse_keyval_file(const std::string& path);

}  // namespace magcut
