#pragma once

#include <map>
#include <string>

namespace wormhole {

/// Flat key=value configuration. '#' starts a comment, blank lines are
/// ignored, later assignments win (so CLI flags applied after a file load
/// override it).
class Config {
 public:
  static Config from_file(const std::string& path);
  void load_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  /// Throwing variant for required keys.
  std::string require(const std::string& key) const;

  const std::map<std::string, std::string>& items() const { return items_; }

 private:
  std::map<std::string, std::string> items_;
};

}  // namespace wormhole
