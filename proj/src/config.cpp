#include "wormhole/config.hpp"

#include <fstream>
#include <stdexcept>

namespace wormhole {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_file(const std::string& path) {
  Config c;
  c.load_file(path);
  return c;
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty key");
    }
    items_[key] = value;
  }
}

void Config::set(const std::string& key, const std::string& value) {
  items_[key] = value;
}

bool Config::has(const std::string& key) const { return items_.count(key) > 0; }

std::string Config::get_string(const std::string& key,
                               const std::string& dflt) const {
  const auto it = items_.find(key);
  return it == items_.end() ? dflt : it->second;
}

double Config::get_double(const std::string& key, double dflt) const {
  const auto it = items_.find(key);
  if (it == items_.end()) return dflt;
  size_t pos = 0;
  const double v = std::stod(it->second, &pos);
  if (pos != it->second.size())
    throw std::invalid_argument("config key '" + key + "': bad number '" +
                                it->second + "'");
  return v;
}

int Config::get_int(const std::string& key, int dflt) const {
  const auto it = items_.find(key);
  if (it == items_.end()) return dflt;
  size_t pos = 0;
  const int v = std::stoi(it->second, &pos);
  if (pos != it->second.size())
    throw std::invalid_argument("config key '" + key + "': bad integer '" +
                                it->second + "'");
  return v;
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  const auto it = items_.find(key);
  if (it == items_.end()) return dflt;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config key '" + key + "': bad boolean '" + v +
                              "'");
}

std::string Config::require(const std::string& key) const {
  const auto it = items_.find(key);
  if (it == items_.end())
    throw std::invalid_argument("missing required config key: " + key);
  return it->second;
}

}  // namespace wormhole
