#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tmsns::cli {

// Default tolerances; a key=value file named by TMSNS_CONFIG overrides them,
// command-line flags override both.
struct Config {
  double eps_tail = 1e-12;
  double identity_tol = 1e-10;
  double nonneg_tol = 1e-12;
  double col_sum_tol = 1e-10;
  double oracle_tol = 1e-9;
  double oracle_deficit = 1e-10;
  std::size_t max_terms = 100000;
};

inline void apply_config_line(Config& cfg, const std::string& key, const std::string& value) {
  const double num = std::stod(value);
  if (key == "eps_tail") {
    cfg.eps_tail = num;
  } else if (key == "identity_tol") {
    cfg.identity_tol = num;
  } else if (key == "nonneg_tol") {
    cfg.nonneg_tol = num;
  } else if (key == "col_sum_tol") {
    cfg.col_sum_tol = num;
  } else if (key == "oracle_tol") {
    cfg.oracle_tol = num;
  } else if (key == "oracle_deficit") {
    cfg.oracle_deficit = num;
  } else if (key == "max_terms") {
    cfg.max_terms = static_cast<std::size_t>(num);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

inline Config load_config() {
  Config cfg;
  const char* path = std::getenv("TMSNS_CONFIG");
  if (path == nullptr || *path == '\0') return cfg;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string("config: cannot open ") + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, value;
    std::istringstream ss(line);
    if (!std::getline(ss, key, '=')) continue;
    std::getline(ss, value);
    auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(value);
    if (key.empty()) continue;
    apply_config_line(cfg, key, value);
  }
  return cfg;
}

}  // namespace tmsns::cli
