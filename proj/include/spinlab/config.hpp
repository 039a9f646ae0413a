#pragma once

#include "spinlab/bodies.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinlab {

/// Malformed or out-of-range experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kCommands{"spin", "cosine", "invert", "certify", "scan", "fit"};

struct ExperimentConfig {
  std::string command;
  std::optional<Body> body;
  int band_limit = 64;
  int n_theta = kDefaultThetaNodes;
  int n_phi = kDefaultPhiNodes;
  std::vector<double> r_ladder{0.90, 0.95, 0.99};
  int directions = 100;
  bool hemisphere = true;
  Vec3 axis = Vec3::UnitZ();
  double eps_pos = 1e-6;
  double eps_neg = 1e-3;
  double guard_threshold = 1e-14;
  int t_nodes = 64;
  int t_grid = 2001;
  int panel_points = 16;
  int candidates = 200;
  int max_iter = 5000;
  double tol = 1e-10;
  std::string out = "spinlab";
  std::uint64_t seed = 1;
};

/// Parses a JSON config. Unknown fields, wrong types and cap violations throw
/// ConfigError naming the field (or line and column for syntax errors).
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

}  // namespace spinlab
