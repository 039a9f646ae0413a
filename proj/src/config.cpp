#include "spinlab/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace spinlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError("config field '" + field + "': " + msg);
}

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(where.empty() ? key : where + "." + key, "unknown field");
  }
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

long long get_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<long long>();
}

int get_int(const json& v, const std::string& field, long long lo, long long hi) {
  const long long x = get_integer(v, field);
  if (x < lo || x > hi) fail(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

std::vector<double> get_numbers(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Vec3 get_vec3(const json& v, const std::string& field) {
  const std::vector<double> x = get_numbers(v, field);
  if (x.size() != 3) fail(field, "expected 3 components");
  return {x[0], x[1], x[2]};
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where + "." + key, "missing");
  return obj.at(key);
}

Body parse_body(const json& j) {
  if (!j.is_object()) fail("body", "expected an object");
  if (!j.contains("type") || !j.at("type").is_string()) fail("body.type", "expected a string");
  const std::string type = j.at("type").get<std::string>();
  std::string label = type;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) fail("body.label", "expected a string");
    label = j.at("label").get<std::string>();
  }
  try {
    if (type == "ball") {
      require_keys(j, "body", {"type", "label", "radius"});
      return Body::ball(get_number(need(j, "radius", "body"), "body.radius"), label);
    }
    if (type == "cube") {
      require_keys(j, "body", {"type", "label", "half_width"});
      return Body::cube(get_number(need(j, "half_width", "body"), "body.half_width"), label);
    }
    if (type == "octahedron") {
      require_keys(j, "body", {"type", "label", "scale"});
      return Body::octahedron(get_number(need(j, "scale", "body"), "body.scale"), label);
    }
    if (type == "ellipsoid") {
      require_keys(j, "body", {"type", "label", "matrix"});
      const json& rows = need(j, "matrix", "body");
      if (!rows.is_array() || rows.size() != 3) fail("body.matrix", "expected a 3x3 array");
      Eigen::Matrix3d M;
      for (int r = 0; r < 3; ++r) M.row(r) = get_vec3(rows[static_cast<std::size_t>(r)], "body.matrix").transpose();
      return Body::ellipsoid(M, label);
    }
    if (type == "zonotope") {
      require_keys(j, "body", {"type", "label", "generators", "weights"});
      const json& gens = need(j, "generators", "body");
      if (!gens.is_array()) fail("body.generators", "expected an array of 3-vectors");
      std::vector<Vec3> g;
      for (std::size_t i = 0; i < gens.size(); ++i) g.push_back(get_vec3(gens[i], "body.generators"));
      return Body::zonotope(std::move(g), get_numbers(need(j, "weights", "body"), "body.weights"), label);
    }
    if (type == "bandlimited") {
      require_keys(j, "body", {"type", "label", "degree", "coeffs"});
      const int L = get_int(need(j, "degree", "body"), "body.degree", 0, kMaxBandLimit);
      HarmonicCoeffs c(L);
      const json& entries = need(j, "coeffs", "body");
      if (!entries.is_array()) fail("body.coeffs", "expected an array of [k, m, value]");
      for (const json& e : entries) {
        if (!e.is_array() || e.size() != 3) fail("body.coeffs", "expected [k, m, value] entries");
        const int k = get_int(e[0], "body.coeffs.k", 0, L);
        const int m = get_int(e[1], "body.coeffs.m", -k, k);
        c(k, m) = get_number(e[2], "body.coeffs.value");
      }
      return Body::bandlimited(std::move(c), label);
    }
    if (type == "sampled") {
      require_keys(j, "body", {"type", "label", "n_theta", "n_phi", "values"});
      const int nt = get_int(need(j, "n_theta", "body"), "body.n_theta", 1, 1024);
      const int np = get_int(need(j, "n_phi", "body"), "body.n_phi", 2, 2048);
      std::vector<double> values = get_numbers(need(j, "values", "body"), "body.values");
      SphereGrid grid = product_sphere_grid(nt, np);
      if (values.size() != grid.size()) {
        fail("body.values", "expected " + std::to_string(grid.size()) + " values (n_theta * n_phi)");
      }
      return Body::sampled(std::move(grid), std::move(values), label);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail("body", e.what());
  }
  fail("body.type", "unknown body type '" + type + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(j, "",
               {"command", "body", "band_limit", "n_theta", "n_phi", "r_ladder", "directions", "hemisphere", "axis",
                "eps_pos", "eps_neg", "guard_threshold", "t_nodes", "t_grid", "panel_points", "candidates",
                "max_iter", "tol", "out", "seed"});

  ExperimentConfig c;
  if (j.contains("command")) {
    if (!j["command"].is_string()) fail("command", "expected a string");
    c.command = j["command"].get<std::string>();
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
      fail("command", "unknown command '" + c.command + "'");
    }
  }
  if (j.contains("band_limit")) c.band_limit = get_int(j["band_limit"], "band_limit", 0, kMaxBandLimit);
  c.n_theta = std::max(c.n_theta, c.band_limit + 1);
  c.n_phi = std::max(c.n_phi, 2 * c.n_theta);
  if (j.contains("n_theta")) c.n_theta = get_int(j["n_theta"], "n_theta", 1, 2048);
  if (j.contains("n_phi")) c.n_phi = get_int(j["n_phi"], "n_phi", 2, 4096);
  if (c.n_theta < c.band_limit + 1) fail("n_theta", "must be >= band_limit + 1");
  if (c.n_phi < 2 * c.band_limit + 1) fail("n_phi", "must be >= 2 * band_limit + 1");
  if (j.contains("r_ladder")) {
    c.r_ladder = get_numbers(j["r_ladder"], "r_ladder");
    if (c.r_ladder.empty()) fail("r_ladder", "must not be empty");
    for (double r : c.r_ladder) {
      if (!(r > 0.0 && r < 1.0)) fail("r_ladder", "entries must lie in (0, 1)");
    }
  }
  if (j.contains("directions")) c.directions = get_int(j["directions"], "directions", 1, 100000);
  if (j.contains("hemisphere")) {
    if (!j["hemisphere"].is_boolean()) fail("hemisphere", "expected true or false");
    c.hemisphere = j["hemisphere"].get<bool>();
  }
  if (j.contains("axis")) {
    c.axis = get_vec3(j["axis"], "axis");
    if (!(c.axis.norm() > 0.0)) fail("axis", "must be nonzero");
    c.axis.normalize();
  }
  if (j.contains("eps_pos")) c.eps_pos = get_number(j["eps_pos"], "eps_pos");
  if (j.contains("eps_neg")) c.eps_neg = get_number(j["eps_neg"], "eps_neg");
  if (!(c.eps_pos > 0.0)) fail("eps_pos", "must be > 0");
  if (!(c.eps_neg > c.eps_pos)) fail("eps_neg", "must exceed eps_pos");
  if (j.contains("guard_threshold")) {
    c.guard_threshold = get_number(j["guard_threshold"], "guard_threshold");
    if (!(c.guard_threshold > 0.0)) fail("guard_threshold", "must be > 0");
  }
  if (j.contains("t_nodes")) c.t_nodes = get_int(j["t_nodes"], "t_nodes", 1, 4096);
  if (j.contains("t_grid")) c.t_grid = get_int(j["t_grid"], "t_grid", 3, 1000001);
  if (j.contains("panel_points")) c.panel_points = get_int(j["panel_points"], "panel_points", 1, 1024);
  if (j.contains("candidates")) c.candidates = get_int(j["candidates"], "candidates", 1, 20000);
  if (j.contains("max_iter")) c.max_iter = get_int(j["max_iter"], "max_iter", 1, 10000000);
  if (j.contains("tol")) {
    c.tol = get_number(j["tol"], "tol");
    if (!(c.tol > 0.0)) fail("tol", "must be > 0");
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) fail("out", "expected a string");
    c.out = j["out"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (!j.contains("body")) fail("body", "missing");
  c.body = parse_body(j["body"]);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace spinlab
