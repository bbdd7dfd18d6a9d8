// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ecflow/errors.hpp"
#include "ecflow/speeds.hpp"

namespace ecf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check(bool ok, const std::string& key, const std::string& rule) {
  if (!ok) fail(ErrorCode::ValidationError, "config field '" + key + "': " + rule);
}

const std::set<std::string> kCurveShapes = {"circle", "ellipse", "square"};
const std::set<std::string> kSurfaceShapes = {"icosphere", "ellipsoid", "noisy_sphere"};
const std::set<std::string> kFamilies = {"evolve", "sphere", "exp_ellipse", "scaled_ellipse", "fake_ancient"};

}  // namespace

std::map<std::string, std::string> RunConfig::defaults() {
  return {
      {"alpha", ""},
      {"axes", "2,1"},
      {"band_max", "0.05"},
      {"band_min", "0.005"},
      {"c_cfl", "0.2"},
      {"c_schedule", "0.4,0.2,0.1,0.05"},
      {"dim", "1"},
      {"directions", "16"},
      {"dt", "0.001"},
      {"dt_policy", "fixed"},
      {"family", "evolve"},
      {"family_t0", "-6"},
      {"family_t1", "0"},
      {"frame_dt", "0.02"},
      {"frame_every", "0"},
      {"level", "3"},
      {"mesh", ""},
      {"noise", "0.01"},
      {"output_dir", "ecflow_out"},
      {"plane_direction", "1,0,0"},
      {"plane_offsets", "0.2"},
      {"r0", "1"},
      {"radius", "1"},
      {"redistribute", "false"},
      {"remesh", "false"},
      {"seed", "24301"},
      {"shape", "circle"},
      {"speed", "k"},
      {"stop_on_cone_exit", "true"},
      {"symmetry_threshold", ""},
      {"t0", "0"},
      {"t_end", "1"},
      {"vertices", "256"},
      {"write_frames", "false"},
      {"y_inf", "0,0,0"},
  };
}

std::vector<std::string> RunConfig::known_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : defaults()) keys.push_back(k);
  return keys;
}

std::string RunConfig::default_value(const std::string& key) {
  const auto d = defaults();
  const auto it = d.find(key);
  if (it == d.end()) fail(ErrorCode::ParseError, "unknown config key '" + key + "'");
  return it->second;
}

void RunConfig::set(const std::string& key, const std::string& value, const std::string& context) {
  auto it = values_.find(key);
  if (it == values_.end()) {
    fail(ErrorCode::ParseError, (context.empty() ? "" : context + ": ") + "unknown config key '" + key + "'");
  }
  it->second = value;
}

const std::string& RunConfig::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) fail(ErrorCode::ParseError, "unknown config key '" + key + "'");
  return it->second;
}

double RunConfig::real(const std::string& key) const {
  const std::string& s = raw(key);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) fail(ErrorCode::ValidationError, "config field '" + key + "': expected a number, got '" + s + "'");
  return value;
}

int RunConfig::integer(const std::string& key) const {
  const double v = real(key);
  check(std::floor(v) == v && std::abs(v) < 1e9, key, "expected an integer");
  return static_cast<int>(v);
}

std::uint64_t RunConfig::seed() const {
  const std::string& s = raw("seed");
  check(!s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }), "seed",
        "expected a non-negative integer");
  return std::stoull(s);
}

bool RunConfig::flag(const std::string& key) const {
  const std::string& s = raw(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(ErrorCode::ValidationError, "config field '" + key + "': expected true or false, got '" + s + "'");
}

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(raw(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    check(used != 0 && used == item.size(), key, "expected a comma-separated list of numbers");
    out.push_back(v);
  }
  return out;
}

Point RunConfig::point(const std::string& key) const {
  const std::vector<double> v = reals(key);
  check(v.size() == 2 || v.size() == 3, key, "expected 2 or 3 coordinates");
  return {v[0], v[1], v.size() == 3 ? v[2] : 0.0};
}

std::optional<double> RunConfig::optional_real(const std::string& key) const {
  if (raw(key).empty()) return std::nullopt;
  return real(key);
}

int RunConfig::dim() const {
  if (command == "sphere-ode" || command == "classify-speed") return integer("dim");
  if (command == "rigidity-audit" && raw("family") != "evolve") return raw("family") == "sphere" ? integer("dim") : 1;
  const std::string& shape = raw("shape");
  if (kCurveShapes.count(shape)) return 1;
  if (kSurfaceShapes.count(shape)) return 2;
  return std::filesystem::path(raw("mesh")).extension() == ".obj" ? 2 : 1;
}

void RunConfig::validate() const {
  check(std::find(std::begin(kCommands), std::end(kCommands), command) != std::end(kCommands), "command",
        "unknown command '" + command + "'");
  check(!raw("output_dir").empty(), "output_dir", "must not be empty");
  (void)seed();
  const int d = integer("dim");
  check(d == 1 || d == 2, "dim", "must be 1 or 2");

  const std::string& shape = raw("shape");
  check(kCurveShapes.count(shape) || kSurfaceShapes.count(shape) || shape == "mesh", "shape", "unknown shape '" + shape + "'");
  if (shape == "mesh") {
    check(is_set("mesh"), "mesh", "a mesh path is required when shape = mesh");
    check(std::filesystem::exists(raw("mesh")), "mesh", "file '" + raw("mesh") + "' does not exist");
  }
  check(real("radius") > 0.0, "radius", "must be positive");
  const std::vector<double> axes = reals("axes");
  check(axes.size() == 2 || axes.size() == 3, "axes", "expected 2 or 3 semi-axes");
  for (double a : axes) check(a > 0.0, "axes", "semi-axes must be positive");
  if (shape == "ellipsoid") check(axes.size() == 3, "axes", "an ellipsoid needs 3 semi-axes");
  check(integer("vertices") >= 3, "vertices", "must be at least 3");
  check(integer("level") >= 0 && integer("level") <= 6, "level", "must lie in [0, 6]");
  check(real("noise") >= 0.0 && real("noise") < 0.5, "noise", "must lie in [0, 0.5)");

  (void)speeds::by_name(raw("speed"), dim(), optional_real("alpha"));

  check(real("dt") > 0.0, "dt", "must be positive");
  check(std::isfinite(real("t0")), "t0", "must be finite");
  check(real("t_end") > real("t0"), "t_end", "must exceed t0");
  check(raw("dt_policy") == "fixed" || raw("dt_policy") == "cfl", "dt_policy", "must be fixed or cfl");
  check(real("c_cfl") > 0.0 && real("c_cfl") <= 1.0, "c_cfl", "must lie in (0, 1]");
  check(integer("frame_every") >= 0, "frame_every", "must be >= 0");
  (void)flag("remesh");
  (void)flag("redistribute");
  (void)flag("stop_on_cone_exit");
  (void)flag("write_frames");
  if (flag("remesh")) {
    check(real("band_min") >= 0.0, "band_min", "must be >= 0");
    check(real("band_max") >= 2.0 * real("band_min") && real("band_max") > 0.0, "band_max", "must be at least 2 band_min");
  }
  check(real("r0") > 0.0, "r0", "must be positive");

  check(point("plane_direction").norm() > 0.0, "plane_direction", "must be nonzero");
  check(!reals("plane_offsets").empty(), "plane_offsets", "must not be empty");
  check(integer("directions") >= 1, "directions", "must be at least 1");
  const std::vector<double> cs = reals("c_schedule");
  check(!cs.empty(), "c_schedule", "must not be empty");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    check(cs[i] > 0.0, "c_schedule", "offsets must be positive");
    check(i == 0 || cs[i] < cs[i - 1], "c_schedule", "offsets must decrease strictly");
  }
  (void)point("y_inf");
  if (is_set("symmetry_threshold")) check(real("symmetry_threshold") > 0.0, "symmetry_threshold", "must be positive");
  check(kFamilies.count(raw("family")) == 1, "family", "unknown family '" + raw("family") + "'");
  check(real("family_t1") > real("family_t0"), "family_t1", "must exceed family_t0");
  check(real("frame_dt") > 0.0, "frame_dt", "must be positive");
}

std::string RunConfig::resolved_text() const {
  std::ostringstream os;
  os << "# resolved configuration\n";
  os << "command = " << command << "\n";
  for (const auto& [k, v] : values_) os << k << " = " << v << "\n";
  return os.str();
}

void load_config_text(RunConfig& config, const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorCode::ParseError, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorCode::ParseError, where + ": missing key");
    if (key == "command") {
      config.command = value;
      continue;
    }
    config.set(key, value, where);
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  load_config_text(config, buffer.str(), path.string());
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) fail(ErrorCode::ParseError, "override '" + assignment + "' is not key=value");
  config.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "--set " + assignment);
}

}  // namespace ecf::cli
