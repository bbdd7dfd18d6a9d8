// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ecflow/curvature.hpp"
#include "ecflow/families.hpp"
#include "ecflow/flow_engine.hpp"
#include "ecflow/mesh_io.hpp"
#include "ecflow/queries.hpp"
#include "ecflow/reflection.hpp"
#include "ecflow/rigidity.hpp"
#include "ecflow/shapes.hpp"
#include "ecflow/speeds.hpp"
#include "ecflow/sphere_ode.hpp"
#include "report_json.hpp"

namespace ecf::cli {

namespace fs = std::filesystem;

namespace {

class OutputLock {
 public:
  explicit OutputLock(fs::path dir) : path_(std::move(dir) / ".lock") {
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (!f) fail(ErrorCode::IoError, "output directory is locked by another run (" + path_.string() + ")");
    std::fclose(f);
  }
  ~OutputLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  fs::path path_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
}

struct Column {
  std::string name;
  std::string description;
};

class CsvFile {
 public:
  CsvFile(std::string name, std::vector<Column> columns) : name_(std::move(name)), columns_(std::move(columns)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) body_ << (i ? "," : "") << columns_[i].name;
    body_ << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) fail(ErrorCode::InvalidArgument, "CSV row width mismatch in " + name_);
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << "\n";
  }

  void save(const fs::path& dir, json& schema) const {
    write_text(dir / name_, body_.str());
    json cols = json::array();
    for (const Column& c : columns_) cols.push_back({{"name", c.name}, {"description", c.description}});
    schema["files"][name_] = {{"columns", cols}};
  }

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::ostringstream body_;
};

std::string num(double x) { return io::format_real(x); }

class Artifacts {
 public:
  Artifacts(fs::path dir, const RunConfig& config) : dir_(std::move(dir)), config_(config) {
    schema_ = {{"schema_version", kSchemaVersion}, {"number_format", "%.17g"}, {"files", json::object()}};
  }
  void log(const std::string& line) { log_ << line << "\n"; }
  void add(const CsvFile& csv) { csv.save(dir_, schema_); }
  void report(json payload) {
    write_text(dir_ / "report.json", envelope(config_.command, config_.seed(), std::move(payload)).dump(2) + "\n");
  }
  void finish() {
    write_text(dir_ / "schema.json", schema_.dump(2) + "\n");
    write_text(dir_ / "run.log", log_.str());
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  const RunConfig& config_;
  json schema_;
  std::ostringstream log_;
};

SpeedFunction speed_of(const RunConfig& config) {
  return speeds::by_name(config.raw("speed"), config.dim(), config.optional_real("alpha"));
}

FlowConfig flow_config(const RunConfig& config) {
  FlowConfig fc;
  fc.dt_policy = config.raw("dt_policy") == "cfl" ? DtPolicy::Cfl : DtPolicy::Fixed;
  fc.dt = config.real("dt");
  fc.c_cfl = config.real("c_cfl");
  fc.t_end = config.real("t_end");
  fc.remesh = config.flag("remesh");
  fc.band = {config.real("band_min"), config.real("band_max")};
  fc.stop_on_cone_exit = config.flag("stop_on_cone_exit");
  fc.frame_every = config.integer("frame_every");
  fc.tangential_redistribution = config.flag("redistribute");
  return fc;
}

void write_frames(const Trajectory& traj, Artifacts& art) {
  const fs::path dir = art.dir() / "frames";
  fs::create_directories(dir);
  json index = json::array();
  std::size_t next_event = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    json events = json::array();
    while (next_event < traj.events().size() && traj.events()[next_event].t <= traj.frame(k).t) {
      const FlowEvent& e = traj.events()[next_event++];
      events.push_back({{"t", number(e.t)}, {"kind", to_string(e.kind)}, {"message", e.message}});
    }
    char name[64];
    std::snprintf(name, sizeof name, "frame_%05zu%s", k, io::mesh_extension(traj.frame(k).surface.dim()).c_str());
    io::write_mesh(traj.frame(k).surface, dir / name);
    index.push_back({{"index", k}, {"t", number(traj.frame(k).t)}, {"file", name}, {"events", events}});
  }
  write_text(dir / "index.json", index.dump(2) + "\n");
}

int simulate(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const SpeedFunction speed = speed_of(config);
  const Trajectory traj = evolve(build_shape(config), speed, config.real("t0"), flow_config(config));
  CsvFile csv("timeseries.csv", {{"t", "frame time"},
                                 {"vertices", "vertex count"},
                                 {"enclosed_volume", "enclosed area (curves) or volume (surfaces)"},
                                 {"mean_radius", "mean vertex distance from the vertex centroid"},
                                 {"rho_minus", "inradius about the approximate Chebyshev center"},
                                 {"rho_plus", "farthest vertex from the approximate Chebyshev center"},
                                 {"min_curvature", "smallest principal curvature over vertices"},
                                 {"max_curvature", "largest principal curvature over vertices"},
                                 {"mean_edge_length", "mean edge length"}});
  for (const Frame& f : traj.frames()) {
    const Point c = f.surface.vertex_centroid();
    double rmean = 0.0;
    for (const Point& x : f.surface.vertices()) rmean += (x - c).norm();
    rmean /= static_cast<double>(f.surface.size());
    const RadiiReport radii = inner_outer_radii(f.surface);
    double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
    for (const Curvatures& k : compute_curvatures(f.surface).principal) {
      kmin = std::min(kmin, k.min());
      kmax = std::max(kmax, k.max());
    }
    csv.row({num(f.t), std::to_string(f.surface.size()), num(f.surface.enclosed_volume()), num(rmean), num(radii.rho_minus), num(radii.rho_plus),
             num(kmin), num(kmax), num(f.surface.mean_edge_length())});
  }
  art.add(csv);
  if (config.flag("write_frames")) write_frames(traj, art);
  for (const FlowEvent& e : traj.events()) art.log(std::string("event t=") + num(e.t) + " " + to_string(e.kind) + ": " + e.message);

  const ExpansivenessReport exp = check_expansiveness(traj, std::max<std::size_t>(1, traj.size() / 10));
  const DiscreteHypersurface& last = traj.frame(traj.size() - 1).surface;
  art.report({{"speed", speed.name()},
              {"frames", traj.size()},
              {"t_final", number(traj.t1())},
              {"final_vertices", last.size()},
              {"final_enclosed_volume", number(last.enclosed_volume())},
              {"expansiveness", {{"pairs_checked", exp.pairs_checked}, {"violations", exp.violations}}},
              {"events", events_json(traj)}});
  out << "simulate: " << traj.size() << " frames up to t = " << num(traj.t1()) << "\n";
  return kPass;
}

int sphere_ode(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const SpeedFunction speed = speed_of(config);
  const double r0 = config.real("r0");
  const double t0 = config.real("t0");
  const SphereFlow flow = integrate_radius(speed, r0, t0, config.real("t_end"), config.real("dt"));
  CsvFile csv("radius.csv", {{"t", "time"}, {"r", "sphere radius"}});
  for (const RadiusSample& s : flow.samples) csv.row({num(s.t), num(s.r)});
  art.add(csv);
  const double birth = initial_time_estimate(speed, r0, t0);
  art.report({{"speed", speed.name()},
              {"r0", r0},
              {"t0", t0},
              {"final_time", number(flow.final_time())},
              {"final_radius", number(flow.final_radius())},
              {"initial_time_estimate", number(birth)}});
  out << "sphere-ode: r(" << num(flow.final_time()) << ") = " << num(flow.final_radius()) << "\n";
  return kPass;
}

int classify_speed(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const SpeedFunction speed = speed_of(config);
  const AncientnessVerdict verdict = is_ancient(speed);
  SamplingPlan plan;
  plan.seed = config.seed();
  const AdmissibilityReport adm = check_admissibility(speed, plan);
  std::vector<double> probe_values(static_cast<std::size_t>(speed.arity()), 1.0);
  const double scales[] = {0.5, 2.0, 10.0};
  const auto degree = homogeneity_degree(speed, Curvatures(std::span<const double>(probe_values)), scales);
  art.report({{"speed", speed.name()},
              {"dim", speed.arity()},
              {"ancientness", to_json(verdict)},
              {"admissibility", to_json(adm)},
              {"homogeneity_degree", degree ? number(*degree) : json(nullptr)}});
  out << "classify-speed: " << speed.name() << " is " << to_string(verdict.verdict) << " (admissibility "
      << adm.verdict() << ")\n";
  return adm.passed ? kPass : kAuditFail;
}

std::string fmt_point(const Point& p) {
  std::ostringstream os;
  os << "(" << num(p.x()) << ", " << num(p.y()) << ", " << num(p.z()) << ")";
  return os.str();
}

int reflect_audit(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const Trajectory traj = build_trajectory(config);
  const Point V = config.point("plane_direction").normalized();
  CsvFile csv("reflection.csv", {{"c", "plane offset"},
                                 {"t", "frame time"},
                                 {"status", "Strict, NonStrict, Fails or Vacuous"},
                                 {"inclusion_margin", "smallest signed distance of a reflected vertex (inside positive)"},
                                 {"tangency_margin", "smallest angle between V and the tangent space along the plane (radians)"},
                                 {"tested_points", "reflected vertices classified"}});
  json planes = json::array();
  bool all_pass = true;
  for (double c : config.reals("plane_offsets")) {
    const Hyperplane plane(V, c);
    std::size_t strict = 0, vacuous = 0, other = 0;
    json first_failure = nullptr;
    for (const Frame& f : traj.frames()) {
      const ReflectionVerdict v = strict_reflection_check(f.surface, plane);
      csv.row({num(c), num(f.t), to_string(v.status), num(v.inclusion_margin), num(v.tangency_margin), std::to_string(v.tested_points)});
      if (v.status == ReflectionStatus::Strict) {
        ++strict;
      } else if (v.status == ReflectionStatus::Vacuous) {
        ++vacuous;
      } else {
        ++other;
        if (first_failure.is_null()) first_failure = {{"t", number(f.t)}, {"verdict", to_json(v)}};
      }
    }
    const bool pass = other == 0 && strict > 0;
    all_pass = all_pass && pass;
    planes.push_back({{"V", point_json(V)}, {"c", c}, {"strict_frames", strict}, {"vacuous_frames", vacuous},
                      {"other_frames", other}, {"first_non_strict", first_failure}, {"verdict", pass ? "PASS" : "FAIL"}});
    out << (pass ? "PASS" : "FAIL") << " plane V=" << fmt_point(V) << " c=" << num(c) << ": " << strict << " Strict, "
        << other << " not Strict, " << vacuous << " Vacuous of " << traj.size() << " frames\n";
  }
  art.add(csv);
  art.report({{"trajectory", traj.label()}, {"frames", traj.size()}, {"planes", planes}, {"events", events_json(traj)},
              {"overall", all_pass ? "pass" : "fail"}});
  return all_pass ? kPass : kAuditFail;
}

int rigidity_audit_cmd(const RunConfig& config, Artifacts& art, std::ostream& out) {
  const Trajectory traj = build_trajectory(config);
  const SpeedFunction speed = speed_of(config);
  RigidityOptions options;
  options.symmetry_threshold = config.optional_real("symmetry_threshold");
  const int dim = traj.frame(0).surface.dim();
  const auto directions = sample_directions(dim, static_cast<std::size_t>(config.integer("directions")));
  const RigidityAuditReport report =
      rigidity_audit(traj, speed, config.point("y_inf"), directions, config.reals("c_schedule"), options);

  CsvFile tau("tau.csv", {{"Vx", "plane normal x"}, {"Vy", "plane normal y"}, {"Vz", "plane normal z"}, {"c", "offset from y_inf"},
                          {"tau", "first touch time (empty when never touched)"}});
  for (const TauEntry& e : report.tau_table) {
    tau.row({num(e.V.x()), num(e.V.y()), num(e.V.z()), num(e.c), e.tau ? num(*e.tau) : ""});
  }
  CsvFile sym("symmetry.csv", {{"t", "frame time"}, {"spherical", "1 when the radius deviation is below the threshold"},
                               {"deviation", "(max - min) / mean vertex distance from y_inf"},
                               {"max_asymmetry", "worst mirror mismatch over the sampled planes, relative to the mean radius"}});
  for (const FrameSymmetry& f : report.limit_symmetry) {
    sym.row({num(f.t), f.spherical ? "1" : "0", num(f.deviation), num(f.max_asymmetry)});
  }
  art.add(tau);
  art.add(sym);
  for (const PostTouchEntry& e : report.post_touch_verdicts) {
    out << (e.ok ? "PASS" : "FAIL") << " plane V=" << fmt_point(e.V) << " c=" << num(e.c) << " tau=" << num(e.tau)
        << " worst=" << to_string(e.worst) << "\n";
  }
  out << (report.symmetry_ok ? "PASS" : "FAIL") << " symmetry of every frame within " << num(report.symmetry_threshold) << "\n";
  out << (report.pass ? "PASS" : "FAIL") << " rigidity audit: " << report.narrative << "\n";
  art.log(report.narrative);
  art.report({{"trajectory", traj.label()}, {"speed", speed.name()}, {"frames", traj.size()}, {"audit", to_json(report)}});
  return report.pass ? kPass : kAuditFail;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::IoError:
    case ErrorCode::InvalidArgument:
      return kUsage;
    default:
      return kNumerical;
  }
}

DiscreteHypersurface build_shape(const RunConfig& config) {
  const std::string& shape = config.raw("shape");
  const double r = config.real("radius");
  const std::vector<double> axes = config.reals("axes");
  const int n = config.integer("vertices");
  const int level = config.integer("level");
  if (shape == "circle") return shapes::circle(r, n);
  if (shape == "ellipse") return shapes::ellipse(axes[0], axes[1], n);
  if (shape == "square") return shapes::square(2.0 * r, std::max(1, n / 4));
  if (shape == "icosphere") return shapes::icosphere(r, level);
  if (shape == "ellipsoid") return shapes::ellipsoid(axes[0], axes[1], axes[2], level);
  if (shape == "noisy_sphere") return shapes::noisy_sphere(r, level, config.real("noise"), config.seed());
  return io::read_mesh(config.raw("mesh"));
}

Trajectory build_trajectory(const RunConfig& config) {
  const std::string& family = config.raw("family");
  if (config.command == "reflect-audit" || family == "evolve") {
    return evolve(build_shape(config), speed_of(config), config.real("t0"), flow_config(config));
  }
  families::Sampling s;
  s.t0 = config.real("family_t0");
  s.t1 = config.real("family_t1");
  s.frame_dt = config.real("frame_dt");
  s.resolution = config.dim() == 1 ? config.integer("vertices") : config.integer("level");
  if (family == "sphere") {
    // r0 at the end of the span, growing like the round solution of a
    // degree-one speed
    const SpeedFunction speed = speed_of(config);
    const double r0 = config.real("r0");
    const double rate = 1.0 / (r0 * psi(speed, r0));
    const double t1 = s.t1;
    return families::sphere_family(config.dim(), [=](double t) { return r0 * std::exp(rate * (t - t1)); }, s);
  }
  if (family == "exp_ellipse") return families::exponential_ellipse(s);
  if (family == "scaled_ellipse") {
    const std::vector<double> axes = config.reals("axes");
    return families::scaled_ellipse(axes[0], axes[1], s);
  }
  return families::fake_ancient_circles(s);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);
    OutputLock lock(dir);
    write_text(dir / "resolved.cfg", config.resolved_text());
    Artifacts art(dir, config);
    art.log("command " + config.command + ", seed " + std::to_string(config.seed()));
    int code = kPass;
    try {
      if (config.command == "simulate") code = simulate(config, art, out);
      if (config.command == "sphere-ode") code = sphere_ode(config, art, out);
      if (config.command == "classify-speed") code = classify_speed(config, art, out);
      if (config.command == "reflect-audit") code = reflect_audit(config, art, out);
      if (config.command == "rigidity-audit") code = rigidity_audit_cmd(config, art, out);
    } catch (const Error& e) {
      code = exit_code_for(e.code());
      art.log(std::string("error: ") + e.what());
      art.report({{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}, {"exit_code", code}});
      art.finish();
      err << "ecflow " << config.command << ": " << e.what() << "\n";
      return code;
    }
    art.log("exit code " + std::to_string(code));
    art.finish();
    return code;
  } catch (const Error& e) {
    err << "ecflow: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "ecflow: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace ecf::cli
