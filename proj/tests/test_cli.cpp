// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <sys/wait.h>

#include "config.hpp"
#include "run.hpp"

using namespace ecf;
using namespace ecf::cli;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ecf::Error");
  return ErrorCode::InvalidArgument;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ecflow_test_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig make(const std::string& command, const fs::path& out) {
  RunConfig c;
  c.command = command;
  c.set("output_dir", out.string());
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  RunConfig c;
  load_config_text(c, "# a comment\ncommand = simulate\nspeed = H\n\nshape = icosphere\n", "inline");
  CHECK(c.command == "simulate");
  CHECK(c.raw("speed") == "H");
  CHECK(c.dim() == 2);

  try {
    load_config_text(c, "speed = k\nbogus = 1\n", "bad.cfg");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
  }
  CHECK(code_of([&] { load_config_text(c, "speed k\n", "x"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { apply_override(c, "nothing"); }) == ErrorCode::ParseError);
  apply_override(c, "dt=0.01");
  CHECK(c.real("dt") == 0.01);
  CHECK(c.reals("c_schedule") == std::vector<double>{0.4, 0.2, 0.1, 0.05});
  CHECK(c.point("plane_direction") == Point(1, 0, 0));
}

TEST_CASE("validation") {
  RunConfig c = make("classify-speed", scratch("validation"));
  c.set("speed", "H^alpha");
  c.set("alpha", "-1");
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::ValidationError);
  RunConfig m = make("simulate", scratch("validation"));
  m.set("shape", "mesh");
  m.set("mesh", "/nonexistent/shape.poly");
  CHECK(code_of([&] { m.validate(); }) == ErrorCode::ValidationError);
  std::ostringstream out, err;
  CHECK(run(m, out, err) == kUsage);
  CHECK(err.str().find("mesh") != std::string::npos);
  CHECK(exit_code_for(ErrorCode::ConeExit) == kNumerical);
  CHECK(exit_code_for(ErrorCode::ParseError) == kUsage);
}

TEST_CASE("sphere-ode") {
  const fs::path dir = scratch("sphere_ode");
  RunConfig c = make("sphere-ode", dir);
  std::ostringstream out, err;
  CHECK(run(c, out, err) == kPass);
  CHECK(out.str().find("2.71828") != std::string::npos);
  for (const char* f : {"resolved.cfg", "run.log", "report.json", "schema.json", "radius.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK_FALSE(fs::exists(dir / ".lock"));

  SUBCASE("reruns are byte identical") {
    const std::string first = slurp(dir / "radius.csv");
    const std::string report = slurp(dir / "report.json");
    std::ostringstream o2, e2;
    CHECK(run(c, o2, e2) == kPass);
    CHECK(slurp(dir / "radius.csv") == first);
    CHECK(slurp(dir / "report.json") == report);
  }
  SUBCASE("resolved.cfg round trips") {
    RunConfig back;
    load_config_file(back, dir / "resolved.cfg");
    CHECK(back.command == c.command);
    CHECK(back.resolved_text() == c.resolved_text());
  }
  SUBCASE("a held lock is refused") {
    std::ofstream(dir / ".lock") << "";
    std::ostringstream o2, e2;
    CHECK(run(c, o2, e2) == kUsage);
    fs::remove(dir / ".lock");
  }
}

TEST_CASE("classify-speed") {
  RunConfig c = make("classify-speed", scratch("classify"));
  c.set("speed", "H^alpha");
  c.set("alpha", "0.5");
  c.set("dim", "2");
  std::ostringstream out, err;
  CHECK(run(c, out, err) == kPass);
  CHECK(out.str().find("NonAncient") != std::string::npos);
}

TEST_CASE("rigidity-audit on the exponential ellipse") {
  const fs::path dir = scratch("rigidity");
  RunConfig c = make("rigidity-audit", dir);
  c.set("family", "exp_ellipse");
  c.set("frame_dt", "0.05");
  c.set("vertices", "128");
  c.set("directions", "4");
  std::ostringstream out, err;
  CHECK(run(c, out, err) == kAuditFail);
  CHECK(out.str().find("FAIL rigidity audit") != std::string::npos);
  CHECK(out.str().find("towards") != std::string::npos);
  CHECK(fs::exists(dir / "tau.csv"));
  CHECK(fs::exists(dir / "symmetry.csv"));
}

TEST_CASE("binary") {
  const fs::path dir = scratch("binary");
  const std::string base = std::string(ECFLOW_BINARY) + " ";
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(base + "sphere-ode -o " + dir.string()) == 0);
  CHECK(status(base + "sphere-ode -o " + dir.string() + " -s nope=1") == 1);
  CHECK(status(base + "frobnicate") == 1);
  const fs::path cfg = dir / "other.cfg";
  std::ofstream(cfg) << "command = simulate\n";
  CHECK(status(base + "sphere-ode -c " + cfg.string() + " -o " + dir.string()) == 1);
}
