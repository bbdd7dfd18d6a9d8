// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "ecflow/curvature.hpp"
#include "ecflow/families.hpp"
#include "ecflow/flow_engine.hpp"
#include "ecflow/queries.hpp"
#include "ecflow/reflection.hpp"
#include "ecflow/rigidity.hpp"
#include "ecflow/shapes.hpp"
#include "ecflow/sphere_ode.hpp"

using namespace ecf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct Spread {
  double mean = 0.0;
  double spread = 0.0;
};

Spread radial(const DiscreteHypersurface& m) {
  double lo = INFINITY, hi = 0.0, sum = 0.0;
  for (const Point& x : m.vertices()) {
    const double r = x.norm();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    sum += r;
  }
  return {sum / static_cast<double>(m.size()), hi - lo};
}

std::string str(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

FlowConfig unit_run(double t_end) {
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = t_end;
  return cfg;
}

}  // namespace

int main() {
  criterion(1, "circle under k", [] {
    const auto t = std::chrono::steady_clock::now();
    const Trajectory traj = evolve(shapes::circle(1.0, 256), speeds::mean(1), 0.0, unit_run(1.0));
    const double secs = seconds_since(t);
    const Spread s = radial(traj.frames().back().surface);
    const double rel = std::abs(s.mean - std::exp(1.0)) / std::exp(1.0);
    return Outcome{rel <= 1e-2 && s.spread < 1e-3 && secs < 10.0,
                   "mean radius " + str(s.mean) + ", rel err " + str(rel) + ", spread " + str(s.spread) + ", " +
                       str(secs) + " s"};
  });

  criterion(2, "icosphere under H", [] {
    const auto t = std::chrono::steady_clock::now();
    const auto m0 = shapes::icosphere(1.0, 4);
    const Trajectory traj = evolve(m0, speeds::mean(2), 0.0, unit_run(0.5));
    const double secs = seconds_since(t);
    const Spread s = radial(traj.frames().back().surface);
    const double rel = std::abs(s.mean - std::exp(0.25)) / std::exp(0.25);
    return Outcome{m0.size() == 2562 && rel <= 0.02 && secs < 60.0,
                   "mean radius " + str(s.mean) + " vs " + str(std::exp(0.25)) + ", rel err " + str(rel) + ", " +
                       str(secs) + " s"};
  });

  criterion(3, "ancientness", [] {
    const bool a05 = is_ancient(speeds::mean_power(2, 0.5)).verdict == Ancientness::NonAncient;
    const bool a1 = is_ancient(speeds::mean_power(2, 1.0)).verdict == Ancientness::Ancient;
    const bool a2 = is_ancient(speeds::mean_power(2, 2.0)).verdict == Ancientness::Ancient;
    const double T0 = initial_time_estimate(speeds::mean_power(1, 0.5), 1.0, 0.0);
    return Outcome{a05 && a1 && a2 && std::abs(T0 + 2.0) <= 1e-3,
                   std::string("alpha 0.5/1/2 -> ") + (a05 ? "NonAncient" : "?") + "/" + (a1 ? "Ancient" : "?") + "/" +
                       (a2 ? "Ancient" : "?") + ", T0 = " + str(T0)};
  });

  criterion(4, "reflection preserved on the ellipse", [] {
    const Trajectory traj = evolve(shapes::ellipse(2.0, 1.0, 256), speeds::mean(1), 0.0, unit_run(1.0));
    const Hyperplane plane(Point(1, 0, 0), 0.2);
    std::size_t strict = 0;
    for (const Frame& f : traj.frames()) {
      if (strict_reflection_check(f.surface, plane).status == ReflectionStatus::Strict) ++strict;
    }
    return Outcome{strict == traj.size() && traj.size() >= 100,
                   std::to_string(strict) + " of " + std::to_string(traj.size()) + " frames Strict"};
  });

  criterion(5, "comparison principle", [] {
    const Trajectory outer = evolve(shapes::ellipse(2.0, 1.0, 256), speeds::mean(1), 0.0, unit_run(1.0));
    const Trajectory inner = evolve(shapes::circle(0.5, 128), speeds::mean(1), 0.0, unit_run(1.0));
    std::size_t violations = 0;
    std::size_t shared = std::min(outer.size(), inner.size());
    for (std::size_t k = 0; k < shared; ++k) {
      for (const Point& x : inner.frame(k).surface.vertices()) {
        if (contains_point(outer.frame(k).surface, x) != Containment::Inside) ++violations;
      }
    }
    return Outcome{violations == 0 && shared >= 100,
                   std::to_string(violations) + " violations over " + std::to_string(shared) + " shared frames"};
  });

  criterion(6, "roundness improves", [] {
    const Trajectory traj = evolve(shapes::ellipse(2.0, 1.0, 256), speeds::mean(1), 0.0, unit_run(1.0));
    double ratio[3];
    int i = 0;
    for (double t : {0.0, 0.5, 1.0}) {
      const RadiiReport r = inner_outer_radii(traj.at(t), Point::Zero());
      ratio[i++] = r.rho_plus / r.rho_minus;
    }
    const bool ok = ratio[0] - ratio[1] > 1e-3 && ratio[1] - ratio[2] > 1e-3;
    return Outcome{ok, "rho+/rho- = " + str(ratio[0]) + ", " + str(ratio[1]) + ", " + str(ratio[2])};
  });

  criterion(7, "rigidity audit on round circles", [] {
    const auto traj = families::sphere_family(1, [](double t) { return std::exp(t); }, families::Sampling{});
    const RigidityAuditReport r =
        rigidity_audit(traj, speeds::mean(1), Point::Zero(), sample_directions(1, 16), {0.4, 0.2, 0.1, 0.05});
    double tau_err = 0.0;
    bool all_tau = true;
    for (const TauEntry& e : r.tau_table) {
      if (!e.tau) {
        all_tau = false;
        continue;
      }
      tau_err = std::max(tau_err, std::abs(*e.tau - std::log(e.c)));
    }
    const double dev = r.limit_symmetry.back().deviation;
    return Outcome{r.pass && all_tau && tau_err <= 1e-3 && dev < 1e-6,
                   std::string(r.pass ? "audit passes" : "audit fails") + ", max |tau - ln c| " + str(tau_err) +
                       ", final deviation " + str(dev)};
  });

  criterion(8, "rigidity audit on the exponential ellipse", [] {
    const auto traj = families::exponential_ellipse(families::Sampling{});
    const bool origin = comes_out_of_point(traj, Point::Zero(), {0.4, 0.2, 0.1, 0.05}).pass;
    double residual = 0.0;
    for (const ResidualRow& row : flow_residual(traj, speeds::mean(1))) residual = std::max(residual, row.max);
    // the family is round only at t = 0
    const SymmetryCertificate cert =
        symmetry_certificate(traj.at(-1.0), Point::Zero(), sample_directions(1, 16), 0.25);
    const std::string dir = (std::filesystem::temp_directory_path() / "ecflow_acceptance_c8").string();
    std::filesystem::remove_all(dir);
    const std::string cmd = std::string(ECFLOW_BINARY) + " rigidity-audit -s family=exp_ellipse -o " + dir +
                            " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    const bool ok = origin && residual > 0.1 && !cert.spherical && cert.witness_direction.norm() > 0.5 && code == 2;
    return Outcome{ok, std::string("origin ") + (origin ? "ok" : "missing") + ", max residual " + str(residual) +
                           ", witness (" + str(cert.witness_direction.x()) + ", " + str(cert.witness_direction.y()) +
                           "), CLI exit " + std::to_string(code)};
  });

  criterion(9, "invariants", [] {
    std::ostringstream notes;
    bool ok = true;
    // involution
    std::mt19937_64 rng(24301);
    std::normal_distribution<double> g;
    double inv = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Hyperplane p = Hyperplane::from_direction(Point(g(rng), g(rng), g(rng)), g(rng));
      const Point x(g(rng), g(rng), g(rng));
      inv = std::max(inv, (p.reflect(p.reflect(x)) - x).norm());
    }
    ok = ok && inv < 1e-12;
    notes << "involution " << str(inv);
    // tau monotone in c
    families::Sampling s;
    s.frame_dt = 0.05;
    const auto dilated = families::scaled_ellipse(2.0, 1.0, s);
    bool monotone = true;
    for (const Point& V : sample_directions(1, 8)) {
      double prev = -INFINITY;
      for (double c : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double tau = first_touch_time(dilated, Hyperplane(V, c));
        monotone = monotone && tau > prev;
        prev = tau;
      }
    }
    ok = ok && monotone;
    notes << ", tau " << (monotone ? "monotone" : "not monotone");
    // expansiveness and volume over the catalog
    std::size_t violations = 0;
    bool volume = true;
    FlowConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.1;
    auto audit = [&](const Trajectory& t) {
      violations += check_expansiveness(t).violations;
      for (std::size_t k = 1; k < t.size(); ++k) {
        volume = volume && t.frame(k).surface.enclosed_volume() > t.frame(k - 1).surface.enclosed_volume();
      }
    };
    for (const std::string& name : {"k", "k^alpha"}) {
      audit(evolve(shapes::ellipse(2.0, 1.0, 128), speeds::by_name(name, 1, 0.5), 0.0, cfg));
    }
    cfg.t_end = 0.04;
    for (const std::string& name : {"H", "H^alpha", "K", "sigma2_root"}) {
      audit(evolve(shapes::ellipsoid(1.5, 1.0, 1.0, 2), speeds::by_name(name, 2, 0.5), 0.0, cfg));
    }
    ok = ok && violations == 0 && volume;
    notes << ", expansiveness violations " << violations << ", volume " << (volume ? "increasing" : "not increasing");
    // curvature convergence on the unit circle and an ellipse
    auto error = [](const DiscreteHypersurface& m, bool circle) {
      const CurvatureData d = compute_curvatures(m);
      double worst = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        const Point& x = m.vertex(i);
        const double exact = circle ? 1.0 : 2.0 / std::pow(x.x() * x.x() / 4.0 + 4.0 * x.y() * x.y(), 1.5);
        worst = std::max(worst, std::abs(d.principal[i][0] - exact));
      }
      return worst;
    };
    const double circle_err = std::max(error(shapes::circle(1.0, 64), true), error(shapes::circle(1.0, 128), true));
    const double factor = error(shapes::ellipse(2.0, 1.0, 64), false) / error(shapes::ellipse(2.0, 1.0, 128), false);
    ok = ok && (circle_err < 1e-10 || error(shapes::circle(1.0, 64), true) / error(shapes::circle(1.0, 128), true) >= 3.0) &&
         factor >= 3.0;
    notes << ", circle curvature error " << str(circle_err) << ", ellipse factor " << str(factor);
    return Outcome{ok, notes.str()};
  });

  return failures == 0 ? 0 : 1;
}
