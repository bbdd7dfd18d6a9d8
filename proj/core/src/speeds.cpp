// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/speeds.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ecflow/errors.hpp"

namespace ecf {

namespace {

std::string describe(const Curvatures& k) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int i = 0; i < k.dim(); ++i) os << (i ? ", " : "") << k[i];
  os << ')';
  return os.str();
}

void require_dim(int n) {
  if (n < 1 || n > Curvatures::kMaxDim) {
    fail(ErrorCode::InvalidArgument, "curvature dimension must be 1 or 2, got " + std::to_string(n));
  }
}

std::string format_param(double alpha) {
  std::ostringstream os;
  os << alpha;
  return os.str();
}

}  // namespace

Curvatures::Curvatures(std::initializer_list<double> values)
    : Curvatures(std::span<const double>(values.begin(), values.size())) {}

Curvatures::Curvatures(std::span<const double> values) {
  require_dim(static_cast<int>(values.size()));
  n_ = static_cast<int>(values.size());
  for (int i = 0; i < n_; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite principal curvature");
    v_[static_cast<std::size_t>(i)] = v;
  }
}

Curvatures Curvatures::scaled(double s) const {
  Curvatures out = *this;
  for (int i = 0; i < n_; ++i) out.v_[static_cast<std::size_t>(i)] *= s;
  return out;
}

Curvatures Curvatures::swapped() const {
  Curvatures out = *this;
  if (n_ == 2) std::swap(out.v_[0], out.v_[1]);
  return out;
}

double Curvatures::min() const { return n_ == 2 ? std::min(v_[0], v_[1]) : v_[0]; }
double Curvatures::max() const { return n_ == 2 ? std::max(v_[0], v_[1]) : v_[0]; }

// ---------------------------------------------------------------------------
// Cones

Cone Cone::positive() {
  return Cone(
      ConeKind::Positive,
      [](const Curvatures& k) {
        for (double v : k.values()) {
          if (!(v > 0.0)) return false;
        }
        return true;
      },
      "positive cone {lambda_i > 0}");
}

Cone Cone::full_space_minus_origin() {
  return Cone(
      ConeKind::FullSpaceMinusOrigin,
      [](const Curvatures& k) {
        for (double v : k.values()) {
          if (v != 0.0) return true;
        }
        return false;
      },
      "R^n minus the origin");
}

Cone Cone::custom(Predicate predicate, std::string description) {
  if (!predicate) fail(ErrorCode::InvalidArgument, "custom cone needs a predicate");
  return Cone(ConeKind::Custom, std::move(predicate), std::move(description));
}

bool Cone::contains(const Curvatures& k) const { return predicate_(k); }

double Cone::margin(const Curvatures& k) const {
  if (!contains(k)) return 0.0;
  switch (kind_) {
    case ConeKind::Positive: {
      double largest = 0.0;
      for (double v : k.values()) largest = std::max(largest, std::abs(v));
      return k.min() / largest;
    }
    case ConeKind::FullSpaceMinusOrigin:
    case ConeKind::Custom:
      return 1.0;
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// SpeedFunction

SpeedFunction::SpeedFunction(std::string name, int arity, Cone cone, EvalFn eval,
                             std::optional<GradientFn> gradient, std::optional<double> homogeneity,
                             bool builtin)
    : name_(std::move(name)),
      arity_(arity),
      cone_(std::move(cone)),
      eval_(std::move(eval)),
      gradient_(std::move(gradient)),
      homogeneity_(homogeneity),
      builtin_(builtin) {
  require_dim(arity_);
  if (!eval_) fail(ErrorCode::InvalidArgument, "speed '" + name_ + "' has no evaluator");
}

double SpeedFunction::operator()(const Curvatures& k) const {
  if (k.dim() != arity_) {
    fail(ErrorCode::InvalidArgument,
         "speed '" + name_ + "' expects " + std::to_string(arity_) + " curvatures");
  }
  if (!cone_.contains(k)) {
    fail(ErrorCode::CurvatureOutsideCone, describe(k) + " is outside " + cone_.description());
  }
  const double value = eval_(k);
  if (!(value > 0.0)) {
    fail(ErrorCode::NonPositiveSpeed, "speed '" + name_ + "' is " + std::to_string(value) + " at " + describe(k));
  }
  return value;
}

Gradient SpeedFunction::finite_difference_gradient(const Curvatures& k) const {
  Gradient g{};
  std::array<double, Curvatures::kMaxDim> buf{};
  for (int i = 0; i < k.dim(); ++i) buf[static_cast<std::size_t>(i)] = k[i];
  const std::span<const double> view(buf.data(), static_cast<std::size_t>(k.dim()));
  for (int i = 0; i < k.dim(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double h = std::max(1e-5 * std::abs(k[i]), 1e-8);
    buf[ui] = k[i] + h;
    const double fp = eval_(Curvatures(view));
    buf[ui] = k[i] - h;
    const double fm = eval_(Curvatures(view));
    buf[ui] = k[i];
    g[ui] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Gradient SpeedFunction::gradient(const Curvatures& k) const {
  return gradient_ ? (*gradient_)(k) : finite_difference_gradient(k);
}

double eval_speed(const SpeedFunction& speed, const Curvatures& k) { return speed(k); }

// ---------------------------------------------------------------------------
// Catalog

namespace speeds {

namespace {

double sum(const Curvatures& k) {
  double s = 0.0;
  for (double v : k.values()) s += v;
  return s;
}

double product(const Curvatures& k) {
  double p = 1.0;
  for (double v : k.values()) p *= v;
  return p;
}

}  // namespace

SpeedFunction mean(int n) {
  require_dim(n);
  return SpeedFunction(
      n == 1 ? "k" : "H", n, Cone::positive(), [](const Curvatures& k) { return sum(k); },
      [](const Curvatures& k) {
        Gradient g{};
        for (int i = 0; i < k.dim(); ++i) g[static_cast<std::size_t>(i)] = 1.0;
        return g;
      },
      1.0, true);
}

SpeedFunction mean_power(int n, double alpha) {
  require_dim(n);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    fail(ErrorCode::ValidationError, "H^alpha requires alpha > 0, got " + format_param(alpha));
  }
  const std::string base = n == 1 ? "k" : "H";
  return SpeedFunction(
      base + "^" + format_param(alpha), n, Cone::positive(),
      [alpha](const Curvatures& k) { return std::pow(sum(k), alpha); },
      [alpha](const Curvatures& k) {
        const double d = alpha * std::pow(sum(k), alpha - 1.0);
        Gradient g{};
        for (int i = 0; i < k.dim(); ++i) g[static_cast<std::size_t>(i)] = d;
        return g;
      },
      alpha, true);
}

SpeedFunction gauss(int n) {
  require_dim(n);
  return SpeedFunction(
      "K", n, Cone::positive(), [](const Curvatures& k) { return product(k); },
      [](const Curvatures& k) {
        Gradient g{};
        if (k.dim() == 1) {
          g[0] = 1.0;
        } else {
          g[0] = k[1];
          g[1] = k[0];
        }
        return g;
      },
      static_cast<double>(n), true);
}

SpeedFunction elementary_root(int n, int m) {
  require_dim(n);
  if (m < 1 || m > n) fail(ErrorCode::ValidationError, "sigma_m root needs 1 <= m <= n");
  if (m == 1) {
    return SpeedFunction("sigma1_root", n, Cone::positive(), [](const Curvatures& k) { return sum(k); },
                         [](const Curvatures& k) {
                           Gradient g{};
                           for (int i = 0; i < k.dim(); ++i) g[static_cast<std::size_t>(i)] = 1.0;
                           return g;
                         },
                         1.0, true);
  }
  // m == n == 2
  return SpeedFunction(
      "sigma2_root", n, Cone::positive(), [](const Curvatures& k) { return std::sqrt(k[0] * k[1]); },
      [](const Curvatures& k) {
        const double root = std::sqrt(k[0] * k[1]);
        return Gradient{0.5 * k[1] / root, 0.5 * k[0] / root};
      },
      1.0, true);
}

SpeedFunction by_name(const std::string& name, int n, std::optional<double> alpha) {
  require_dim(n);
  if (name == "H" || name == "k") {
    if (name == "k" && n != 1) fail(ErrorCode::ValidationError, "speed 'k' is only defined for curves (n = 1)");
    return mean(n);
  }
  if (name == "H^alpha" || name == "k^alpha") {
    if (name == "k^alpha" && n != 1) {
      fail(ErrorCode::ValidationError, "speed 'k^alpha' is only defined for curves (n = 1)");
    }
    if (!alpha) fail(ErrorCode::ValidationError, "speed '" + name + "' requires parameter alpha");
    return mean_power(n, *alpha);
  }
  if (name == "K") return gauss(n);
  if (name == "sigma2_root") {
    if (n != 2) fail(ErrorCode::ValidationError, "speed 'sigma2_root' requires n = 2");
    return elementary_root(n, 2);
  }
  fail(ErrorCode::ValidationError, "unknown speed '" + name + "'");
}

std::vector<std::string> catalog_names() { return {"H", "k", "H^alpha", "k^alpha", "K", "sigma2_root"}; }

}  // namespace speeds

// ---------------------------------------------------------------------------
// Admissibility

namespace {

std::vector<Curvatures> build_samples(const SpeedFunction& speed, const SamplingPlan& plan) {
  const int n = speed.arity();
  const Cone& cone = speed.cone();
  std::vector<Curvatures> points;
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> exponent(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto keep = [&](const Curvatures& k) {
    if (cone.contains(k)) points.push_back(k);
  };

  for (double m : plan.diagonal_magnitudes) {
    std::array<double, 2> diag{m, m};
    keep(Curvatures(std::span<const double>(diag.data(), static_cast<std::size_t>(n))));
    for (int j = 0; j < plan.off_diagonal_per_magnitude; ++j) {
      std::array<double, 2> v{};
      for (int i = 0; i < n; ++i) {
        double x = m * std::pow(10.0, exponent(rng));
        if (cone.kind() != ConeKind::Positive && unit(rng) < 0.25) x = -x;
        v[static_cast<std::size_t>(i)] = x;
      }
      Curvatures k(std::span<const double>(v.data(), static_cast<std::size_t>(n)));
      if (unit(rng) < 0.5) k = k.swapped();
      keep(k);
    }
  }
  for (const Curvatures& k : plan.extra_points) {
    if (k.dim() != n) fail(ErrorCode::InvalidArgument, "sample point dimension does not match the speed");
    keep(k);
  }
  return points;
}

}  // namespace

AdmissibilityReport check_admissibility(const SpeedFunction& speed, const SamplingPlan& plan) {
  const std::vector<Curvatures> points = build_samples(speed, plan);
  if (points.empty()) fail(ErrorCode::EmptySample, "sampling plan produced no points inside " + speed.cone().description());

  const int n = speed.arity();
  const Cone& cone = speed.cone();
  AdmissibilityReport report;

  report.cone_contains_diagonal = true;
  for (double m : {1e-3, 1.0, 1e3}) {
    std::array<double, 2> diag{m, m};
    if (!cone.contains(Curvatures(std::span<const double>(diag.data(), static_cast<std::size_t>(n))))) {
      report.cone_contains_diagonal = false;
    }
  }
  report.cone_symmetric = std::all_of(points.begin(), points.end(),
                                      [&](const Curvatures& k) { return cone.contains(k.swapped()); });
  report.cone_convex = true;
  for (std::size_t i = 1; i < points.size(); ++i) {
    for (double w : {0.25, 0.5, 0.75}) {
      std::array<double, 2> mix{};
      for (int d = 0; d < n; ++d) mix[static_cast<std::size_t>(d)] = (1 - w) * points[i - 1][d] + w * points[i][d];
      if (!cone.contains(Curvatures(std::span<const double>(mix.data(), static_cast<std::size_t>(n))))) {
        report.cone_convex = false;
      }
    }
  }

  for (const Curvatures& k : points) {
    SamplePointResult r;
    r.point = k;
    r.value = speed.raw(k);
    r.positive = std::isfinite(r.value) && r.value > 0.0;
    r.gradient = speed.finite_difference_gradient(k);
    if (speed.has_closed_form_gradient()) {
      const Gradient closed = speed.gradient(k);
      for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double scale = std::max(std::abs(closed[ui]), 1e-300);
        report.max_gradient_mismatch =
            std::max(report.max_gradient_mismatch, std::abs(closed[ui] - r.gradient[ui]) / scale);
      }
      r.gradient = closed;
    }
    r.monotone = true;
    for (int i = 0; i < n; ++i) r.monotone = r.monotone && r.gradient[static_cast<std::size_t>(i)] > 0.0;
    const double permuted = speed.raw(k.swapped());
    r.symmetry_residual = std::abs(r.value - permuted);
    const double allowed = speed.builtin() ? 0.0 : 1e-12 * std::abs(r.value);
    r.symmetric = r.symmetry_residual <= allowed;

    report.positivity_failures += r.positive ? 0 : 1;
    report.monotonicity_failures += r.monotone ? 0 : 1;
    report.symmetry_failures += r.symmetric ? 0 : 1;
    report.samples.push_back(r);
  }

  report.passed = report.cone_contains_diagonal && report.cone_symmetric && report.cone_convex &&
                  report.positivity_failures == 0 && report.monotonicity_failures == 0 &&
                  report.symmetry_failures == 0 && report.max_gradient_mismatch <= 1e-6;
  return report;
}

std::optional<double> homogeneity_degree(const SpeedFunction& speed, const Curvatures& probe,
                                         std::span<const double> scales, double rel_tol) {
  if (scales.empty()) fail(ErrorCode::InvalidArgument, "homogeneity probe needs at least one scale");
  const double base = std::log(speed(probe));
  std::vector<double> degrees;
  for (double s : scales) {
    if (!(s > 0.0) || s == 1.0) fail(ErrorCode::InvalidArgument, "probe scales must be positive and != 1");
    degrees.push_back((std::log(speed(probe.scaled(s))) - base) / std::log(s));
  }
  const double ref = degrees.front();
  for (double a : degrees) {
    if (std::abs(a - ref) > rel_tol * std::max(1.0, std::abs(ref))) return std::nullopt;
  }
  double mean = 0.0;
  for (double a : degrees) mean += a;
  return mean / static_cast<double>(degrees.size());
}

}  // namespace ecf
