// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ecf {

/// Principal curvatures (lambda_1, ..., lambda_n) of a hypersurface at one
/// point. Only n = 1 (curves in the plane) and n = 2 (surfaces in space) are
/// supported.
class Curvatures {
 public:
  static constexpr int kMaxDim = 2;

  Curvatures() = default;
  Curvatures(std::initializer_list<double> values);
  explicit Curvatures(std::span<const double> values);

  int dim() const noexcept { return n_; }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const noexcept { return {v_.data(), static_cast<std::size_t>(n_)}; }

  Curvatures scaled(double s) const;
  Curvatures swapped() const;  // the only nontrivial permutation for n <= 2
  double min() const;
  double max() const;

 private:
  std::array<double, kMaxDim> v_{};
  int n_ = 0;
};

using Gradient = std::array<double, Curvatures::kMaxDim>;

enum class ConeKind { Positive, FullSpaceMinusOrigin, Custom };

/// Admissible cone Gamma. Membership is an open-set test; `margin` gives the
/// relative distance to the boundary where that is meaningful (1 for cones
/// without a finite boundary).
class Cone {
 public:
  using Predicate = std::function<bool(const Curvatures&)>;

  static Cone positive();
  static Cone full_space_minus_origin();
  static Cone custom(Predicate predicate, std::string description);

  ConeKind kind() const noexcept { return kind_; }
  const std::string& description() const noexcept { return description_; }
  bool contains(const Curvatures& k) const;
  double margin(const Curvatures& k) const;

 private:
  Cone(ConeKind kind, Predicate predicate, std::string description)
      : kind_(kind), predicate_(std::move(predicate)), description_(std::move(description)) {}

  ConeKind kind_;
  Predicate predicate_;
  std::string description_;
};

/// A symmetric speed F on a cone. Immutable once built; copies share nothing
/// mutable, so instances can be evaluated from several threads.
class SpeedFunction {
 public:
  using EvalFn = std::function<double(const Curvatures&)>;
  using GradientFn = std::function<Gradient(const Curvatures&)>;

  SpeedFunction(std::string name, int arity, Cone cone, EvalFn eval,
                std::optional<GradientFn> gradient = std::nullopt,
                std::optional<double> homogeneity = std::nullopt, bool builtin = false);

  const std::string& name() const noexcept { return name_; }
  int arity() const noexcept { return arity_; }
  const Cone& cone() const noexcept { return cone_; }
  std::optional<double> homogeneity() const noexcept { return homogeneity_; }
  bool has_closed_form_gradient() const noexcept { return gradient_.has_value(); }
  bool builtin() const noexcept { return builtin_; }

  /// Checked evaluation: cone membership and positivity are enforced.
  double operator()(const Curvatures& k) const;
  /// Unchecked evaluation, used by the admissibility audit.
  double raw(const Curvatures& k) const { return eval_(k); }

  Gradient gradient(const Curvatures& k) const;
  Gradient finite_difference_gradient(const Curvatures& k) const;

 private:
  std::string name_;
  int arity_;
  Cone cone_;
  EvalFn eval_;
  std::optional<GradientFn> gradient_;
  std::optional<double> homogeneity_;
  bool builtin_;
};

double eval_speed(const SpeedFunction& speed, const Curvatures& k);

namespace speeds {

/// H = sum of principal curvatures. For n = 1 this is the curve curvature k.
SpeedFunction mean(int n);
/// H^alpha, alpha > 0.
SpeedFunction mean_power(int n, double alpha);
/// K = product of principal curvatures.
SpeedFunction gauss(int n);
/// sigma_m^(1/m): m-th elementary symmetric polynomial to the power 1/m.
SpeedFunction elementary_root(int n, int m);

/// Resolve a catalog name ("H", "k", "H^alpha", "k^alpha", "K", "sigma2_root")
/// for dimension n. Throws ValidationError on unknown names or bad parameters.
SpeedFunction by_name(const std::string& name, int n, std::optional<double> alpha = std::nullopt);

std::vector<std::string> catalog_names();

}  // namespace speeds

struct SamplingPlan {
  std::vector<double> diagonal_magnitudes{1e-2, 1e-1, 1.0, 1e1, 1e2};
  int off_diagonal_per_magnitude = 32;
  std::uint64_t seed = 0x5eedULL;
  /// Additional user-chosen probe points (kept only if inside the cone).
  std::vector<Curvatures> extra_points;
};

struct SamplePointResult {
  Curvatures point;
  double value = 0.0;
  Gradient gradient{};
  bool positive = false;
  bool monotone = false;
  double symmetry_residual = 0.0;
  bool symmetric = false;
};

struct AdmissibilityReport {
  std::vector<SamplePointResult> samples;
  bool cone_contains_diagonal = false;
  bool cone_symmetric = false;
  bool cone_convex = false;
  /// Largest relative mismatch between closed-form and finite-difference
  /// gradients; zero when no closed form is supplied.
  double max_gradient_mismatch = 0.0;
  std::size_t positivity_failures = 0;
  std::size_t monotonicity_failures = 0;
  std::size_t symmetry_failures = 0;
  bool passed = false;

  /// Admissibility is established by sampling only, so the verdict is
  /// phrased accordingly.
  std::string verdict() const { return passed ? "sampled pass" : "sampled fail"; }
};

AdmissibilityReport check_admissibility(const SpeedFunction& speed, const SamplingPlan& plan = {});

/// Degree alpha with F(s k) = s^alpha F(k) at every probe scale, or nullopt
/// when the log-ratios disagree beyond `rel_tol`.
std::optional<double> homogeneity_degree(const SpeedFunction& speed, const Curvatures& probe,
                                         std::span<const double> scales, double rel_tol = 1e-8);

}  // namespace ecf
