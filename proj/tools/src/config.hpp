// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecflow/hypersurface.hpp"

namespace ecf::cli {

inline constexpr const char* kCommands[] = {"simulate", "sphere-ode", "classify-speed", "reflect-audit", "rigidity-audit"};

/// Flat `key = value` configuration. Every known key has a default; the
/// resolved map holds all of them so that it can be echoed and re-run.
class RunConfig {
 public:
  std::string command;

  static std::vector<std::string> known_keys();
  static std::string default_value(const std::string& key);

  /// Sets a key, rejecting unknown ones (ParseError).
  void set(const std::string& key, const std::string& value, const std::string& context = "");
  const std::string& raw(const std::string& key) const;
  bool is_set(const std::string& key) const { return !raw(key).empty(); }

  double real(const std::string& key) const;
  int integer(const std::string& key) const;
  std::uint64_t seed() const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  Point point(const std::string& key) const;
  std::optional<double> optional_real(const std::string& key) const;
  std::filesystem::path output_dir() const { return raw("output_dir"); }

  /// Ambient-dimension of the configured geometry (1 for curves, 2 for
  /// surfaces); geometry-free commands use the `dim` key.
  int dim() const;

  /// Range and existence rules; throws ValidationError naming the field.
  void validate() const;

  /// `key = value` lines in key order, preceded by the command.
  std::string resolved_text() const;

 private:
  std::map<std::string, std::string> values_ = defaults();
  static std::map<std::string, std::string> defaults();
};

/// Reads `key = value` lines ('#' starts a comment). Throws ParseError with
/// the line number, or IoError when the file cannot be read.
void load_config_file(RunConfig& config, const std::filesystem::path& path);
void load_config_text(RunConfig& config, const std::string& text, const std::string& source);

/// Applies a `key=value` override.
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace ecf::cli
