// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ecflow/hypersurface.hpp"

namespace ecf::io {

/// Decimal with 17 significant digits; parsing it back yields the same double.
std::string format_real(double value);

/// OBJ subset for surfaces: "v x y z" and triangular "f i j k" (1-based).
void write_obj(const DiscreteHypersurface& m, std::ostream& out);
DiscreteHypersurface read_obj(std::istream& in, Validation level = Validation::Full);

/// Closed polyline text for curves: one "x y" vertex per line, closure implied.
void write_polyline(const DiscreteHypersurface& m, std::ostream& out);
DiscreteHypersurface read_polyline(std::istream& in, Validation level = Validation::Full);

/// Dispatch on dimension (write) or extension: ".obj" is a surface, anything
/// else a polyline (read).
void write_mesh(const DiscreteHypersurface& m, const std::filesystem::path& path);
DiscreteHypersurface read_mesh(const std::filesystem::path& path, Validation level = Validation::Full);

std::string mesh_extension(int dim);

}  // namespace ecf::io
