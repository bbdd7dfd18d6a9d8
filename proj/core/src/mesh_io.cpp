// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ecflow/errors.hpp"

namespace ecf::io {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double parse_real(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) parse_fail(line, "bad number '" + std::string(token) + "'");
  return value;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_obj(const DiscreteHypersurface& m, std::ostream& out) {
  if (m.dim() != 2) fail(ErrorCode::InvalidArgument, "OBJ output is for surfaces");
  out << "# ecflow surface: " << m.size() << " vertices, " << m.faces().size() << " faces\n";
  for (const Point& p : m.vertices()) {
    out << "v " << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z()) << '\n';
  }
  for (const Face& f : m.faces()) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

DiscreteHypersurface read_obj(std::istream& in, Validation level) {
  std::vector<Point> vertices;
  std::vector<Face> faces;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) parse_fail(lineno, "vertex needs three coordinates");
      vertices.emplace_back(parse_real(tokens[1], lineno), parse_real(tokens[2], lineno), parse_real(tokens[3], lineno));
    } else if (tokens[0] == "f") {
      if (tokens.size() != 4) parse_fail(lineno, "only triangular faces are supported");
      Face f{};
      for (std::size_t c = 0; c < 3; ++c) {
        const std::string head = tokens[c + 1].substr(0, tokens[c + 1].find('/'));
        int idx = 0;
        const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
        if (ec != std::errc() || ptr != head.data() + head.size() || idx == 0) parse_fail(lineno, "bad face index");
        f[c] = idx > 0 ? idx - 1 : static_cast<int>(vertices.size()) + idx;
      }
      faces.push_back(f);
    }
    // other OBJ records (vn, vt, g, o, s, ...) are ignored
  }
  return DiscreteHypersurface::surface(std::move(vertices), std::move(faces), level);
}

void write_polyline(const DiscreteHypersurface& m, std::ostream& out) {
  if (m.dim() != 1) fail(ErrorCode::InvalidArgument, "polyline output is for curves");
  out << "# ecflow closed polyline: " << m.size() << " vertices\n";
  for (const Point& p : m.vertices()) out << format_real(p.x()) << ' ' << format_real(p.y()) << '\n';
}

DiscreteHypersurface read_polyline(std::istream& in, Validation level) {
  std::vector<Point> vertices;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens.size() != 2 && !(tokens.size() == 3 && parse_real(tokens[2], lineno) == 0.0)) {
      parse_fail(lineno, "expected 'x y'");
    }
    vertices.emplace_back(parse_real(tokens[0], lineno), parse_real(tokens[1], lineno), 0.0);
  }
  return DiscreteHypersurface::curve(std::move(vertices), level);
}

std::string mesh_extension(int dim) { return dim == 2 ? ".obj" : ".poly"; }

void write_mesh(const DiscreteHypersurface& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  if (m.dim() == 2) {
    write_obj(m, out);
  } else {
    write_polyline(m, out);
  }
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

DiscreteHypersurface read_mesh(const std::filesystem::path& path, Validation level) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
  try {
    return path.extension() == ".obj" ? read_obj(in, level) : read_polyline(in, level);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace ecf::io
