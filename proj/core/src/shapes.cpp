// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "ecflow/errors.hpp"

namespace ecf::shapes {

DiscreteHypersurface circle(double r, int vertices, const Point& center, double phase) {
  if (!(r > 0.0) || vertices < 3) fail(ErrorCode::InvalidArgument, "circle needs r > 0 and at least 3 vertices");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) {
    const double t = phase + 2.0 * std::numbers::pi * i / vertices;
    pts.emplace_back(center.x() + r * std::cos(t), center.y() + r * std::sin(t), 0.0);
  }
  return DiscreteHypersurface::curve(std::move(pts));
}

DiscreteHypersurface ellipse(double a, double b, int vertices, const Point& center) {
  if (!(a > 0.0) || !(b > 0.0) || vertices < 3) fail(ErrorCode::InvalidArgument, "ellipse needs positive axes and at least 3 vertices");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) {
    const double t = 2.0 * std::numbers::pi * i / vertices;
    pts.emplace_back(center.x() + a * std::cos(t), center.y() + b * std::sin(t), 0.0);
  }
  return DiscreteHypersurface::curve(std::move(pts));
}

DiscreteHypersurface square(double side, int per_side, const Point& center) {
  if (!(side > 0.0) || per_side < 1) fail(ErrorCode::InvalidArgument, "square needs side > 0 and per_side >= 1");
  const double h = 0.5 * side;
  const Point corners[4] = {{h, -h, 0}, {h, h, 0}, {-h, h, 0}, {-h, -h, 0}};
  std::vector<Point> pts;
  for (int c = 0; c < 4; ++c) {
    const Point& a = corners[c];
    const Point& b = corners[(c + 1) % 4];
    for (int i = 0; i < per_side; ++i) pts.push_back(center + a + (b - a) * (static_cast<double>(i) / per_side));
  }
  return DiscreteHypersurface::curve(std::move(pts));
}

namespace {

struct RawMesh {
  std::vector<Point> vertices;
  std::vector<Face> faces;
};

RawMesh unit_icosphere(int level) {
  if (level < 0 || level > 7) fail(ErrorCode::InvalidArgument, "icosphere level must be in [0, 7]");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  RawMesh m;
  m.vertices = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (Point& p : m.vertices) p.normalize();
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
             {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
      const Point p = (m.vertices[static_cast<std::size_t>(a)] + m.vertices[static_cast<std::size_t>(b)]).normalized();
      m.vertices.push_back(p);
      const int id = static_cast<int>(m.vertices.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(m.faces.size() * 4);
    for (const Face& f : m.faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.faces = std::move(next);
  }
  return m;
}

}  // namespace

DiscreteHypersurface icosphere(double r, int level, const Point& center) {
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "icosphere needs r > 0");
  RawMesh m = unit_icosphere(level);
  for (Point& p : m.vertices) p = center + r * p;
  return DiscreteHypersurface::surface(std::move(m.vertices), std::move(m.faces));
}

DiscreteHypersurface ellipsoid(double a, double b, double c, int level) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) fail(ErrorCode::InvalidArgument, "ellipsoid needs positive semi-axes");
  RawMesh m = unit_icosphere(level);
  for (Point& p : m.vertices) p = Point(a * p.x(), b * p.y(), c * p.z());
  return DiscreteHypersurface::surface(std::move(m.vertices), std::move(m.faces));
}

DiscreteHypersurface noisy_sphere(double r, int level, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 0.5)) fail(ErrorCode::InvalidArgument, "noise amplitude must be in [0, 0.5)");
  RawMesh m = unit_icosphere(level);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    double s = unit(rng);
    if (i == 0) s = 1.0;
    if (i == 1) s = -1.0;
    m.vertices[i] *= r * (1.0 + amplitude * s);
  }
  return DiscreteHypersurface::surface(std::move(m.vertices), std::move(m.faces));
}

}  // namespace ecf::shapes
