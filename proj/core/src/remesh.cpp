// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ecflow/errors.hpp"
#include "ecflow/flow_engine.hpp"
#include "geometry_kernels.hpp"
#include "local_quadric.hpp"

namespace ecf {

namespace {

constexpr int kMaxPasses = 32;

// Point on the arc of the circle through (a, b, c) halfway between the chord
// endpoints p and q; falls back to the chord midpoint on straight pieces.
Point arc_midpoint(const Point& a, const Point& b, const Point& c, const Point& p, const Point& q) {
  const Point mid = 0.5 * (p + q);
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * detail::cross2(ab, ac);
  if (std::abs(d) <= 1e-12 * ab.norm() * ac.norm()) return mid;
  const double ab2 = ab.squaredNorm();
  const double ac2 = ac.squaredNorm();
  const Point center = a + Point((ac.y() * ab2 - ab.y() * ac2) / d, (ab.x() * ac2 - ac.x() * ab2) / d, 0.0);
  const double radius = (a - center).norm();
  const Point dir = mid - center;
  if (dir.norm() == 0.0) return mid;
  return center + radius * dir.normalized();
}

DiscreteHypersurface remesh_curve(const DiscreteHypersurface& m, const EdgeBand& band) {
  std::vector<Point> v = m.vertices();
  auto len = [&](std::size_t i) { return (v[(i + 1) % v.size()] - v[i]).norm(); };

  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() > 3;) {
      if (len(i) >= band.min_length) {
        ++i;
        continue;
      }
      // drop whichever endpoint leaves the shorter merged edge
      const std::size_t count = v.size();
      const std::size_t j = (i + 1) % count;
      const double drop_i = (v[j] - v[(i + count - 1) % count]).norm();
      const double drop_j = (v[(j + 1) % count] - v[i]).norm();
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(drop_i <= drop_j ? i : j));
      changed = true;
    }

    std::vector<Point> out;
    out.reserve(v.size() * 2);
    const std::size_t count = v.size();
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(v[i]);
      if (len(i) <= band.max_length) continue;
      const Point& prev = v[(i + count - 1) % count];
      const Point& p = v[i];
      const Point& q = v[(i + 1) % count];
      const Point& next = v[(i + 2) % count];
      out.push_back(0.5 * (arc_midpoint(prev, p, q, p, q) + arc_midpoint(p, q, next, p, q)));
      changed = true;
    }
    v = std::move(out);
    if (!changed) break;
  }
  return DiscreteHypersurface::curve(std::move(v), Validation::Full);
}

class SurfaceEditor {
 public:
  explicit SurfaceEditor(const DiscreteHypersurface& m)
      : v_(m.vertices()), f_(m.faces()), alive_(m.faces().size(), true), fits_(detail::fit_vertex_quadrics(m)) {
    parent_.resize(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) parent_[i] = static_cast<int>(i);
    vertex_alive_.assign(v_.size(), true);
  }

  bool split_pass(double max_length) {
    std::map<std::pair<int, int>, int> directed;
    for (std::size_t f = 0; f < f_.size(); ++f) {
      if (alive_[f]) register_face(directed, static_cast<int>(f));
    }
    std::vector<std::pair<double, Edge>> queue;
    for (const auto& [key, face] : directed) {
      if (key.first < key.second && length(key.first, key.second) > max_length) {
        queue.push_back({length(key.first, key.second), Edge{key.first, key.second}});
      }
    }
    std::sort(queue.begin(), queue.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& item : queue) {
      const int a = item.second[0];
      const int b = item.second[1];
      const auto ab = directed.find({a, b});
      const auto ba = directed.find({b, a});
      if (ab == directed.end() || ba == directed.end()) continue;
      const int f1 = ab->second;
      const int f2 = ba->second;
      const int c = opposite(f1, a, b);
      const int d = opposite(f2, b, a);
      const int mid = add_vertex(midpoint(a, b), parent_[static_cast<std::size_t>(a)]);
      directed.erase(ab);
      directed.erase(ba);
      f_[static_cast<std::size_t>(f1)] = {a, mid, c};
      f_[static_cast<std::size_t>(f2)] = {b, mid, d};
      f_.push_back({mid, b, c});
      alive_.push_back(true);
      f_.push_back({mid, a, d});
      alive_.push_back(true);
      for (int f : {f1, f2, static_cast<int>(f_.size()) - 2, static_cast<int>(f_.size()) - 1}) register_face(directed, f);
    }
    return !queue.empty();
  }

  bool collapse_pass(double min_length, double max_length) {
    std::vector<std::vector<int>> vertex_faces(v_.size());
    std::vector<std::set<int>> neighbors(v_.size());
    for (std::size_t f = 0; f < f_.size(); ++f) {
      if (!alive_[f]) continue;
      for (int k = 0; k < 3; ++k) {
        const int p = f_[f][static_cast<std::size_t>(k)];
        vertex_faces[static_cast<std::size_t>(p)].push_back(static_cast<int>(f));
        neighbors[static_cast<std::size_t>(p)].insert(f_[f][static_cast<std::size_t>((k + 1) % 3)]);
        neighbors[static_cast<std::size_t>(p)].insert(f_[f][static_cast<std::size_t>((k + 2) % 3)]);
      }
    }
    std::vector<std::pair<double, Edge>> queue;
    for (std::size_t a = 0; a < v_.size(); ++a) {
      if (!vertex_alive_[a]) continue;
      for (int b : neighbors[a]) {
        if (static_cast<int>(a) < b && length(static_cast<int>(a), b) < min_length) {
          queue.push_back({length(static_cast<int>(a), b), Edge{static_cast<int>(a), b}});
        }
      }
    }
    std::sort(queue.begin(), queue.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    std::vector<bool> touched(v_.size(), false);
    bool changed = false;
    for (const auto& item : queue) {
      const int a = item.second[0];
      const int b = item.second[1];
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      if (touched[ua] || touched[ub]) continue;

      std::vector<int> common;
      std::set_intersection(neighbors[ua].begin(), neighbors[ua].end(), neighbors[ub].begin(), neighbors[ub].end(),
                            std::back_inserter(common));
      if (common.size() != 2) continue;  // link condition
      if (neighbors[ua].size() + neighbors[ub].size() - 4 < 3) continue;

      const Point target = midpoint(a, b);
      bool ok = true;
      for (int q : neighbors[ua]) ok = ok && (q == b || (v_[static_cast<std::size_t>(q)] - target).norm() <= max_length);
      for (int q : neighbors[ub]) ok = ok && (q == a || (v_[static_cast<std::size_t>(q)] - target).norm() <= max_length);
      if (!ok) continue;

      std::vector<int> affected = vertex_faces[ua];
      affected.insert(affected.end(), vertex_faces[ub].begin(), vertex_faces[ub].end());
      for (int f : affected) {
        Face t = f_[static_cast<std::size_t>(f)];
        const bool has_a = std::find(t.begin(), t.end(), a) != t.end();
        const bool has_b = std::find(t.begin(), t.end(), b) != t.end();
        if (has_a && has_b) continue;
        const Point before = face_normal(t);
        for (int& p : t) {
          if (p == a || p == b) p = -1;
        }
        Point after = Point::Zero();
        {
          std::array<Point, 3> q;
          for (int k = 0; k < 3; ++k) {
            const int p = t[static_cast<std::size_t>(k)];
            q[static_cast<std::size_t>(k)] = p < 0 ? target : v_[static_cast<std::size_t>(p)];
          }
          after = (q[1] - q[0]).cross(q[2] - q[0]);
        }
        if (after.norm() == 0.0 || after.normalized().dot(before.normalized()) < 0.2) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;

      for (int f : affected) {
        Face& t = f_[static_cast<std::size_t>(f)];
        const bool has_a = std::find(t.begin(), t.end(), a) != t.end();
        const bool has_b = std::find(t.begin(), t.end(), b) != t.end();
        if (has_a && has_b) {
          alive_[static_cast<std::size_t>(f)] = false;
          continue;
        }
        for (int& p : t) {
          if (p == b) p = a;
        }
      }
      v_[ua] = target;
      vertex_alive_[ub] = false;
      for (int q : neighbors[ua]) touched[static_cast<std::size_t>(q)] = true;
      for (int q : neighbors[ub]) touched[static_cast<std::size_t>(q)] = true;
      touched[ua] = touched[ub] = true;
      changed = true;
    }
    return changed;
  }

  DiscreteHypersurface build() const {
    std::vector<int> remap(v_.size(), -1);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (!vertex_alive_[i]) continue;
      remap[i] = static_cast<int>(pts.size());
      pts.push_back(v_[i]);
    }
    std::vector<Face> faces;
    for (std::size_t f = 0; f < f_.size(); ++f) {
      if (!alive_[f]) continue;
      Face t = f_[f];
      for (int& p : t) p = remap[static_cast<std::size_t>(p)];
      faces.push_back(t);
    }
    return DiscreteHypersurface::surface(std::move(pts), std::move(faces), Validation::Full);
  }

 private:
  double length(int a, int b) const { return (v_[static_cast<std::size_t>(a)] - v_[static_cast<std::size_t>(b)]).norm(); }

  Point face_normal(const Face& t) const {
    const Point& p0 = v_[static_cast<std::size_t>(t[0])];
    return (v_[static_cast<std::size_t>(t[1])] - p0).cross(v_[static_cast<std::size_t>(t[2])] - p0);
  }

  // Chord midpoint lifted onto the fitted surface, averaged over both ends.
  Point midpoint(int a, int b) const {
    const Point mid = 0.5 * (v_[static_cast<std::size_t>(a)] + v_[static_cast<std::size_t>(b)]);
    const auto& fa = fits_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
    const auto& fb = fits_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(b)])];
    return 0.5 * (fa.project(mid) + fb.project(mid));
  }

  int add_vertex(const Point& p, int parent) {
    v_.push_back(p);
    parent_.push_back(parent);
    vertex_alive_.push_back(true);
    return static_cast<int>(v_.size()) - 1;
  }

  int opposite(int face, int a, int b) const {
    for (int p : f_[static_cast<std::size_t>(face)]) {
      if (p != a && p != b) return p;
    }
    fail(ErrorCode::InvalidMesh, "degenerate face during remeshing");
  }

  void register_face(std::map<std::pair<int, int>, int>& directed, int face) const {
    const Face& t = f_[static_cast<std::size_t>(face)];
    for (int k = 0; k < 3; ++k) directed[{t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>((k + 1) % 3)]}] = face;
  }

  std::vector<Point> v_;
  std::vector<Face> f_;
  std::vector<bool> alive_;
  std::vector<bool> vertex_alive_;
  std::vector<detail::LocalQuadric> fits_;
  std::vector<int> parent_;
};

DiscreteHypersurface remesh_surface(const DiscreteHypersurface& m, const EdgeBand& band) {
  SurfaceEditor editor(m);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    if (!editor.collapse_pass(band.min_length, band.max_length)) break;
  }
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    if (!editor.split_pass(band.max_length)) break;
  }
  return editor.build();
}

}  // namespace

DiscreteHypersurface remesh(const DiscreteHypersurface& m, const EdgeBand& band) {
  if (!(band.min_length >= 0.0) || !(band.max_length > band.min_length) || !std::isfinite(band.max_length)) {
    fail(ErrorCode::InvalidArgument, "edge band needs 0 <= min < max < inf");
  }
  if (2.0 * band.min_length > band.max_length) fail(ErrorCode::InvalidArgument, "edge band needs 2 min <= max");
  if (edges_within(m, band)) return m;
  return m.dim() == 1 ? remesh_curve(m, band) : remesh_surface(m, band);
}

}  // namespace ecf
