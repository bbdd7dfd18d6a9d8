// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ecflow/errors.hpp"
#include "geometry_kernels.hpp"

namespace ecf {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Uniform bucket grid over element bounding boxes; used only for the
// self-intersection sweep.
class BucketGrid {
 public:
  BucketGrid(const Point& lo, const Point& hi, std::size_t elements, int ambient_dim) : lo_(lo) {
    const Point extent = hi - lo;
    const double res = std::max(1.0, std::ceil(std::pow(static_cast<double>(elements), 1.0 / ambient_dim)));
    cell_ = std::max(extent.maxCoeff() / res, 1e-300);
  }

  void insert(int id, const Point& bmin, const Point& bmax) {
    const auto a = index(bmin);
    const auto b = index(bmax);
    for (long long i = a[0]; i <= b[0]; ++i)
      for (long long j = a[1]; j <= b[1]; ++j)
        for (long long k = a[2]; k <= b[2]; ++k) cells_[key(i, j, k)].push_back(id);
  }

  template <class Fn>
  void for_each_cell(Fn&& fn) const {
    for (const auto& [k, ids] : cells_) fn(ids);
  }

 private:
  std::array<long long, 3> index(const Point& p) const {
    std::array<long long, 3> out{};
    for (int d = 0; d < 3; ++d) out[static_cast<std::size_t>(d)] = static_cast<long long>(std::floor((p[d] - lo_[d]) / cell_));
    return out;
  }
  static long long key(long long i, long long j, long long k) { return (i * 73856093LL) ^ (j * 19349663LL) ^ (k * 83492791LL); }

  Point lo_;
  double cell_ = 1.0;
  std::unordered_map<long long, std::vector<int>> cells_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Topology

std::shared_ptr<const Topology> Topology::closed_chain(std::size_t count) {
  if (count < 3) fail(ErrorCode::InvalidMesh, "a closed polygon needs at least 3 vertices");
  auto topo = std::make_shared<Topology>();
  topo->n = 1;
  topo->vertex_count = count;
  topo->neighbors.resize(count);
  const int c = static_cast<int>(count);
  for (int i = 0; i < c; ++i) {
    const int next = (i + 1) % c;
    topo->edges.push_back({i, next});
    topo->neighbors[static_cast<std::size_t>(i)] = {(i + c - 1) % c, next};
    std::sort(topo->neighbors[static_cast<std::size_t>(i)].begin(), topo->neighbors[static_cast<std::size_t>(i)].end());
  }
  return topo;
}

std::shared_ptr<const Topology> Topology::closed_surface(std::size_t count, std::vector<Face> faces) {
  if (count < 4 || faces.size() < 4) fail(ErrorCode::InvalidMesh, "a closed surface needs at least 4 vertices and faces");
  auto topo = std::make_shared<Topology>();
  topo->n = 2;
  topo->vertex_count = count;
  topo->neighbors.resize(count);
  topo->vertex_faces.resize(count);

  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(faces.size() * 3);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Face& face = faces[f];
    for (int corner = 0; corner < 3; ++corner) {
      const int v = face[static_cast<std::size_t>(corner)];
      if (v < 0 || static_cast<std::size_t>(v) >= count) fail(ErrorCode::InvalidMesh, "face index out of range");
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      fail(ErrorCode::InvalidMesh, "face " + std::to_string(f) + " repeats a vertex");
    }
    for (int corner = 0; corner < 3; ++corner) {
      const int a = face[static_cast<std::size_t>(corner)];
      const int b = face[static_cast<std::size_t>((corner + 1) % 3)];
      if (!directed.emplace(edge_key(a, b), static_cast<int>(f)).second) {
        fail(ErrorCode::InvalidMesh, "directed edge " + std::to_string(a) + "->" + std::to_string(b) +
                                         " appears twice (inconsistent orientation or non-manifold)");
      }
      topo->vertex_faces[static_cast<std::size_t>(a)].push_back(static_cast<int>(f));
    }
  }
  for (const auto& [key, f] : directed) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffULL);
    const auto twin = directed.find(edge_key(b, a));
    if (twin == directed.end()) {
      fail(ErrorCode::InvalidMesh, "edge " + std::to_string(a) + "-" + std::to_string(b) + " is on the boundary");
    }
    if (a < b) {
      topo->edges.push_back({a, b});
      topo->edge_faces.push_back({f, twin->second});
    }
  }
  // deterministic ordering regardless of hash layout
  std::vector<std::size_t> order(topo->edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return topo->edges[x] < topo->edges[y]; });
  std::vector<Edge> edges;
  std::vector<std::array<int, 2>> edge_faces;
  for (std::size_t i : order) {
    edges.push_back(topo->edges[i]);
    edge_faces.push_back(topo->edge_faces[i]);
  }
  topo->edges = std::move(edges);
  topo->edge_faces = std::move(edge_faces);

  for (const Edge& e : topo->edges) {
    topo->neighbors[static_cast<std::size_t>(e[0])].push_back(e[1]);
    topo->neighbors[static_cast<std::size_t>(e[1])].push_back(e[0]);
  }
  for (std::size_t v = 0; v < count; ++v) {
    if (topo->neighbors[v].empty()) fail(ErrorCode::InvalidMesh, "vertex " + std::to_string(v) + " is unreferenced");
    std::sort(topo->neighbors[v].begin(), topo->neighbors[v].end());
  }
  const long long euler = static_cast<long long>(count) - static_cast<long long>(topo->edges.size()) +
                          static_cast<long long>(faces.size());
  if (euler != 2) fail(ErrorCode::InvalidMesh, "surface is not a topological sphere (Euler characteristic " + std::to_string(euler) + ")");

  topo->two_ring.resize(count);
  for (std::size_t v = 0; v < count; ++v) {
    std::set<int> ring;
    for (int a : topo->neighbors[v]) {
      ring.insert(a);
      for (int b : topo->neighbors[static_cast<std::size_t>(a)]) ring.insert(b);
    }
    ring.erase(static_cast<int>(v));
    topo->two_ring[v].assign(ring.begin(), ring.end());
  }
  topo->faces = std::move(faces);
  return topo;
}

// ---------------------------------------------------------------------------
// DiscreteHypersurface

DiscreteHypersurface DiscreteHypersurface::curve(std::vector<Point> vertices, Validation level) {
  for (const Point& p : vertices) {
    if (p.z() != 0.0) fail(ErrorCode::InvalidMesh, "curve vertices must lie in the z = 0 plane");
  }
  auto topo = Topology::closed_chain(vertices.size());
  DiscreteHypersurface m(std::move(vertices), std::move(topo));
  m.validate(level);
  return m;
}

DiscreteHypersurface DiscreteHypersurface::surface(std::vector<Point> vertices, std::vector<Face> faces,
                                                   Validation level) {
  auto topo = Topology::closed_surface(vertices.size(), std::move(faces));
  DiscreteHypersurface m(std::move(vertices), std::move(topo));
  m.validate(level);
  return m;
}

DiscreteHypersurface DiscreteHypersurface::with_vertices(std::vector<Point> vertices, Validation level) const {
  if (vertices.size() != vertices_.size()) fail(ErrorCode::InvalidArgument, "vertex count changed under fixed topology");
  DiscreteHypersurface m(std::move(vertices), topo_);
  m.validate(level);
  return m;
}

double DiscreteHypersurface::enclosed_volume() const {
  double acc = 0.0;
  if (dim() == 1) {
    for (const Edge& e : edges()) acc += detail::cross2(vertices_[static_cast<std::size_t>(e[0])], vertices_[static_cast<std::size_t>(e[1])]);
    return 0.5 * acc;
  }
  for (const Face& f : faces()) {
    const Point& a = vertices_[static_cast<std::size_t>(f[0])];
    const Point& b = vertices_[static_cast<std::size_t>(f[1])];
    const Point& c = vertices_[static_cast<std::size_t>(f[2])];
    acc += a.dot(b.cross(c));
  }
  return acc / 6.0;
}

double DiscreteHypersurface::min_edge_length() const {
  double best = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges()) best = std::min(best, (vertices_[static_cast<std::size_t>(e[0])] - vertices_[static_cast<std::size_t>(e[1])]).norm());
  return best;
}

double DiscreteHypersurface::max_edge_length() const {
  double best = 0.0;
  for (const Edge& e : edges()) best = std::max(best, (vertices_[static_cast<std::size_t>(e[0])] - vertices_[static_cast<std::size_t>(e[1])]).norm());
  return best;
}

double DiscreteHypersurface::mean_edge_length() const {
  double acc = 0.0;
  for (const Edge& e : edges()) acc += (vertices_[static_cast<std::size_t>(e[0])] - vertices_[static_cast<std::size_t>(e[1])]).norm();
  return acc / static_cast<double>(edges().size());
}

Point DiscreteHypersurface::vertex_centroid() const {
  Point c = Point::Zero();
  for (const Point& p : vertices_) c += p;
  return c / static_cast<double>(vertices_.size());
}

Point DiscreteHypersurface::bbox_min() const {
  Point lo = vertices_.front();
  for (const Point& p : vertices_) lo = lo.cwiseMin(p);
  return lo;
}

Point DiscreteHypersurface::bbox_max() const {
  Point hi = vertices_.front();
  for (const Point& p : vertices_) hi = hi.cwiseMax(p);
  return hi;
}

double DiscreteHypersurface::bbox_diagonal() const { return (bbox_max() - bbox_min()).norm(); }

void DiscreteHypersurface::validate(Validation level) const {
  if (level == Validation::None) return;
  for (const Point& p : vertices_) {
    if (!p.allFinite()) fail(ErrorCode::NonFiniteState, "vertex coordinates are not finite");
  }
  const double scale = bbox_diagonal();
  if (!(scale > 0.0)) fail(ErrorCode::InvalidMesh, "all vertices coincide");
  for (const Edge& e : edges()) {
    if ((vertices_[static_cast<std::size_t>(e[0])] - vertices_[static_cast<std::size_t>(e[1])]).norm() <= 1e-14 * scale) {
      fail(ErrorCode::InvalidMesh, "zero-length edge " + std::to_string(e[0]) + "-" + std::to_string(e[1]));
    }
  }
  if (dim() == 2) {
    for (std::size_t f = 0; f < faces().size(); ++f) {
      const Face& t = faces()[f];
      const Point n = (vertices_[static_cast<std::size_t>(t[1])] - vertices_[static_cast<std::size_t>(t[0])])
                          .cross(vertices_[static_cast<std::size_t>(t[2])] - vertices_[static_cast<std::size_t>(t[0])]);
      if (n.norm() <= 1e-28 * scale * scale) fail(ErrorCode::InvalidMesh, "zero-area face " + std::to_string(f));
    }
  }
  if (!(enclosed_volume() > 0.0)) {
    fail(ErrorCode::InvalidMesh, "enclosed volume is not positive (orientation must be outward)");
  }
  if (level == Validation::Full) {
    if (auto hit = find_self_intersection()) fail(ErrorCode::InvalidMesh, "self-intersection: " + *hit);
  }
}

std::optional<std::string> DiscreteHypersurface::find_self_intersection() const {
  const bool curve_mode = dim() == 1;
  const std::size_t count = curve_mode ? edges().size() : faces().size();
  BucketGrid grid(bbox_min(), bbox_max(), count, curve_mode ? 2 : 3);
  for (std::size_t i = 0; i < count; ++i) {
    Point lo, hi;
    if (curve_mode) {
      const Point& a = vertices_[static_cast<std::size_t>(edges()[i][0])];
      const Point& b = vertices_[static_cast<std::size_t>(edges()[i][1])];
      lo = a.cwiseMin(b);
      hi = a.cwiseMax(b);
    } else {
      const Face& f = faces()[i];
      lo = hi = vertices_[static_cast<std::size_t>(f[0])];
      for (int c = 1; c < 3; ++c) {
        lo = lo.cwiseMin(vertices_[static_cast<std::size_t>(f[static_cast<std::size_t>(c)])]);
        hi = hi.cwiseMax(vertices_[static_cast<std::size_t>(f[static_cast<std::size_t>(c)])]);
      }
    }
    grid.insert(static_cast<int>(i), lo, hi);
  }

  std::optional<std::string> found;
  grid.for_each_cell([&](const std::vector<int>& ids) {
    if (found) return;
    for (std::size_t x = 0; x < ids.size() && !found; ++x) {
      for (std::size_t y = x + 1; y < ids.size() && !found; ++y) {
        const auto i = static_cast<std::size_t>(ids[x]);
        const auto j = static_cast<std::size_t>(ids[y]);
        if (curve_mode) {
          const Edge& e = edges()[i];
          const Edge& g = edges()[j];
          if (e[0] == g[0] || e[0] == g[1] || e[1] == g[0] || e[1] == g[1]) continue;
          if (detail::segments_intersect2(vertices_[static_cast<std::size_t>(e[0])], vertices_[static_cast<std::size_t>(e[1])],
                                          vertices_[static_cast<std::size_t>(g[0])], vertices_[static_cast<std::size_t>(g[1])])) {
            found = "edges " + std::to_string(i) + " and " + std::to_string(j) + " cross";
          }
        } else {
          const Face& f = faces()[i];
          const Face& g = faces()[j];
          bool shared = false;
          for (int a : f)
            for (int b : g) shared = shared || a == b;
          if (shared) continue;
          const Point* fp[3] = {&vertices_[static_cast<std::size_t>(f[0])], &vertices_[static_cast<std::size_t>(f[1])], &vertices_[static_cast<std::size_t>(f[2])]};
          const Point* gp[3] = {&vertices_[static_cast<std::size_t>(g[0])], &vertices_[static_cast<std::size_t>(g[1])], &vertices_[static_cast<std::size_t>(g[2])]};
          bool hit = false;
          for (int e = 0; e < 3 && !hit; ++e) {
            hit = detail::segment_hits_triangle(*fp[e], *fp[(e + 1) % 3], *gp[0], *gp[1], *gp[2]) ||
                  detail::segment_hits_triangle(*gp[e], *gp[(e + 1) % 3], *fp[0], *fp[1], *fp[2]);
          }
          if (hit) found = "faces " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
        }
      }
    }
  });
  return found;
}

double min_element_quality(const DiscreteHypersurface& m) {
  if (m.dim() == 1) return m.min_edge_length() / m.mean_edge_length();
  double worst = 1.0;
  const auto& v = m.vertices();
  for (const Face& f : m.faces()) {
    const Point& a = v[static_cast<std::size_t>(f[0])];
    const Point& b = v[static_cast<std::size_t>(f[1])];
    const Point& c = v[static_cast<std::size_t>(f[2])];
    const double area2 = (b - a).cross(c - a).norm();
    const double sq = (b - a).squaredNorm() + (c - b).squaredNorm() + (a - c).squaredNorm();
    worst = std::min(worst, 2.0 * std::sqrt(3.0) * area2 / sq);
  }
  return worst;
}

}  // namespace ecf
