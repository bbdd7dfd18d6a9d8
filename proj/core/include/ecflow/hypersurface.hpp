// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ecf {

/// Points always live in R^3; closed curves (n = 1) are kept in the z = 0
/// plane so that every module can share one vector type.
using Point = Eigen::Vector3d;
using Face = std::array<int, 3>;
using Edge = std::array<int, 2>;

/// Connectivity shared by every frame of a trajectory. Built once and never
/// mutated; hypersurfaces hold it through a shared_ptr.
struct Topology {
  int n = 1;
  std::size_t vertex_count = 0;
  std::vector<Face> faces;                      // n == 2 only
  std::vector<Edge> edges;                      // unique undirected edges
  std::vector<std::array<int, 2>> edge_faces;   // n == 2: the two faces of each edge
  std::vector<std::vector<int>> neighbors;      // one-ring, sorted
  std::vector<std::vector<int>> vertex_faces;   // n == 2
  std::vector<std::vector<int>> two_ring;       // n == 2, excludes the vertex itself

  static std::shared_ptr<const Topology> closed_chain(std::size_t count);
  /// Throws InvalidMesh unless every edge is shared by exactly two
  /// consistently oriented faces.
  static std::shared_ptr<const Topology> closed_surface(std::size_t count, std::vector<Face> faces);
};

enum class Validation {
  None,   // trust the caller (intermediate Runge-Kutta stages)
  Basic,  // finite coordinates, non-degenerate elements, positive enclosed volume
  Full,   // Basic plus a mesh-scale self-intersection sweep
};

class DiscreteHypersurface {
 public:
  static DiscreteHypersurface curve(std::vector<Point> vertices, Validation level = Validation::Full);
  static DiscreteHypersurface surface(std::vector<Point> vertices, std::vector<Face> faces,
                                      Validation level = Validation::Full);

  /// Same connectivity, new vertex positions.
  DiscreteHypersurface with_vertices(std::vector<Point> vertices, Validation level = Validation::Full) const;

  int dim() const noexcept { return topo_->n; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<Face>& faces() const noexcept { return topo_->faces; }
  const std::vector<Edge>& edges() const noexcept { return topo_->edges; }
  const Topology& topology() const noexcept { return *topo_; }
  const std::shared_ptr<const Topology>& shared_topology() const noexcept { return topo_; }

  /// Area (n = 1) or volume (n = 2) by the divergence theorem.
  double enclosed_volume() const;
  double min_edge_length() const;
  double max_edge_length() const;
  double mean_edge_length() const;
  Point vertex_centroid() const;
  Point bbox_min() const;
  Point bbox_max() const;
  double bbox_diagonal() const;

  void validate(Validation level) const;
  /// Human-readable description of the first self-intersection found, if any.
  std::optional<std::string> find_self_intersection() const;

 private:
  DiscreteHypersurface(std::vector<Point> vertices, std::shared_ptr<const Topology> topo)
      : vertices_(std::move(vertices)), topo_(std::move(topo)) {}

  std::vector<Point> vertices_;
  std::shared_ptr<const Topology> topo_;
};

/// Quality of the worst element in (0, 1]: for curves the shortest edge over
/// the mean edge, for surfaces 4 sqrt(3) area / sum of squared edge lengths.
double min_element_quality(const DiscreteHypersurface& m);

}  // namespace ecf
