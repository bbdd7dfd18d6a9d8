// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "local_quadric.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ecflow/errors.hpp"

namespace ecf::detail {

std::pair<double, double> LocalQuadric::principal_curvatures() const {
  const double w = std::sqrt(1.0 + d * d + e * e);
  Eigen::Matrix2d first;
  first << 1.0 + d * d, d * e, d * e, 1.0 + e * e;
  Eigen::Matrix2d second;
  second << 2.0 * a, b, b, 2.0 * c;
  second /= w;
  const Eigen::Matrix2d shape = first.inverse() * second;
  const double mean = 0.5 * shape.trace();
  const double gauss = shape.determinant();
  const double disc = std::sqrt(std::max(mean * mean - gauss, 0.0));
  // convex surfaces bend away from the outward normal, hence the sign flip
  return {-(mean + disc), -(mean - disc)};
}

LocalQuadric fit_local_quadric(const Point& p, const Point& initial_normal, const std::vector<Point>& ring,
                               std::size_t vertex) {
  double scale = 0.0;
  for (const Point& q : ring) scale += (q - p).norm();
  scale /= static_cast<double>(ring.size());
  if (!(scale > 0.0)) fail(ErrorCode::DegenerateElement, "collapsed neighbourhood at vertex " + std::to_string(vertex));

  LocalQuadric fit;
  fit.origin = p;
  fit.normal = initial_normal;
  for (int pass = 0; pass < 2; ++pass) {
    if (pass == 1) fit.normal = fit.normal_at_origin();
    const Point helper = std::abs(fit.normal.x()) < 0.9 ? Point::UnitX() : Point::UnitY();
    fit.t1 = fit.normal.cross(helper).normalized();
    fit.t2 = fit.normal.cross(fit.t1);

    Eigen::Matrix<double, 5, 5> ata = Eigen::Matrix<double, 5, 5>::Zero();
    Eigen::Matrix<double, 5, 1> atb = Eigen::Matrix<double, 5, 1>::Zero();
    for (const Point& q : ring) {
      const Point rel = (q - p) / scale;
      const double u = rel.dot(fit.t1);
      const double v = rel.dot(fit.t2);
      Eigen::Matrix<double, 5, 1> row;
      row << u * u, u * v, v * v, u, v;
      ata += row * row.transpose();
      atb += row * rel.dot(fit.normal);
    }
    Eigen::LDLT<Eigen::Matrix<double, 5, 5>> solver(ata);
    if (solver.info() != Eigen::Success || solver.rcond() < 1e-12) {
      fail(ErrorCode::DegenerateElement, "rank-deficient quadric fit at vertex " + std::to_string(vertex));
    }
    const Eigen::Matrix<double, 5, 1> coef = solver.solve(atb);
    fit.a = coef[0] / scale;
    fit.b = coef[1] / scale;
    fit.c = coef[2] / scale;
    fit.d = coef[3];
    fit.e = coef[4];
  }
  return fit;
}

std::vector<LocalQuadric> fit_vertex_quadrics(const DiscreteHypersurface& m) {
  const auto& v = m.vertices();
  const Topology& topo = m.topology();
  std::vector<Point> face_normals(topo.faces.size());
  for (std::size_t f = 0; f < topo.faces.size(); ++f) {
    const Face& t = topo.faces[f];
    face_normals[f] = (v[static_cast<std::size_t>(t[1])] - v[static_cast<std::size_t>(t[0])])
                          .cross(v[static_cast<std::size_t>(t[2])] - v[static_cast<std::size_t>(t[0])]);
    if (face_normals[f].squaredNorm() == 0.0) fail(ErrorCode::DegenerateElement, "zero-area face " + std::to_string(f));
  }
  std::vector<LocalQuadric> fits;
  fits.reserve(v.size());
  std::vector<Point> ring;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point n0 = Point::Zero();
    for (int f : topo.vertex_faces[i]) n0 += face_normals[static_cast<std::size_t>(f)];
    if (n0.squaredNorm() == 0.0) fail(ErrorCode::DegenerateElement, "undefined normal at vertex " + std::to_string(i));
    n0.normalize();
    ring.clear();
    for (int q : topo.two_ring[i]) ring.push_back(v[static_cast<std::size_t>(q)]);
    if (ring.size() < 5) fail(ErrorCode::DegenerateElement, "two-ring too small at vertex " + std::to_string(i));
    fits.push_back(fit_local_quadric(v[i], n0, ring, i));
  }
  return fits;
}

}  // namespace ecf::detail
