#ifndef FLATNORM_GALLERY_HPP
#define FLATNORM_GALLERY_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "flatnorm/error.hpp"
#include "flatnorm/linalg.hpp"
#include "flatnorm/surface.hpp"

namespace flatnorm::gallery {

/// A polygon with side gluings, cut into triangles by vertex-index triples.
/// Side k runs from points[k] to points[k+1]. Points past `boundary` (when
/// set) are interior marked points.
struct GluedPolygon {
  SurfaceKind kind = SurfaceKind::translation;
  std::vector<Complex> points;
  int boundary = 0;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::pair<int, int>> side_pairs;
};

/// Half-edge 3f+k of the result is side k of triangle f.
inline Surface build_polygon(const GluedPolygon& poly) {
  const int np = poly.boundary > 0 ? poly.boundary : static_cast<int>(poly.points.size());
  const int nf = static_cast<int>(poly.triangles.size());
  std::vector<Triangle> tris;
  std::vector<Complex> vecs;
  std::map<std::pair<int, int>, int> by_side;  // (from, to) point indices -> half-edge
  for (int f = 0; f < nf; ++f) {
    const auto& t = poly.triangles[f];
    tris.push_back({3 * f, 3 * f + 1, 3 * f + 2});
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      vecs.push_back(poly.points[b] - poly.points[a]);
      by_side[{a, b}] = 3 * f + k;
    }
  }
  std::map<int, int> glue;  // boundary half-edge -> partner
  std::map<int, int> glue_sign;
  for (const auto& [s, t] : poly.side_pairs) {
    const int hs = by_side.at({s, (s + 1) % np});
    const int ht = by_side.at({t, (t + 1) % np});
    const Complex vs = vecs[hs], vt = vecs[ht];
    const double tol = 1e-12 * std::abs(vs);
    int sign;
    if (std::abs(vs + vt) <= tol) {
      sign = 1;
    } else if (poly.kind == SurfaceKind::half_translation && std::abs(vs - vt) <= tol) {
      sign = -1;
    } else {
      throw FlatError(ErrorCode::EdgeVectorMismatch,
                      "sides " + std::to_string(s) + " and " + std::to_string(t) + " cannot be glued");
    }
    glue[hs] = ht;
    glue[ht] = hs;
    glue_sign[hs] = glue_sign[ht] = sign;
  }
  std::vector<EdgePair> pairs;
  std::vector<int> signs;
  std::vector<char> used(vecs.size(), 0);
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      const int h = 3 * f + k;
      if (used[h]) continue;
      const int a = poly.triangles[f][k], b = poly.triangles[f][(k + 1) % 3];
      int partner;
      int sign = 1;
      if (auto it = by_side.find({b, a}); it != by_side.end()) {
        partner = it->second;
      } else if (auto g = glue.find(h); g != glue.end()) {
        partner = g->second;
        sign = glue_sign.at(h);
      } else {
        throw FlatError(ErrorCode::UnpairedHalfEdge, "polygon side " + std::to_string(a) + " is not glued");
      }
      used[h] = used[partner] = 1;
      pairs.push_back({h, partner});
      signs.push_back(sign);
    }
  }
  return Surface::build(poly.kind, tris, pairs, vecs, signs);
}

inline Surface square_torus() {
  GluedPolygon p;
  p.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  p.triangles = {{0, 1, 2}, {0, 2, 3}};
  p.side_pairs = {{0, 2}, {1, 3}};
  return build_polygon(p);
}

/// Parallelogram spanned by 1 and w, cut along its long diagonal 1 + w.
inline Surface parallelogram_torus(Complex w = {0.1, 1.0}) {
  GluedPolygon p;
  p.points = {{0, 0}, {1, 0}, Complex(1, 0) + w, w};
  p.triangles = {{0, 1, 2}, {0, 2, 3}};
  p.side_pairs = {{0, 2}, {1, 3}};
  return build_polygon(p);
}

/// The same torus with a marked point at the centre, fanned into four
/// triangles, so that cocycles need not be linear.
inline Surface parallelogram_torus_marked(Complex w = {0.1, 1.0}) {
  GluedPolygon p;
  p.points = {{0, 0}, {1, 0}, Complex(1, 0) + w, w, 0.5 * (Complex(1, 0) + w)};
  p.boundary = 4;
  p.triangles = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  p.side_pairs = {{0, 2}, {1, 3}};
  return build_polygon(p);
}

/// Unit-side regular octagon, opposite sides identified, fanned from one corner.
inline Surface regular_octagon() {
  GluedPolygon p;
  Complex z = 0.0;
  for (int k = 0; k < 8; ++k) {
    p.points.push_back(z);
    z += std::polar(1.0, k * std::numbers::pi / 4.0);
  }
  for (int k = 1; k < 7; ++k) p.triangles.push_back({0, k, k + 1});
  for (int k = 0; k < 4; ++k) p.side_pairs.emplace_back(k, k + 4);
  return build_polygon(p);
}

/// Cylinder data attached by a builder: for every half-edge, the signed number
/// of times it crosses the core curve (upward = +1), and the core holonomy.
struct Cylinder {
  Complex core{};
  std::vector<int> crossing;
};

struct KwSurface {
  Surface surface;
  Cylinder cylinder;
  double eps = 0.0;
};

/// Unit square torus slit horizontally along [0, eps] with an eps-by-eps
/// cylinder glued between the banks of the slit. Genus 2, a single zero of
/// angle 6pi, shortest saddle connection eps.
inline KwSurface kw_surface(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw FlatError(ErrorCode::BadEpsilon, "eps must lie in (0, 1/2)");
  GluedPolygon p;
  // L-shaped polygon: the square plus the cylinder stacked on [0, eps] x [1, 1 + eps]
  p.points = {{0, 0}, {eps, 0}, {1, 0}, {1, 1}, {eps, 1}, {eps, 1 + eps}, {0, 1 + eps}, {0, 1}};
  p.triangles = {{0, 1, 7}, {1, 2, 3}, {1, 3, 4}, {1, 4, 7}, {7, 4, 5}, {7, 5, 6}};
  p.side_pairs = {{0, 5}, {1, 3}, {2, 7}, {4, 6}};
  KwSurface out{build_polygon(p), {}, eps};
  out.cylinder.core = Complex(eps, 0.0);
  out.cylinder.crossing.assign(out.surface.num_half_edges(), 0);
  // triangle 4 = (7,4,5): 4->5 up, 5->7 down; triangle 5 = (7,5,6): 7->5 up, 6->7 down
  out.cylinder.crossing[3 * 4 + 1] = 1;
  out.cylinder.crossing[3 * 4 + 2] = -1;
  out.cylinder.crossing[3 * 5 + 0] = 1;
  out.cylinder.crossing[3 * 5 + 2] = -1;
  return out;
}

/// Cocycle dual to the cylinder's core curve: each half-edge gets its signed
/// crossing count times the core holonomy. Adding it to omega performs one
/// full Dehn twist.
inline Cochain twist_cochain(const Surface& s, const Cylinder& cyl) {
  if (static_cast<int>(cyl.crossing.size()) != s.num_half_edges() || cyl.core == Complex(0.0, 0.0)) {
    throw FlatError(ErrorCode::NoSuchCylinder, "cylinder data does not belong to this triangulation");
  }
  Cochain c;
  c.values.resize(cyl.crossing.size());
  for (std::size_t h = 0; h < cyl.crossing.size(); ++h) c.values[h] = static_cast<double>(cyl.crossing[h]) * cyl.core;
  require_cocycle(s, c);
  return c;
}

/// A fixed member of the principal stratum Q(1,1,1,1): a 14-gon with integer
/// corners whose sides are paired by z -> +-z + c. Four cone points of angle
/// 3pi; area 91.
inline Surface principal_genus2() {
  GluedPolygon p;
  p.kind = SurfaceKind::half_translation;
  p.points = {{0, 0},  {3, -2}, {5, -3}, {7, 0},  {5, 2},  {7, 5},  {4, 8},
              {1, 10}, {-1, 11}, {-3, 8}, {-5, 6}, {-3, 4}, {-1, 6}, {-3, 3}};
  p.triangles = {{13, 0, 1}, {13, 1, 2}, {13, 2, 3}, {13, 3, 4},  {13, 4, 5},  {13, 5, 6},
                 {6, 7, 8},  {6, 8, 9},  {6, 9, 10}, {10, 11, 12}, {6, 10, 12}, {6, 12, 13}};
  p.side_pairs = {{9, 11}, {1, 7}, {2, 4}, {8, 12}, {5, 13}, {3, 10}, {0, 6}};
  return build_polygon(p);
}

namespace detail {

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Complex uniform_disk(std::mt19937_64& rng, double radius) {
  const double r = radius * std::sqrt(unit_uniform(rng));
  const double t = 2.0 * std::numbers::pi * unit_uniform(rng);
  return std::polar(r, t);
}

}  // namespace detail

/// Deterministic random cocycle: uniform values in the disk of the given
/// radius on a free set of edges, the rest solved from the triangle relations.
inline Cochain random_cochain(const Surface& s, std::uint64_t seed, double magnitude = 1.0) {
  const auto& m = s.map();
  const int ne = m.num_edges(), nf = m.num_faces();
  auto rel = linalg::zeros<linalg::Rational>(nf, ne);
  for (int f = 0; f < nf; ++f) {
    for (int h : m.triangle(f)) {
      const int e = m.edge(h);
      rel[f][e] += m.is_edge_rep(h) ? 1 : -s.sign(e);
    }
  }
  const auto rr = linalg::rref(rel);
  std::vector<char> pivot(ne, 0);
  for (auto c : rr.pivots) pivot[c] = 1;
  std::mt19937_64 rng(seed);
  std::vector<Complex> edge_val(ne, 0.0);
  for (int e = 0; e < ne; ++e) {
    if (!pivot[e]) edge_val[e] = detail::uniform_disk(rng, magnitude);
  }
  for (std::size_t r = 0; r < rr.rows.size(); ++r) {
    Complex v = 0.0;
    for (int e = 0; e < ne; ++e) {
      if (pivot[e] || rr.rows[r][e] == 0) continue;
      v -= static_cast<double>(rr.rows[r][e]) * edge_val[e];
    }
    edge_val[rr.pivots[r]] = v;
  }
  Cochain c;
  c.values.resize(m.size());
  for (int h = 0; h < m.size(); ++h) {
    const int e = m.edge(h);
    c.values[h] = m.is_edge_rep(h) ? edge_val[e] : -static_cast<double>(s.sign(e)) * edge_val[e];
  }
  return c;
}

struct ExampleSpec {
  std::string name;
  double eps = 0.1;
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"square-torus", "parallelogram-torus", "octagon", "kw",
                                              "principal-genus2"};
  return names;
}

inline Surface build_example(const ExampleSpec& spec) {
  if (spec.name == "square-torus") return square_torus();
  if (spec.name == "parallelogram-torus") return parallelogram_torus();
  if (spec.name == "octagon") return regular_octagon();
  if (spec.name == "kw") return kw_surface(spec.eps).surface;
  if (spec.name == "principal-genus2") return principal_genus2();
  throw FlatError(ErrorCode::UsageError, "unknown example '" + spec.name + "'");
}

}  // namespace flatnorm::gallery

#endif  // FLATNORM_GALLERY_HPP
