#ifndef FLATNORM_DELAUNAY_HPP
#define FLATNORM_DELAUNAY_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "flatnorm/error.hpp"
#include "flatnorm/saddle.hpp"
#include "flatnorm/surface.hpp"

namespace flatnorm {

struct DelaunayReport {
  int flips_performed = 0;
  bool all_delaunay = false;
  double min_edge_length = 0.0;
  std::vector<double> circumradii;  // per triangle
};

struct DelaunayResult {
  Surface surface;
  DelaunayReport report;
  std::vector<Cochain> carried;  // input cochains rewritten on the new triangulation
};

namespace detail {

/// Positive when d lies strictly inside the circle through a, b, c (a, b, c
/// counter-clockwise).
inline double incircle(Complex a, Complex b, Complex c, Complex d) {
  const Complex p = a - d, q = b - d, r = c - d;
  const double pp = std::norm(p), qq = std::norm(q), rr = std::norm(r);
  return p.real() * (q.imag() * rr - qq * r.imag()) - p.imag() * (q.real() * rr - qq * r.real()) +
         pp * (q.real() * r.imag() - q.imag() * r.real());
}

/// The quadrilateral around edge h developed with origin(h) at 0:
/// A = 0, B = end of h, C = apex of h's triangle, D = apex across h.
struct Quad {
  Complex a, b, c, d;
};

inline Quad develop_quad(const Surface& s, int h) {
  const auto& m = s.map();
  const int g = m.opp(h);
  const double sg = s.edge_sign(h);
  Quad q;
  q.a = 0.0;
  q.b = s.vec(h);
  q.c = -s.vec(m.prev(h));
  q.d = sg * s.vec(m.next(g));
  return q;
}

}  // namespace detail

inline double circumradius(const Surface& s, int f) {
  const auto t = s.map().triangle(f);
  const Complex a = s.vec(t[0]), b = s.vec(t[1]), c = s.vec(t[2]);
  const double twice_area = cross(a, b);
  if (!(twice_area > 0.0)) throw FlatError(ErrorCode::DegenerateTriangle, "triangle " + std::to_string(f));
  return std::abs(a) * std::abs(b) * std::abs(c) / (2.0 * twice_area);
}

/// Empty-circumdisk test for the edge carrying half-edge h. Cocircular
/// configurations (|det| <= 1e-12 * scale^4) count as Delaunay.
inline bool is_delaunay(const Surface& s, int h) {
  const auto& m = s.map();
  const int g = m.opp(h);
  if (!(s.triangle_area(m.face(h)) > 0.0) || !(s.triangle_area(m.face(g)) > 0.0)) {
    throw FlatError(ErrorCode::DegenerateTriangle, "edge " + std::to_string(m.edge(h)));
  }
  const auto q = detail::develop_quad(s, h);
  const double scale = std::max({std::abs(q.b), std::abs(q.c), std::abs(q.d), std::abs(q.b - q.c),
                                 std::abs(q.b - q.d)});
  const double det = detail::incircle(q.a, q.b, q.c, q.d);
  return det <= 1e-12 * std::pow(scale, 4);
}

inline bool is_convex_quad(const Surface& s, int h) {
  const auto q = detail::develop_quad(s, h);
  const double sa = cross(q.d - q.c, q.a - q.c);
  const double sb = cross(q.d - q.c, q.b - q.c);
  return (sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0);
}

inline DelaunayReport delaunay_report(const Surface& s, int flips) {
  DelaunayReport r;
  r.flips_performed = flips;
  r.all_delaunay = true;
  for (int e = 0; e < s.map().num_edges(); ++e) {
    if (!is_delaunay(s, s.map().edge_half_edge(e))) r.all_delaunay = false;
  }
  r.min_edge_length = s.shortest_edge();
  for (int f = 0; f < s.map().num_faces(); ++f) r.circumradii.push_back(circumradius(s, f));
  return r;
}

/// Flips non-Delaunay edges until every edge passes is_delaunay. The input is
/// untouched; `carry` cochains are transported to the final triangulation.
inline DelaunayResult delaunayize(const Surface& input, std::span<const Cochain> carry = {}) {
  DelaunayResult out{input, {}, {carry.begin(), carry.end()}};
  Surface& s = out.surface;
  for (const auto& c : out.carried) require_cocycle(input, c);
  std::vector<std::vector<Complex>*> fields;
  for (auto& c : out.carried) fields.push_back(&c.values);

  const long long ne = s.map().num_edges();
  const long long budget = 50 * ne * ne;
  int flips = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < ne; ++e) {
      const int h = s.map().edge_half_edge(e);
      if (is_delaunay(s, h)) continue;
      // reflex quadrilaterals are never flipped
      if (!is_convex_quad(s, h)) continue;
      s.flip(h, fields);
      ++flips;
      changed = true;
      if (flips > budget) throw FlatError(ErrorCode::FlipLimitExceeded, std::to_string(flips) + " flips");
    }
  }
  out.report = delaunay_report(s, flips);
  return out;
}

/// Length of the shortest saddle connection (the quantity 2r).
inline double systole(const Surface& s) {
  const auto d = delaunayize(s);
  const double bound = d.surface.shortest_edge();
  const auto scs = enumerate_saddles(d.surface, bound);
  double best = bound;
  for (const auto& sc : scs) best = std::min(best, sc.length);
  return best;
}

}  // namespace flatnorm

#endif  // FLATNORM_DELAUNAY_HPP
