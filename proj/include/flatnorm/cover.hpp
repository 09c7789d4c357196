#ifndef FLATNORM_COVER_HPP
#define FLATNORM_COVER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <vector>

#include "flatnorm/error.hpp"
#include "flatnorm/linalg.hpp"
#include "flatnorm/surface.hpp"

namespace flatnorm {

/// Orientation double cover of a half-translation surface. Half-edge h of copy
/// c is numbered h + c*N; copy 1 carries negated vectors.
struct DoubleCover {
  Surface total;
  std::vector<int> proj;
  std::vector<int> tau;

  int base_size() const { return static_cast<int>(proj.size()) / 2; }

  /// Vertices of the total space fixed by the involution.
  std::vector<int> ramification_vertices() const {
    const auto& m = total.map();
    std::vector<int> out;
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (m.origin(tau[m.vertex_out(v).front()]) == v) out.push_back(v);
    }
    return out;
  }
};

inline DoubleCover double_cover(const Surface& base) {
  if (base.is_translation()) {
    throw FlatError(ErrorCode::AlreadySquare, "input is already a translation surface");
  }
  const auto& m = base.map();
  const int n = m.size();
  // the cover is connected iff the sign cocycle is nontrivial: walk faces
  // tracking the sheet and look for a face reached on both sheets
  {
    std::vector<int> sheet(m.num_faces(), -1);
    std::deque<int> q{0};
    sheet[0] = 0;
    bool mixed = false;
    while (!q.empty() && !mixed) {
      const int f = q.front();
      q.pop_front();
      for (int h : m.triangle(f)) {
        const int g = m.opp(h);
        const int want = base.edge_sign(h) == 1 ? sheet[f] : 1 - sheet[f];
        const int f2 = m.face(g);
        if (sheet[f2] == -1) {
          sheet[f2] = want;
          q.push_back(f2);
        } else if (sheet[f2] != want) {
          mixed = true;
          break;
        }
      }
    }
    if (!mixed) throw FlatError(ErrorCode::AlreadySquare, "quadratic differential is a global square");
  }

  std::vector<Triangle> tris;
  std::vector<Complex> vecs(2 * n);
  std::vector<EdgePair> pairs;
  for (int c = 0; c < 2; ++c) {
    for (int f = 0; f < m.num_faces(); ++f) {
      const auto t = m.triangle(f);
      tris.push_back({t[0] + c * n, t[1] + c * n, t[2] + c * n});
    }
    for (int h = 0; h < n; ++h) vecs[h + c * n] = c == 0 ? base.vec(h) : -base.vec(h);
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const int h = m.edge_half_edge(e), g = m.opp(h);
    for (int c = 0; c < 2; ++c) {
      const int c2 = base.sign(e) == 1 ? c : 1 - c;
      pairs.push_back({h + c * n, g + c2 * n});
    }
  }
  DoubleCover out{Surface::build(SurfaceKind::translation, tris, pairs, vecs, std::vector<int>(pairs.size(), 1)), {}, {}};
  out.proj.resize(2 * n);
  out.tau.resize(2 * n);
  for (int h = 0; h < 2 * n; ++h) {
    out.proj[h] = h % n;
    out.tau[h] = h < n ? h + n : h - n;
  }
  return out;
}

inline void require_cover_cochain(const DoubleCover& cover, const Cochain& eta) {
  if (static_cast<int>(eta.values.size()) != cover.total.num_half_edges()) {
    throw FlatError(ErrorCode::CochainMismatch, "cochain does not live on the cover");
  }
}

inline Cochain tau_pullback(const DoubleCover& cover, const Cochain& eta) {
  require_cover_cochain(cover, eta);
  Cochain out;
  out.values.resize(eta.values.size());
  for (std::size_t h = 0; h < eta.values.size(); ++h) out.values[h] = eta.values[cover.tau[h]];
  out.parity = eta.parity;
  return out;
}

inline Cochain project_anti_invariant(const DoubleCover& cover, const Cochain& eta) {
  const Cochain t = tau_pullback(cover, eta);
  Cochain out;
  out.values.resize(eta.values.size());
  for (std::size_t h = 0; h < eta.values.size(); ++h) out.values[h] = 0.5 * (eta.values[h] - t.values[h]);
  out.parity = Parity::anti_invariant;
  return out;
}

inline Cochain project_invariant(const DoubleCover& cover, const Cochain& eta) {
  const Cochain t = tau_pullback(cover, eta);
  Cochain out;
  out.values.resize(eta.values.size());
  for (std::size_t h = 0; h < eta.values.size(); ++h) out.values[h] = 0.5 * (eta.values[h] + t.values[h]);
  out.parity = Parity::invariant;
  return out;
}

/// Largest deviation from tau* eta = -eta.
inline double anti_invariance_defect(const DoubleCover& cover, const Cochain& eta) {
  const Cochain t = tau_pullback(cover, eta);
  double worst = 0.0;
  for (std::size_t h = 0; h < eta.values.size(); ++h) worst = std::max(worst, std::abs(t.values[h] + eta.values[h]));
  return worst;
}

/// Lifts a cochain on the base. A cocycle for the twisted gluing rule lifts
/// anti-invariantly (like the vectors themselves); a cocycle for the plain
/// rule lifts invariantly.
inline Cochain lift(const DoubleCover& cover, const Cochain& eta, Parity parity = Parity::anti_invariant) {
  const int n = cover.base_size();
  if (static_cast<int>(eta.values.size()) != n) {
    throw FlatError(ErrorCode::CochainMismatch, "cochain does not live on the base");
  }
  Cochain out;
  out.values.resize(2 * n);
  for (int h = 0; h < 2 * n; ++h) {
    const bool second = h >= n;
    out.values[h] = (second && parity != Parity::invariant) ? -eta.values[h % n] : eta.values[h % n];
  }
  out.parity = parity == Parity::invariant ? Parity::invariant : Parity::anti_invariant;
  require_cocycle(cover.total, out);
  return out;
}

/// Complex dimension of anti-invariant cocycles modulo anti-invariant
/// coboundaries, by exact rank computations.
inline int anti_invariant_dimension(const DoubleCover& cover) {
  using linalg::Integer;
  const auto& m = cover.total.map();
  const int ne = m.num_edges(), nf = m.num_faces(), nv = m.num_vertices();
  // edge e, with rep h: the involution sends it to edge(tau h) with orientation sign
  std::vector<int> tau_edge(ne), tau_sign(ne);
  for (int e = 0; e < ne; ++e) {
    const int th = cover.tau[m.edge_half_edge(e)];
    tau_edge[e] = m.edge(th);
    tau_sign[e] = m.is_edge_rep(th) ? 1 : -1;
  }
  // cocycles with tau* x = -x: triangle relations plus x_e + s_e x_{tau e} = 0
  auto sys = linalg::zeros<Integer>(nf + ne, ne);
  for (int f = 0; f < nf; ++f) {
    for (int h : m.triangle(f)) sys[f][m.edge(h)] += m.is_edge_rep(h) ? 1 : -1;
  }
  for (int e = 0; e < ne; ++e) {
    sys[nf + e][e] += 1;
    sys[nf + e][tau_edge[e]] += tau_sign[e];
  }
  const int cocycles = ne - static_cast<int>(linalg::rank(sys));

  // coboundaries of anti-invariant vertex functions f(tau v) = -f(v)
  std::vector<int> tau_vertex(nv);
  for (int v = 0; v < nv; ++v) tau_vertex[v] = m.origin(cover.tau[m.vertex_out(v).front()]);
  std::vector<std::vector<Integer>> gens;
  std::vector<char> done(nv, 0);
  for (int v = 0; v < nv; ++v) {
    if (done[v]) continue;
    done[v] = done[tau_vertex[v]] = 1;
    if (tau_vertex[v] == v) continue;  // anti-invariant functions vanish at fixed vertices
    std::vector<Integer> col(ne, 0);
    for (int e = 0; e < ne; ++e) {
      const int h = m.edge_half_edge(e);
      auto val = [&](int w) { return w == v ? 1 : (w == tau_vertex[v] ? -1 : 0); };
      col[e] = val(m.target(h)) - val(m.origin(h));
    }
    gens.push_back(std::move(col));
  }
  const int coboundaries = gens.empty() ? 0 : static_cast<int>(linalg::rank(gens));
  return cocycles - coboundaries;
}

}  // namespace flatnorm

#endif  // FLATNORM_COVER_HPP
