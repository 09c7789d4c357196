#ifndef FLATNORM_HOMOLOGY_HPP
#define FLATNORM_HOMOLOGY_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "flatnorm/error.hpp"
#include "flatnorm/linalg.hpp"
#include "flatnorm/saddle.hpp"
#include "flatnorm/surface.hpp"

namespace flatnorm {

/// Integer 1-chain: one coefficient per edge, relative to the edge's
/// representative half-edge.
using Chain = std::vector<long long>;

/// A_i . B_j = delta_ij, all other pairings zero.
struct SymplecticBasis {
  std::vector<Chain> a;
  std::vector<Chain> b;
  int genus() const { return static_cast<int>(a.size()); }
};

struct PeriodVector {
  std::vector<Complex> a;
  std::vector<Complex> b;
};

namespace detail {

inline linalg::Matrix<linalg::Integer> boundary1(const CombinatorialMap& m) {
  auto d = linalg::zeros<linalg::Integer>(m.num_vertices(), m.num_edges());
  for (int e = 0; e < m.num_edges(); ++e) {
    const int h = m.edge_half_edge(e);
    d[m.target(h)][e] += 1;
    d[m.origin(h)][e] -= 1;
  }
  return d;
}

inline linalg::Matrix<linalg::Integer> boundary2(const CombinatorialMap& m) {
  auto d = linalg::zeros<linalg::Integer>(m.num_edges(), m.num_faces());
  for (int f = 0; f < m.num_faces(); ++f) {
    for (int h : m.triangle(f)) d[m.edge(h)][f] += m.is_edge_rep(h) ? 1 : -1;
  }
  return d;
}

/// Unit traversals of a chain as half-edges.
inline std::vector<int> traversals(const CombinatorialMap& m, const Chain& c) {
  std::vector<int> out;
  for (int e = 0; e < m.num_edges(); ++e) {
    const int h = m.edge_half_edge(e);
    for (long long k = 0; k < std::llabs(c[e]); ++k) out.push_back(c[e] > 0 ? h : m.opp(h));
  }
  return out;
}

/// Signed crossings, per half-edge, of the closed curve obtained by pushing
/// cycle `c` off the vertices to its right.
inline std::vector<long long> right_pushoff(const CombinatorialMap& m, const Chain& c) {
  const auto trav = traversals(m, c);
  std::vector<std::vector<int>> incoming(m.num_vertices()), outgoing(m.num_vertices());
  for (int h : trav) {
    outgoing[m.origin(h)].push_back(h);
    incoming[m.target(h)].push_back(h);
  }
  std::vector<long long> lambda(m.size(), 0);
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (incoming[v].size() != outgoing[v].size()) {
      throw FlatError(ErrorCode::RankMismatch, "chain is not a cycle");
    }
    for (std::size_t k = 0; k < incoming[v].size(); ++k) {
      const int back = m.opp(incoming[v][k]);
      const int out = outgoing[v][k];
      if (out == back) continue;
      for (int x = m.rot(back); x != out; x = m.rot(x)) {
        lambda[x] += 1;
        lambda[m.opp(x)] -= 1;
      }
    }
  }
  return lambda;
}

}  // namespace detail

/// Algebraic intersection number of two integer cycles.
inline long long intersection(const CombinatorialMap& m, const Chain& x, const Chain& y) {
  const auto lambda = detail::right_pushoff(m, y);
  long long total = 0;
  for (int h : detail::traversals(m, x)) total += lambda[h];
  return total;
}

/// Rank of H_1 from exact boundary ranks; throws RankMismatch unless it is 2g.
inline int h1_rank(const Surface& s) {
  const auto& m = s.map();
  const int r1 = static_cast<int>(linalg::rank(detail::boundary1(m)));
  const int r2 = static_cast<int>(linalg::rank(detail::boundary2(m)));
  const int rank = m.num_edges() - r1 - r2;
  if (rank != 2 * s.genus()) {
    throw FlatError(ErrorCode::RankMismatch, "H1 rank " + std::to_string(rank) + " but genus " + std::to_string(s.genus()));
  }
  return rank;
}

/// Integer symplectic basis of H_1 built from a tree-cotree decomposition and
/// reduced by integer symplectic Gram-Schmidt.
inline SymplecticBasis h1_basis(const Surface& s) {
  using linalg::Integer;
  const auto& m = s.map();
  const int rank = h1_rank(s);
  const int nv = m.num_vertices(), ne = m.num_edges(), nf = m.num_faces();

  // primal spanning tree, parent pointers as half-edges pointing at the root
  std::vector<char> in_tree(ne, 0);
  std::vector<int> parent_he(nv, -1);
  std::vector<char> seen(nv, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int h : m.vertex_out(v)) {
      const int w = m.target(h);
      if (seen[w]) continue;
      seen[w] = 1;
      in_tree[m.edge(h)] = 1;
      parent_he[w] = m.opp(h);  // from w back towards v
      queue.push_back(w);
    }
  }
  // dual spanning tree through edges outside the primal tree
  std::vector<char> in_cotree(ne, 0);
  std::vector<char> fseen(nf, 0);
  std::deque<int> fq{0};
  fseen[0] = 1;
  while (!fq.empty()) {
    const int f = fq.front();
    fq.pop_front();
    for (int h : m.triangle(f)) {
      if (in_tree[m.edge(h)]) continue;
      const int g = m.face(m.opp(h));
      if (fseen[g]) continue;
      fseen[g] = 1;
      in_cotree[m.edge(h)] = 1;
      fq.push_back(g);
    }
  }
  auto path_to_root = [&](int v, Chain& c, long long sgn) {
    while (parent_he[v] != -1) {
      const int h = parent_he[v];
      c[m.edge(h)] += sgn * (m.is_edge_rep(h) ? 1 : -1);
      v = m.target(h);
    }
  };
  std::vector<Chain> loops;
  for (int e = 0; e < ne; ++e) {
    if (in_tree[e] || in_cotree[e]) continue;
    Chain c(ne, 0);
    const int h = m.edge_half_edge(e);
    c[e] += 1;
    path_to_root(m.target(h), c, 1);
    path_to_root(m.origin(h), c, -1);
    loops.push_back(std::move(c));
  }
  if (static_cast<int>(loops.size()) != rank) {
    throw FlatError(ErrorCode::RankMismatch, "tree-cotree produced " + std::to_string(loops.size()) + " loops");
  }

  const int n = rank;
  linalg::Matrix<Integer> form = linalg::zeros<Integer>(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) form[i][j] = intersection(m, loops[i], loops[j]);
  }
  using Vec = std::vector<Integer>;
  auto pair = [&](const Vec& x, const Vec& y) {
    Integer t = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n; ++j) t += x[i] * form[i][j] * y[j];
    }
    return t;
  };
  auto axpy = [&](Vec& y, const Integer& k, const Vec& x) {
    for (int i = 0; i < n; ++i) y[i] += k * x[i];
  };
  std::vector<Vec> rest;
  for (int i = 0; i < n; ++i) {
    Vec u(n, 0);
    u[i] = 1;
    rest.push_back(std::move(u));
  }
  std::vector<Vec> as, bs;
  while (!rest.empty()) {
    Vec a = rest.front();
    rest.erase(rest.begin());
    // Euclid on the pairings with `a` until some partner pairs to +-1
    int partner = -1;
    while (true) {
      int smallest = -1;
      Integer best = 0;
      for (int j = 0; j < static_cast<int>(rest.size()); ++j) {
        const Integer p = pair(a, rest[j]);
        if (p == 0) continue;
        if (smallest == -1 || abs(p) < best) {
          smallest = j;
          best = abs(p);
        }
      }
      if (smallest == -1) throw FlatError(ErrorCode::RankMismatch, "intersection form is degenerate");
      if (best == 1) {
        partner = smallest;
        break;
      }
      const Integer ps = pair(a, rest[smallest]);
      bool reduced = false;
      for (int j = 0; j < static_cast<int>(rest.size()); ++j) {
        if (j == smallest) continue;
        const Integer p = pair(a, rest[j]);
        if (p == 0) continue;
        axpy(rest[j], -(p / ps), rest[smallest]);
        reduced = true;
      }
      if (!reduced) throw FlatError(ErrorCode::RankMismatch, "intersection form is not unimodular");
    }
    Vec b = rest[partner];
    rest.erase(rest.begin() + partner);
    if (pair(a, b) < 0) {
      for (auto& x : b) x = -x;
    }
    for (auto& c : rest) {
      const Integer cb = pair(c, b), ca = pair(c, a);
      axpy(c, -cb, a);
      axpy(c, ca, b);
    }
    as.push_back(std::move(a));
    bs.push_back(std::move(b));
  }
  auto to_chain = [&](const Vec& coeffs) {
    std::vector<Integer> acc(ne, 0);
    for (int i = 0; i < n; ++i) {
      if (coeffs[i] == 0) continue;
      for (int e = 0; e < ne; ++e) acc[e] += coeffs[i] * loops[i][e];
    }
    Chain c(ne);
    for (int e = 0; e < ne; ++e) {
      if (abs(acc[e]) > std::numeric_limits<long long>::max() / 2) {
        throw FlatError(ErrorCode::RankMismatch, "chain coefficient overflow");
      }
      c[e] = static_cast<long long>(acc[e]);
    }
    return c;
  };
  SymplecticBasis out;
  for (std::size_t k = 0; k < as.size(); ++k) {
    out.a.push_back(to_chain(as[k]));
    out.b.push_back(to_chain(bs[k]));
  }
  return out;
}

/// Dimension of the space of cocycles relative to the vertex set. For
/// translation surfaces this is checked against 2g + |V| - 1.
inline int cocycle_space_dim(const Surface& s) {
  const auto& m = s.map();
  auto rel = linalg::zeros<linalg::Integer>(m.num_faces(), m.num_edges());
  for (int f = 0; f < m.num_faces(); ++f) {
    for (int h : m.triangle(f)) {
      const int e = m.edge(h);
      rel[f][e] += m.is_edge_rep(h) ? 1 : -s.sign(e);
    }
  }
  const int dim = m.num_edges() - static_cast<int>(linalg::rank(rel));
  if (s.is_translation() && dim != 2 * s.genus() + m.num_vertices() - 1) {
    throw FlatError(ErrorCode::RankMismatch, "cocycle dimension " + std::to_string(dim));
  }
  return dim;
}

inline Complex chain_period(const Surface& s, const Chain& c, const Cochain& eta) {
  Complex t = 0.0;
  for (int e = 0; e < s.map().num_edges(); ++e) {
    if (c[e] != 0) t += static_cast<double>(c[e]) * eta[s.map().edge_half_edge(e)];
  }
  return t;
}

inline PeriodVector periods(const Surface& s, const SymplecticBasis& basis, const Cochain& eta) {
  detail::require_translation(s);
  require_cocycle(s, eta);
  PeriodVector p;
  for (const auto& c : basis.a) p.a.push_back(chain_period(s, c, eta));
  for (const auto& c : basis.b) p.b.push_back(chain_period(s, c, eta));
  return p;
}

/// (i/2) sum_k (a_k(x) conj(b_k(y)) - b_k(x) conj(a_k(y))): the L2 product of
/// two holomorphic forms with these periods.
inline Complex hermitian_pairing(const PeriodVector& x, const PeriodVector& y) {
  Complex t = 0.0;
  for (std::size_t k = 0; k < x.a.size(); ++k) t += x.a[k] * std::conj(y.b[k]) - x.b[k] * std::conj(y.a[k]);
  return Complex(0.0, 0.5) * t;
}

/// Hodge norm of a cochain asserted to carry the periods of a holomorphic form.
inline double hodge_norm(const PeriodVector& p) {
  const Complex self = hermitian_pairing(p, p);
  double scale = 0.0;
  for (std::size_t k = 0; k < p.a.size(); ++k) scale += std::abs(p.a[k]) * std::abs(p.b[k]);
  if (self.real() < -1e-9 * std::max(scale, 1.0)) {
    throw FlatError(ErrorCode::NegativePairing, "self-pairing " + std::to_string(self.real()) + " is negative");
  }
  return std::sqrt(std::max(0.0, self.real()));
}

inline double hodge_norm(const Surface& s, const SymplecticBasis& basis, const Cochain& beta) {
  return hodge_norm(periods(s, basis, beta));
}

}  // namespace flatnorm

#endif  // FLATNORM_HOMOLOGY_HPP
