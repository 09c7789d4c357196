#ifndef FLATNORM_SURFACE_HPP
#define FLATNORM_SURFACE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flatnorm/error.hpp"

namespace flatnorm {

using Complex = std::complex<double>;

/// Im(conj(a) * b): positive when b lies counter-clockwise of a.
inline double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

enum class SurfaceKind { translation, half_translation };

using Triangle = std::array<int, 3>;
using EdgePair = std::array<int, 2>;

/// Triangulated combinatorial surface: half-edges with a face cycle `next`
/// (counter-clockwise inside each triangle) and an edge involution `opp`.
/// Faces and edges keep the order they were listed in.
class CombinatorialMap {
 public:
  CombinatorialMap() = default;

  CombinatorialMap(std::span<const Triangle> triangles, std::span<const EdgePair> pairs) {
    const int n = static_cast<int>(triangles.size()) * 3;
    next_.assign(n, -1);
    opp_.assign(n, -1);
    face_.assign(n, -1);
    edge_.assign(n, -1);
    for (int f = 0; f < static_cast<int>(triangles.size()); ++f) {
      const auto& t = triangles[f];
      for (int k = 0; k < 3; ++k) {
        const int h = t[k];
        if (h < 0 || h >= n || face_[h] != -1) {
          throw FlatError(ErrorCode::NonTriangleFace,
                          "triangle " + std::to_string(f) + " repeats or skips half-edge ids");
        }
        face_[h] = f;
        next_[h] = t[(k + 1) % 3];
      }
      face_rep_.push_back(t[0]);
    }
    for (int e = 0; e < static_cast<int>(pairs.size()); ++e) {
      const auto [a, b] = pairs[e];
      if (a < 0 || b < 0 || a >= n || b >= n || a == b || opp_[a] != -1 || opp_[b] != -1) {
        throw FlatError(ErrorCode::UnpairedHalfEdge, "bad pairing " + std::to_string(e));
      }
      opp_[a] = b;
      opp_[b] = a;
      edge_[a] = edge_[b] = e;
      edge_rep_.push_back(a);
    }
    for (int h = 0; h < n; ++h) {
      if (opp_[h] == -1) {
        throw FlatError(ErrorCode::UnpairedHalfEdge, "half-edge " + std::to_string(h) + " has no partner");
      }
    }
    check_connected();
    rebuild_vertices();
  }

  int size() const { return static_cast<int>(next_.size()); }
  int num_faces() const { return static_cast<int>(face_rep_.size()); }
  int num_edges() const { return static_cast<int>(edge_rep_.size()); }
  int num_vertices() const { return static_cast<int>(vertex_out_.size()); }

  int next(int h) const { return next_[h]; }
  int prev(int h) const { return next_[next_[h]]; }
  int opp(int h) const { return opp_[h]; }
  /// Counter-clockwise successor among the half-edges leaving origin(h).
  int rot(int h) const { return opp_[prev(h)]; }

  int face(int h) const { return face_[h]; }
  int edge(int h) const { return edge_[h]; }
  int face_half_edge(int f) const { return face_rep_[f]; }
  int edge_half_edge(int e) const { return edge_rep_[e]; }
  bool is_edge_rep(int h) const { return edge_rep_[edge_[h]] == h; }

  int origin(int h) const { return vertex_[h]; }
  int target(int h) const { return vertex_[next_[h]]; }
  /// Outgoing half-edges of v in counter-clockwise order.
  const std::vector<int>& vertex_out(int v) const { return vertex_out_[v]; }

  Triangle triangle(int f) const {
    const int h = face_rep_[f];
    return {h, next_[h], next_[next_[h]]};
  }

  /// Replaces the diagonal h of the quadrilateral formed by its two adjacent
  /// triangles with the other diagonal. Ids of h and opp(h) are reused.
  void flip(int h) {
    const int g = opp_[h];
    const int h1 = next_[h], h2 = next_[h1];
    const int g1 = next_[g], g2 = next_[g1];
    next_[h] = h2;
    next_[h2] = g1;
    next_[g1] = h;
    next_[g] = g2;
    next_[g2] = h1;
    next_[h1] = g;
    face_[g1] = face_[h];
    face_[h1] = face_[g];
    face_rep_[face_[h]] = h;
    face_rep_[face_[g]] = g;
    rebuild_vertices();
  }

 private:
  void check_connected() const {
    const int n = size();
    if (n == 0) throw FlatError(ErrorCode::NonTriangleFace, "no triangles");
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int h = stack.back();
      stack.pop_back();
      for (int nb : {next_[h], opp_[h]}) {
        if (!seen[nb]) {
          seen[nb] = 1;
          ++count;
          stack.push_back(nb);
        }
      }
    }
    if (count != n) throw FlatError(ErrorCode::Disconnected, "triangulation is not connected");
  }

  void rebuild_vertices() {
    const int n = size();
    vertex_.assign(n, -1);
    vertex_out_.clear();
    for (int h = 0; h < n; ++h) {
      if (vertex_[h] != -1) continue;
      const int v = static_cast<int>(vertex_out_.size());
      std::vector<int> out;
      int x = h;
      do {
        vertex_[x] = v;
        out.push_back(x);
        x = rot(x);
      } while (x != h);
      vertex_out_.push_back(std::move(out));
    }
  }

  std::vector<int> next_, opp_, face_, edge_, face_rep_, edge_rep_;
  std::vector<int> vertex_;
  std::vector<std::vector<int>> vertex_out_;
};

struct Vertex {
  double angle = 0.0;
  /// Zero order: angle/2pi - 1 for translation, angle/pi - 2 for half-translation.
  int order = 0;
  bool marked() const { return order == 0; }
};

namespace detail {
inline constexpr double kClosureTol = 1e-9;
inline constexpr double kConeTol = 1e-6;
}  // namespace detail

/// A flat surface given by a triangulation and the flat-chart displacement of
/// every half-edge. For half-translation surfaces each edge carries a gluing
/// sign s with vec(opp(h)) = -s * vec(h).
class Surface {
 public:
  Surface() = default;

  static Surface build(SurfaceKind kind, std::span<const Triangle> triangles,
                       std::span<const EdgePair> pairs, std::span<const Complex> vectors,
                       std::span<const int> signs = {}) {
    Surface s;
    s.kind_ = kind;
    s.map_ = CombinatorialMap(triangles, pairs);
    const int n = s.map_.size();
    const int ne = s.map_.num_edges();
    if (static_cast<int>(vectors.size()) != n) {
      throw FlatError(ErrorCode::UnpairedHalfEdge, "expected one vector per half-edge");
    }
    s.sign_.assign(ne, 1);
    if (!signs.empty()) {
      if (static_cast<int>(signs.size()) != ne) {
        throw FlatError(ErrorCode::ParseError, "expected one sign per edge");
      }
      for (int e = 0; e < ne; ++e) {
        if (signs[e] != 1 && signs[e] != -1) throw FlatError(ErrorCode::ParseError, "sign must be +1 or -1");
        if (kind == SurfaceKind::translation && signs[e] != 1) {
          throw FlatError(ErrorCode::ParseError, "translation surfaces have no -1 gluings");
        }
        s.sign_[e] = signs[e];
      }
    }
    s.vec_.assign(vectors.begin(), vectors.end());
    s.check_closure(s.vec_);
    for (int h = 0; h < n; ++h) {
      const int o = s.map_.opp(h);
      const Complex expected = -static_cast<double>(s.edge_sign(h)) * s.vec_[h];
      const double scale = std::max(std::abs(s.vec_[h]), std::abs(s.vec_[o]));
      if (std::abs(s.vec_[o] - expected) > detail::kClosureTol * scale) {
        throw FlatError(ErrorCode::EdgeVectorMismatch,
                        "half-edges " + std::to_string(h) + " and " + std::to_string(o) + " disagree");
      }
    }
    s.reclose();
    s.validate_geometry();
    return s;
  }

  SurfaceKind kind() const { return kind_; }
  bool is_translation() const { return kind_ == SurfaceKind::translation; }
  const CombinatorialMap& map() const { return map_; }
  int num_half_edges() const { return map_.size(); }

  Complex vec(int h) const { return vec_[h]; }
  std::span<const Complex> vectors() const { return vec_; }
  int sign(int e) const { return sign_[e]; }
  int edge_sign(int h) const { return sign_[map_.edge(h)]; }
  std::span<const int> signs() const { return sign_; }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  int euler_characteristic() const { return map_.num_vertices() - map_.num_edges() + map_.num_faces(); }
  int genus() const { return (2 - euler_characteristic()) / 2; }

  /// Interior angle of the corner at origin(h) in h's triangle.
  double corner_angle(int h) const {
    const Complex a = vec_[h];
    const Complex b = -vec_[map_.prev(h)];
    return std::atan2(cross(a, b), dot(a, b));
  }

  double triangle_area(int f) const {
    const int h = map_.face_half_edge(f);
    return 0.5 * cross(vec_[h], -vec_[map_.prev(h)]);
  }

  double longest_edge() const {
    double m = 0.0;
    for (const auto& v : vec_) m = std::max(m, std::abs(v));
    return m;
  }

  double shortest_edge() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : vec_) m = std::min(m, std::abs(v));
    return m;
  }

  /// Same combinatorics with new half-edge vectors; revalidates.
  Surface with_vectors(std::vector<Complex> vectors) const {
    Surface s = *this;
    s.vec_ = std::move(vectors);
    s.check_closure(s.vec_);
    s.reclose();
    s.validate_geometry();
    return s;
  }

  /// Flips edge h in place, carrying each complex field (vectors, cochains)
  /// along. Only meant for private working copies.
  void flip(int h, std::span<std::vector<Complex>*> fields = {}) {
    const int g = map_.opp(h);
    const double s = edge_sign(h);
    const int h1 = map_.next(h), h2 = map_.next(h1);
    const int g1 = map_.next(g);
    auto carry = [&](std::vector<Complex>& f) {
      // new h runs D -> C in h's chart: D = A + s*f(g1), C = A - f(h2)
      const Complex new_h = -(f[h2] + s * f[g1]);
      f[g1] *= s;
      f[h1] *= s;
      f[h] = new_h;
      f[g] = -s * new_h;
    };
    carry(vec_);
    for (auto* f : fields) carry(*f);
    const int e_g1 = map_.edge(g1), e_h1 = map_.edge(h1);
    sign_[e_g1] *= static_cast<int>(s);
    sign_[e_h1] *= static_cast<int>(s);
    map_.flip(h);
    compute_vertices();
  }

 private:
  void check_closure(std::span<const Complex> v) const {
    for (int f = 0; f < map_.num_faces(); ++f) {
      const auto t = map_.triangle(f);
      const Complex sum = v[t[0]] + v[t[1]] + v[t[2]];
      const double longest = std::max({std::abs(v[t[0]]), std::abs(v[t[1]]), std::abs(v[t[2]])});
      if (std::abs(sum) > detail::kClosureTol * longest) {
        throw FlatError(ErrorCode::TriangleNotClosed,
                        "triangle " + std::to_string(f) + " residual " + std::to_string(std::abs(sum)));
      }
    }
  }

  /// Averages each edge from its two half-edges, then removes the remaining
  /// closure residual by the minimum-norm edge correction.
  void reclose() {
    const int ne = map_.num_edges();
    const int nf = map_.num_faces();
    std::vector<Complex> edge_val(ne);
    for (int e = 0; e < ne; ++e) {
      const int h = map_.edge_half_edge(e);
      edge_val[e] = 0.5 * (vec_[h] - static_cast<double>(sign_[e]) * vec_[map_.opp(h)]);
    }
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(nf, ne);
    Eigen::VectorXd r_re(nf), r_im(nf);
    double worst = 0.0;
    for (int f = 0; f < nf; ++f) {
      Complex sum = 0.0;
      for (int h : map_.triangle(f)) {
        const int e = map_.edge(h);
        const double o = map_.is_edge_rep(h) ? 1.0 : -static_cast<double>(sign_[e]);
        c(f, e) += o;
        sum += o * edge_val[e];
      }
      r_re(f) = sum.real();
      r_im(f) = sum.imag();
      worst = std::max(worst, std::abs(sum));
    }
    if (worst > 0.0) {
      const Eigen::MatrixXd gram = c * c.transpose();
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
      const Eigen::VectorXd d_re = c.transpose() * cod.solve(r_re);
      const Eigen::VectorXd d_im = c.transpose() * cod.solve(r_im);
      for (int e = 0; e < ne; ++e) edge_val[e] -= Complex(d_re(e), d_im(e));
    }
    for (int h = 0; h < map_.size(); ++h) {
      const int e = map_.edge(h);
      vec_[h] = map_.is_edge_rep(h) ? edge_val[e] : -static_cast<double>(sign_[e]) * edge_val[e];
    }
  }

  void validate_geometry() {
    for (int f = 0; f < map_.num_faces(); ++f) {
      const auto t = map_.triangle(f);
      if (!(cross(vec_[t[0]], vec_[t[1]]) > 0.0)) {
        throw FlatError(ErrorCode::NegativeOrientation, "triangle " + std::to_string(f) + " is not positively oriented");
      }
    }
    compute_vertices();
  }

  void compute_vertices() {
    vertices_.clear();
    const double unit = is_translation() ? 2.0 * std::numbers::pi : std::numbers::pi;
    const int shift = is_translation() ? 1 : 2;
    for (int v = 0; v < map_.num_vertices(); ++v) {
      Vertex vx;
      for (int h : map_.vertex_out(v)) vx.angle += corner_angle(h);
      const double q = vx.angle / unit;
      const double k = std::round(q);
      if (std::abs(q - k) > detail::kConeTol || static_cast<int>(k) - shift < (is_translation() ? 0 : -1)) {
        throw FlatError(ErrorCode::BadConeAngle,
                        "vertex " + std::to_string(v) + " has cone angle " + std::to_string(vx.angle));
      }
      vx.order = static_cast<int>(k) - shift;
      vertices_.push_back(vx);
    }
  }

  SurfaceKind kind_ = SurfaceKind::translation;
  CombinatorialMap map_;
  std::vector<Complex> vec_;
  std::vector<int> sign_;
  std::vector<Vertex> vertices_;
};

inline double area(const Surface& s) {
  double a = 0.0;
  for (int f = 0; f < s.map().num_faces(); ++f) a += s.triangle_area(f);
  return a;
}

inline Surface transform(const Surface& s, Complex c) {
  if (c == Complex(0.0, 0.0)) throw FlatError(ErrorCode::ZeroScale, "transform by zero");
  std::vector<Complex> v(s.vectors().begin(), s.vectors().end());
  for (auto& z : v) z *= c;
  return s.with_vectors(std::move(v));
}

/// (vertex id, cone angle) for every vertex.
inline std::vector<std::pair<int, double>> cone_angles(const Surface& s) {
  std::vector<std::pair<int, double>> out;
  for (int v = 0; v < static_cast<int>(s.vertices().size()); ++v) out.emplace_back(v, s.vertices()[v].angle);
  return out;
}

// --- cochains -------------------------------------------------------------

enum class Parity { untyped, invariant, anti_invariant };

/// Complex value per half-edge obeying the same gluing rule as the surface
/// vectors; a cocycle when every triangle sums to zero.
struct Cochain {
  std::vector<Complex> values;
  Parity parity = Parity::untyped;

  Complex operator[](int h) const { return values[h]; }
};

inline Cochain operator*(Complex c, const Cochain& x) {
  Cochain out = x;
  for (auto& v : out.values) v *= c;
  return out;
}

inline Cochain operator+(const Cochain& x, const Cochain& y) {
  Cochain out = x;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += y.values[i];
  out.parity = x.parity == y.parity ? x.parity : Parity::untyped;
  return out;
}

inline Cochain operator-(const Cochain& x, const Cochain& y) { return x + Complex(-1.0) * y; }

inline Cochain omega_cochain(const Surface& s) {
  return Cochain{{s.vectors().begin(), s.vectors().end()}, Parity::untyped};
}

inline Cochain conj_omega_cochain(const Surface& s) {
  Cochain c = omega_cochain(s);
  for (auto& v : c.values) v = std::conj(v);
  return c;
}

/// Largest violation of either the gluing rule or triangle closure.
inline double cocycle_residual(const Surface& s, const Cochain& eta) {
  const auto& m = s.map();
  double worst = 0.0;
  for (int h = 0; h < m.size(); ++h) {
    worst = std::max(worst, std::abs(eta[m.opp(h)] + static_cast<double>(s.edge_sign(h)) * eta[h]));
  }
  for (int f = 0; f < m.num_faces(); ++f) {
    const auto t = m.triangle(f);
    worst = std::max(worst, std::abs(eta[t[0]] + eta[t[1]] + eta[t[2]]));
  }
  return worst;
}

/// Throws CochainMismatch unless eta is a cocycle on s's combinatorics.
inline void require_cocycle(const Surface& s, const Cochain& eta, double tol = 1e-9) {
  if (static_cast<int>(eta.values.size()) != s.num_half_edges()) {
    throw FlatError(ErrorCode::CochainMismatch, "cochain indexed on a different triangulation");
  }
  double scale = 0.0;
  for (const auto& v : eta.values) scale = std::max(scale, std::abs(v));
  if (cocycle_residual(s, eta) > tol * std::max(scale, 1.0)) {
    throw FlatError(ErrorCode::CochainMismatch, "values do not satisfy the cocycle condition");
  }
}

}  // namespace flatnorm

#endif  // FLATNORM_SURFACE_HPP
