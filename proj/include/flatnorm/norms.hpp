#ifndef FLATNORM_NORMS_HPP
#define FLATNORM_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "flatnorm/cover.hpp"
#include "flatnorm/delaunay.hpp"
#include "flatnorm/error.hpp"
#include "flatnorm/gallery.hpp"
#include "flatnorm/homology.hpp"
#include "flatnorm/saddle.hpp"
#include "flatnorm/surface.hpp"

namespace flatnorm {

inline constexpr double kDeformationCap = 1e9;

struct AGYResult {
  double value = 0.0;
  std::optional<SaddleConnection> certificate;  // on the Delaunay triangulation
  double cutoff = 0.0;
  bool stabilized = false;
  std::size_t connections = 0;
};

/// d/dt at t = 0 of the Beltrami coefficient of the real-affine map taking
/// the triangle (0, a, b) to (0, a + t alpha, b + t beta).
inline Complex beltrami_derivative(Complex a, Complex b, Complex alpha, Complex beta) {
  if (!(cross(a, b) > 0.0)) throw FlatError(ErrorCode::DegenerateTriangle, "triangle is not positively oriented");
  const Complex den = std::conj(a) / a - std::conj(b) / b;
  return (alpha / a - beta / b) / den;
}

/// Beltrami coefficient S/R of f(z) = Rz + S conj(z) with f(a) = A, f(b) = B.
inline Complex affine_beltrami(Complex a, Complex b, Complex A, Complex B) {
  const Complex det = a * std::conj(b) - b * std::conj(a);
  if (std::abs(det) == 0.0) throw FlatError(ErrorCode::DegenerateTriangle, "triangle is degenerate");
  const Complex R = (A * std::conj(b) - B * std::conj(a)) / det;
  const Complex S = (a * B - b * A) / det;
  return S / R;
}

inline Complex triangle_beltrami(const Surface& s, const Cochain& eta, int f) {
  const auto t = s.map().triangle(f);
  return beltrami_derivative(s.vec(t[0]), -s.vec(t[2]), eta[t[0]], -eta[t[2]]);
}

inline void require_same_size(const Surface& s, const Cochain& eta) {
  if (static_cast<int>(eta.values.size()) != s.num_half_edges()) {
    throw FlatError(ErrorCode::CochainMismatch, "cochain indexed on a different triangulation");
  }
}

/// L-infinity norm of the piecewise-constant Beltrami derivative.
inline double teich_upper(const Surface& s, const Cochain& eta) {
  require_same_size(s, eta);
  require_cocycle(s, eta);
  double best = 0.0;
  for (int f = 0; f < s.map().num_faces(); ++f) best = std::max(best, std::abs(triangle_beltrami(s, eta, f)));
  return best;
}

/// Pairing of the Beltrami derivative with the unit-norm differential dz^2,
/// at its optimal phase.
inline double teich_lower(const Surface& s, const Cochain& eta) {
  require_same_size(s, eta);
  require_cocycle(s, eta);
  Complex acc = 0.0;
  double total = 0.0;
  for (int f = 0; f < s.map().num_faces(); ++f) {
    const double a = s.triangle_area(f);
    acc += triangle_beltrami(s, eta, f) * a;
    total += a;
  }
  return std::abs(acc) / total;
}

/// max |period(eta)| / |holonomy| over saddle connections up to the cutoff.
/// A cutoff <= 0 selects twice the longest Delaunay edge.
inline AGYResult agy_norm(const Surface& s, const Cochain& eta, double cutoff = 0.0,
                          const EnumerateOptions& opts = {}) {
  detail::require_translation(s);
  require_same_size(s, eta);
  const Cochain carry[] = {eta};
  const auto d = delaunayize(s, carry);
  const Surface& ds = d.surface;
  const Cochain& de = d.carried[0];
  AGYResult out;
  out.cutoff = cutoff > 0.0 ? cutoff : 2.0 * ds.longest_edge();
  const auto scs = enumerate_saddles(ds, out.cutoff, opts);
  out.connections = scs.size();
  double half_best = 0.0;
  for (const auto& sc : scs) {
    const double ratio = std::abs(period(ds, sc, de)) / sc.length;
    if (!out.certificate || ratio > out.value) {
      out.value = ratio;
      out.certificate = sc;
    }
    if (sc.length <= 0.5 * out.cutoff) half_best = std::max(half_best, ratio);
  }
  out.stabilized = out.value - half_best <= 1e-12 * std::max(out.value, 1.0);
  return out;
}

/// First time t > 0 at which some triangle of vec + t*eta degenerates,
/// capped at kDeformationCap.
inline double max_deformation_time(const Surface& s, const Cochain& eta) {
  require_same_size(s, eta);
  double best = kDeformationCap;
  for (int f = 0; f < s.map().num_faces(); ++f) {
    const auto t = s.map().triangle(f);
    const Complex a = s.vec(t[0]), b = -s.vec(t[2]);
    const Complex al = eta[t[0]], be = -eta[t[2]];
    const double c0 = cross(a, b);
    const double c1 = cross(al, b) + cross(a, be);
    const double c2 = cross(al, be);
    const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
    auto take = [&](double r) {
      if (r > 0.0 && std::isfinite(r)) best = std::min(best, r);
    };
    if (std::abs(c2) <= 1e-14 * scale) {
      if (std::abs(c1) > 1e-14 * scale) take(-c0 / c1);
      continue;
    }
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < -1e-12 * c1 * c1) continue;
    disc = std::sqrt(std::max(disc, 0.0));
    // stable quadratic roots
    const double q = -0.5 * (c1 + std::copysign(disc, c1));
    if (q != 0.0) {
      take(q / c2);
      take(c0 / q);
    } else {
      take(std::sqrt(-c0 / c2));
    }
  }
  return best;
}

/// The surface with vectors vec + t*eta; the triangulation is kept.
inline Surface deform(const Surface& s, const Cochain& eta, double t) {
  require_same_size(s, eta);
  require_cocycle(s, eta);
  if (!(t >= 0.0)) throw FlatError(ErrorCode::DegenerateAtT, "deformation time must be nonnegative");
  std::vector<Complex> v(s.vectors().begin(), s.vectors().end());
  for (int h = 0; h < s.num_half_edges(); ++h) v[h] += t * eta[h];
  for (int f = 0; f < s.map().num_faces(); ++f) {
    const auto tri = s.map().triangle(f);
    if (!(cross(v[tri[0]], v[tri[1]]) > 0.0)) {
      throw FlatError(ErrorCode::DegenerateAtT, "triangle " + std::to_string(f) + " degenerates before t");
    }
  }
  try {
    return s.with_vectors(std::move(v));
  } catch (const FlatError& e) {
    throw FlatError(ErrorCode::DegenerateAtT, e.what());
  }
}

struct PropLowerResult {
  bool ok = true;
  double worst_ratio = 0.0;
  double bound = 0.0;
  double r = 0.0;
};

/// Checks |int beta| / |int omega| <= hodge_norm(beta) / r over connections up to L.
inline PropLowerResult prop_lower_check(const Surface& s, const Cochain& beta, double L,
                                        const EnumerateOptions& opts = {}) {
  detail::require_translation(s);
  PropLowerResult out;
  const auto basis = h1_basis(s);
  out.r = 0.5 * systole(s);
  out.bound = hodge_norm(s, basis, beta) / out.r;
  for (const auto& sc : enumerate_saddles(s, L, opts)) {
    out.worst_ratio = std::max(out.worst_ratio, std::abs(period(s, sc, beta)) / sc.length);
  }
  out.ok = out.worst_ratio <= out.bound * (1.0 + 1e-12);
  return out;
}

inline PropLowerResult prop_lower_check(const DoubleCover& cover, const Cochain& beta, double L,
                                        const EnumerateOptions& opts = {}) {
  return prop_lower_check(cover.total, beta, L, opts);
}

struct CompareOptions {
  double cutoff = 0.0;
  EnumerateOptions enumerate;
  double tol = 1e-9;
};

struct CompareReport {
  double scale = 1.0;  // applied so that area(omega) = 2
  double area = 0.0;
  int genus = 0;
  int flips = 0;
  double systole = 0.0;
  double r = 0.0;
  AGYResult agy;
  double teich_upper = 0.0;
  double teich_lower = 0.0;
  bool lower_constant_check = false;
  bool upper_constant_check = false;
  std::optional<bool> hodge_bound_check;
  std::optional<double> hodge_ratio;
  bool lower_advisory = false;
  bool upper_advisory = false;
  std::vector<std::string> warnings;

  double lower_constant() const { return r / std::numbers::sqrt2 * agy.value; }
  double upper_constant() const { return 8.0 / (std::sqrt(std::numbers::pi) * r) * agy.value; }

  /// True when every non-advisory check passes.
  bool passed() const {
    if (!lower_advisory && !lower_constant_check) return false;
    if (!upper_advisory && !upper_constant_check) return false;
    if (hodge_bound_check && !*hodge_bound_check) return false;
    return true;
  }
};

namespace detail {

/// Brings a cochain to the translation surface `total`: lifts base cochains
/// and projects cover cochains to the -1 eigenspace.
inline Cochain to_total(const Surface& input, const std::optional<DoubleCover>& cover, const Cochain& c,
                        double tol, std::vector<std::string>& warnings, bool& anti) {
  anti = true;
  if (!cover) {
    require_same_size(input, c);
    return c;
  }
  if (static_cast<int>(c.values.size()) == input.num_half_edges()) return lift(*cover, c);
  require_cover_cochain(*cover, c);
  double mag = 0.0;
  for (const auto& v : c.values) mag = std::max(mag, std::abs(v));
  if (anti_invariance_defect(*cover, c) > tol * std::max(mag, 1.0)) {
    warnings.push_back("NotAntiInvariant: cochain projected to the -1 eigenspace; checks are advisory");
    anti = false;
  }
  return project_anti_invariant(*cover, c);
}

}  // namespace detail

inline CompareReport compare(const Surface& input, const Cochain& eta, const std::optional<Cochain>& beta = {},
                             const CompareOptions& opts = {}) {
  CompareReport rep;
  std::optional<DoubleCover> cover;
  if (!input.is_translation()) cover = double_cover(input);
  const Surface& total = cover ? cover->total : input;

  bool anti_eta = true, anti_beta = true;
  Cochain e = detail::to_total(input, cover, eta, opts.tol, rep.warnings, anti_eta);
  std::optional<Cochain> b;
  if (beta) b = detail::to_total(input, cover, *beta, opts.tol, rep.warnings, anti_beta);
  require_cocycle(total, e);

  rep.scale = std::sqrt(2.0 / area(total));
  const Surface scaled = transform(total, rep.scale);
  std::vector<Cochain> carry{rep.scale * e};
  if (b) carry.push_back(rep.scale * *b);
  const auto d = delaunayize(scaled, carry);
  const Surface& s = d.surface;
  const Cochain& de = d.carried[0];
  rep.area = area(s);
  rep.genus = s.genus();
  rep.flips = d.report.flips_performed;
  rep.systole = systole(s);
  rep.r = 0.5 * rep.systole;
  rep.agy = agy_norm(s, de, opts.cutoff, opts.enumerate);
  rep.teich_upper = teich_upper(s, de);
  rep.teich_lower = teich_lower(s, de);
  rep.lower_constant_check = rep.teich_upper >= rep.lower_constant() - opts.tol;
  rep.upper_constant_check = rep.teich_lower <= rep.upper_constant() + opts.tol;
  if (!anti_eta) rep.lower_advisory = rep.upper_advisory = true;
  if (rep.teich_upper <= opts.tol * std::max(rep.agy.value, 1.0) && rep.agy.value > opts.tol) {
    // holomorphic directions lie in the kernel of the projection to Teichmuller space
    rep.lower_advisory = true;
    rep.warnings.push_back("HolomorphicDirection: Beltrami derivative vanishes; lower check is advisory");
  }
  if (b) {
    const auto basis = h1_basis(s);
    const double hb = hodge_norm(s, basis, d.carried[1]);
    const double hw = hodge_norm(s, basis, omega_cochain(s));
    rep.hodge_ratio = hb / hw;
    rep.hodge_bound_check = rep.teich_upper >= *rep.hodge_ratio - opts.tol;
    if (!anti_beta) rep.hodge_bound_check = std::nullopt;
  }
  return rep;
}

struct KwScanRow {
  double eps = 0.0;
  CompareReport report;
};

inline std::vector<KwScanRow> kw_scan(const std::vector<double>& eps_list, const CompareOptions& opts = {}) {
  std::vector<KwScanRow> rows;
  for (double eps : eps_list) {
    const auto kw = gallery::kw_surface(eps);
    rows.push_back({eps, compare(kw.surface, gallery::twist_cochain(kw.surface, kw.cylinder), std::nullopt, opts)});
  }
  return rows;
}

}  // namespace flatnorm

#endif  // FLATNORM_NORMS_HPP
