#ifndef FLATNORM_SADDLE_HPP
#define FLATNORM_SADDLE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "flatnorm/error.hpp"
#include "flatnorm/surface.hpp"

namespace flatnorm {

/// A flat geodesic segment between vertices, stored as the corner it leaves
/// from plus the ordered list of half-edges it crosses. `crossings[k]` is the
/// half-edge of the triangle being left.
struct SaddleConnection {
  int start = -1;
  int end = -1;
  int first = -1;  // outgoing half-edge whose corner contains the direction
  std::vector<int> crossings;
  Complex holonomy{};
  double length = 0.0;
};

struct EnumerateOptions {
  std::int64_t strip_budget = 10'000'000;
  int threads = 1;
};

namespace detail {

inline constexpr double kWedgeEps = 1e-12;
inline constexpr double kLengthSlack = 1e-12;

/// Holonomy in the closed upper half-plane, positive real axis included.
inline bool canonical_direction(Complex z) {
  const double tol = kWedgeEps * std::abs(z);
  if (z.imag() > tol) return true;
  if (z.imag() < -tol) return false;
  return z.real() > 0.0;
}

/// Distance from the origin to the part of segment [p, q] seen inside the
/// wedge (lo, hi).
inline double wedge_window_distance(Complex p, Complex q, Complex lo, Complex hi) {
  const Complex d = q - p;
  auto hit = [&](Complex ray, double fallback) {
    const double den = cross(ray, d);
    if (std::abs(den) <= kWedgeEps * std::abs(ray) * std::abs(d)) return fallback;
    return std::clamp(-cross(ray, p) / den, 0.0, 1.0);
  };
  double s0 = hit(lo, 0.0), s1 = hit(hi, 1.0);
  if (s0 > s1) std::swap(s0, s1);
  const Complex x0 = p + s0 * d, x1 = p + s1 * d;
  const Complex seg = x1 - x0;
  const double len2 = std::norm(seg);
  double t = len2 > 0.0 ? -dot(x0, seg) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(x0 + t * seg);
}

class StripSearch {
 public:
  StripSearch(const Surface& s, double max_length, std::atomic<std::int64_t>& strips, std::int64_t budget)
      : s_(s), m_(s.map()), max_len_(max_length * (1.0 + kLengthSlack)), strips_(strips), budget_(budget) {}

  std::vector<SaddleConnection> from_corner(int h) {
    out_.clear();
    first_ = h;
    const Complex a = s_.vec(h);
    const Complex b = -s_.vec(m_.prev(h));
    crossings_.clear();
    if (std::abs(a) <= max_len_) emit(a, m_.target(h));
    expand(m_.next(h), a, b, a, b);
    return std::move(out_);
  }

 private:
  void emit(Complex z, int end_vertex) {
    if (!canonical_direction(z)) return;
    SaddleConnection sc;
    sc.start = m_.origin(first_);
    sc.end = end_vertex;
    sc.first = first_;
    sc.crossings = crossings_;
    sc.holonomy = z;
    sc.length = std::abs(z);
    out_.push_back(std::move(sc));
  }

  // The open wedge (lo, hi) enters the next triangle across half-edge e, whose
  // developed endpoints are p = origin(e) (lo side) and q = target(e).
  void expand(int e, Complex p, Complex q, Complex lo, Complex hi) {
    if (strips_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
      throw FlatError(ErrorCode::BudgetExceeded, "strip budget exhausted; lower the length bound");
    }
    if (wedge_window_distance(p, q, lo, hi) > max_len_) return;
    const int g = m_.opp(e);
    const Complex c = p + s_.vec(m_.next(g));
    crossings_.push_back(e);
    const double cl = cross(lo, c), ch = cross(c, hi);
    const double rl = kWedgeEps * std::abs(lo) * std::abs(c);
    const double rh = kWedgeEps * std::abs(hi) * std::abs(c);
    if (cl > rl && ch > rh) {
      if (std::abs(c) <= max_len_) emit(c, m_.origin(m_.prev(g)));
      expand(m_.next(g), p, c, lo, c);
      expand(m_.prev(g), c, q, c, hi);
    } else if (cl <= rl) {
      expand(m_.prev(g), c, q, lo, hi);
    } else {
      expand(m_.next(g), p, c, lo, hi);
    }
    crossings_.pop_back();
  }

  const Surface& s_;
  const CombinatorialMap& m_;
  double max_len_;
  std::atomic<std::int64_t>& strips_;
  std::int64_t budget_;
  int first_ = -1;
  std::vector<int> crossings_;
  std::vector<SaddleConnection> out_;
};

inline void require_translation(const Surface& s) {
  if (!s.is_translation()) {
    throw FlatError(ErrorCode::NotTranslation, "operation needs a translation surface (use its double cover)");
  }
}

}  // namespace detail

/// All saddle connections of length <= max_length, each once, oriented with
/// holonomy in the closed upper half-plane. Connections with equal holonomy
/// but different crossing sequences are kept apart.
inline std::vector<SaddleConnection> enumerate_saddles(const Surface& s, double max_length,
                                                       const EnumerateOptions& opts = {}) {
  detail::require_translation(s);
  if (!(max_length > 0.0)) throw FlatError(ErrorCode::UsageError, "length bound must be positive");
  const int n = s.num_half_edges();
  std::vector<std::vector<SaddleConnection>> per_corner(n);
  std::atomic<std::int64_t> strips{0};
  std::atomic<int> next_corner{0};
  auto worker = [&]() {
    detail::StripSearch search(s, max_length, strips, opts.strip_budget);
    for (int h = next_corner++; h < n; h = next_corner++) per_corner[h] = search.from_corner(h);
  };
  const int threads = std::max(1, std::min(opts.threads, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        try {
          worker();
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          next_corner = n;
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<SaddleConnection> all;
  for (auto& v : per_corner) {
    for (auto& sc : v) all.push_back(std::move(sc));
  }
  std::stable_sort(all.begin(), all.end(), [](const SaddleConnection& x, const SaddleConnection& y) {
    return std::tie(x.length, x.start, x.first, x.crossings) < std::tie(y.length, y.start, y.first, y.crossings);
  });
  return all;
}

/// Develops `field` (vectors or cochain values) along the connection and
/// returns the end coordinate minus the start coordinate.
inline Complex develop_along(const Surface& s, const SaddleConnection& sc, std::span<const Complex> field) {
  const auto& m = s.map();
  if (static_cast<int>(field.size()) != m.size()) {
    throw FlatError(ErrorCode::CochainMismatch, "cochain indexed on a different triangulation");
  }
  if (sc.crossings.empty()) return field[sc.first];
  // origin coordinates of the current triangle's half-edges
  int cur = sc.first;
  Complex at_cur = 0.0;
  Complex at_next = field[cur];
  Complex at_prev = -field[m.prev(cur)];
  Complex apex{};
  for (int e : sc.crossings) {
    Complex p, q;
    if (e == cur) {
      p = at_cur, q = at_next;
    } else if (e == m.next(cur)) {
      p = at_next, q = at_prev;
    } else if (e == m.prev(cur)) {
      p = at_prev, q = at_cur;
    } else {
      throw FlatError(ErrorCode::CochainMismatch, "crossing sequence does not match the triangulation");
    }
    const int g = m.opp(e);
    apex = p + field[m.next(g)];
    cur = g;
    at_cur = q;
    at_next = p;
    at_prev = apex;
  }
  return apex;
}

/// Period of a cocycle along a saddle connection.
inline Complex period(const Surface& s, const SaddleConnection& sc, const Cochain& eta) {
  return develop_along(s, sc, eta.values);
}

}  // namespace flatnorm

#endif  // FLATNORM_SADDLE_HPP
