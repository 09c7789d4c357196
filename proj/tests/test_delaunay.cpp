#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flatnorm/delaunay.hpp"
#include "flatnorm/gallery.hpp"

using namespace flatnorm;

TEST(Delaunay, SquareTorusDiagonalIsCocircular) {
  const Surface s = gallery::square_torus();
  for (int h = 0; h < s.num_half_edges(); ++h) EXPECT_TRUE(is_delaunay(s, h));
  const auto d = delaunayize(s);
  EXPECT_EQ(d.report.flips_performed, 0);
  EXPECT_TRUE(d.report.all_delaunay);
}

TEST(Delaunay, ParallelogramFlipsLongDiagonal) {
  const Surface s = gallery::parallelogram_torus();
  int bad = 0;
  for (int e = 0; e < s.map().num_edges(); ++e) bad += is_delaunay(s, s.map().edge_half_edge(e)) ? 0 : 1;
  EXPECT_EQ(bad, 1);
  const auto d = delaunayize(s);
  EXPECT_EQ(d.report.flips_performed, 1);
  EXPECT_TRUE(d.report.all_delaunay);
  bool found = false;
  for (int h = 0; h < d.surface.num_half_edges(); ++h) {
    if (std::abs(d.surface.vec(h) - Complex(-0.9, 1.0)) < 1e-12) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Delaunay, IdempotentAndPreservesGeometry) {
  for (const Surface& s : {gallery::parallelogram_torus({0.7, 0.3}), gallery::regular_octagon(),
                           gallery::principal_genus2(), gallery::kw_surface(0.05).surface}) {
    const auto d = delaunayize(s);
    EXPECT_TRUE(d.report.all_delaunay);
    EXPECT_NEAR(area(d.surface), area(s), 1e-9 * area(s));
    const auto a0 = cone_angles(s), a1 = cone_angles(d.surface);
    ASSERT_EQ(a0.size(), a1.size());
    for (std::size_t k = 0; k < a0.size(); ++k) EXPECT_NEAR(a0[k].second, a1[k].second, 1e-9);
    EXPECT_EQ(delaunayize(d.surface).report.flips_performed, 0);
  }
}

TEST(Delaunay, CochainsFollowFlips) {
  const Surface s = gallery::regular_octagon();
  const Surface sheared = s.with_vectors([&] {
    std::vector<Complex> v(s.vectors().begin(), s.vectors().end());
    for (auto& z : v) z = Complex(z.real() + 1.3 * z.imag(), z.imag());
    return v;
  }());
  const Cochain w = omega_cochain(sheared);
  const Cochain r = gallery::random_cochain(sheared, 3);
  const std::vector<Cochain> carry{w, r};
  const auto d = delaunayize(sheared, carry);
  EXPECT_GT(d.report.flips_performed, 0);
  for (int h = 0; h < d.surface.num_half_edges(); ++h) {
    EXPECT_NEAR(std::abs(d.carried[0][h] - d.surface.vec(h)), 0.0, 1e-12);
  }
  EXPECT_LT(cocycle_residual(d.surface, d.carried[1]), 1e-12);
}

TEST(Systole, AnchorValues) {
  EXPECT_NEAR(systole(gallery::square_torus()), 1.0, 1e-12);
  EXPECT_NEAR(systole(gallery::regular_octagon()), 1.0, 1e-12);
  for (double eps : {0.1, 0.05, 0.025}) EXPECT_NEAR(systole(gallery::kw_surface(eps).surface), eps, 1e-9);
}

TEST(Systole, ScalesWithModulus) {
  const Surface o = gallery::regular_octagon();
  for (Complex c : {Complex(2.5, 0), std::polar(0.4, 1.0)}) {
    EXPECT_NEAR(systole(transform(o, c)), std::abs(c) * systole(o), 1e-12 * std::abs(c));
  }
}

TEST(Systole, DelaunayEdgesAreNoShorter) {
  for (const Surface& s : {gallery::parallelogram_torus(), gallery::regular_octagon(),
                           gallery::kw_surface(0.1).surface}) {
    const auto d = delaunayize(s);
    EXPECT_GE(d.report.min_edge_length, systole(s) - 1e-12);
  }
}

TEST(Circumradius, RightTriangle) {
  const Surface s = gallery::square_torus();
  EXPECT_NEAR(circumradius(s, 0), std::sqrt(2.0) / 2, 1e-15);
}
