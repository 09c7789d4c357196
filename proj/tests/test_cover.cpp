#include <gtest/gtest.h>

#include <cmath>

#include "flatnorm/cover.hpp"
#include "flatnorm/gallery.hpp"
#include "flatnorm/homology.hpp"

using namespace flatnorm;

namespace {

// 2x1 rectangle folded into a pillowcase: four cone points of angle pi
Surface pillowcase() {
  gallery::GluedPolygon p;
  p.kind = SurfaceKind::half_translation;
  p.points = {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}};
  p.triangles = {{0, 1, 4}, {0, 4, 5}, {1, 2, 3}, {1, 3, 4}};
  p.side_pairs = {{0, 1}, {3, 4}, {2, 5}};
  return gallery::build_polygon(p);
}

}  // namespace

TEST(DoubleCover, PrincipalExampleHasGenusFive) {
  const Surface base = gallery::principal_genus2();
  const DoubleCover c = double_cover(base);
  EXPECT_TRUE(c.total.is_translation());
  EXPECT_EQ(c.total.genus(), 5);
  EXPECT_EQ(c.ramification_vertices().size(), 4u);
  EXPECT_NEAR(area(c.total), 2 * area(base), 1e-12 * area(base));
  EXPECT_EQ(h1_rank(c.total), 10);
}

TEST(DoubleCover, PillowcaseCoverIsTorus) {
  const Surface base = pillowcase();
  EXPECT_EQ(base.genus(), 0);
  ASSERT_EQ(base.vertices().size(), 4u);
  for (const auto& v : base.vertices()) EXPECT_NEAR(v.angle, std::numbers::pi, 1e-12);
  const DoubleCover c = double_cover(base);
  EXPECT_EQ(c.total.genus(), 1);
  EXPECT_EQ(c.ramification_vertices().size(), 4u);
}

TEST(DoubleCover, SquaresAreRefused) {
  for (const Surface& s : {gallery::square_torus(), gallery::regular_octagon()}) {
    try {
      double_cover(s);
      FAIL();
    } catch (const FlatError& e) {
      EXPECT_EQ(e.code(), ErrorCode::AlreadySquare);
    }
    // the same data declared half-translation with trivial signs
    const Surface h = Surface::build(SurfaceKind::half_translation,
                                     [&] {
                                       std::vector<Triangle> t;
                                       for (int f = 0; f < s.map().num_faces(); ++f) t.push_back(s.map().triangle(f));
                                       return t;
                                     }(),
                                     [&] {
                                       std::vector<EdgePair> p;
                                       for (int e = 0; e < s.map().num_edges(); ++e) {
                                         const int h0 = s.map().edge_half_edge(e);
                                         p.push_back({h0, s.map().opp(h0)});
                                       }
                                       return p;
                                     }(),
                                     s.vectors(), s.signs());
    EXPECT_THROW(double_cover(h), FlatError);
  }
}

TEST(DoubleCover, InvolutionAndProjection) {
  const DoubleCover c = double_cover(gallery::principal_genus2());
  const int n = c.total.num_half_edges();
  for (int h = 0; h < n; ++h) {
    EXPECT_NE(c.tau[h], h);
    EXPECT_EQ(c.tau[c.tau[h]], h);
    EXPECT_EQ(c.proj[c.tau[h]], c.proj[h]);
  }
  const Cochain w = omega_cochain(c.total);
  const Cochain tw = tau_pullback(c, w);
  for (int h = 0; h < n; ++h) EXPECT_EQ(tw[h], -w[h]);
  const Cochain wb = conj_omega_cochain(c.total);
  const Cochain twb = tau_pullback(c, wb);
  for (int h = 0; h < n; ++h) EXPECT_EQ(twb[h], -wb[h]);
}

TEST(DoubleCover, Projections) {
  const DoubleCover c = double_cover(gallery::principal_genus2());
  const Cochain w = omega_cochain(c.total);
  EXPECT_EQ(project_anti_invariant(c, w).values, w.values);
  const Cochain r = gallery::random_cochain(c.total, 11);
  const Cochain p = project_anti_invariant(c, r);
  EXPECT_EQ(anti_invariance_defect(c, p), 0.0);
  EXPECT_LT(cocycle_residual(c.total, p), 1e-12);
  const Cochain inv = project_invariant(c, r);
  for (const auto& z : project_anti_invariant(c, inv).values) EXPECT_EQ(std::abs(z), 0.0);
  const Cochain base = gallery::random_cochain(gallery::principal_genus2(), 5);
  const Cochain up = lift(c, base);
  EXPECT_EQ(anti_invariance_defect(c, up), 0.0);
}

TEST(DoubleCover, AntiInvariantDimension) {
  EXPECT_EQ(anti_invariant_dimension(double_cover(gallery::principal_genus2())), 6);
  EXPECT_EQ(anti_invariant_dimension(double_cover(pillowcase())), 2);
}

TEST(DoubleCover, BilinearOracleUpstairs) {
  const DoubleCover c = double_cover(gallery::principal_genus2());
  const auto b = h1_basis(c.total);
  const auto p = periods(c.total, b, omega_cochain(c.total));
  EXPECT_NEAR(hodge_norm(p) * hodge_norm(p), area(c.total), 1e-9 * area(c.total));
}
