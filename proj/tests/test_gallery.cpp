#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flatnorm/cover.hpp"
#include "flatnorm/delaunay.hpp"
#include "flatnorm/gallery.hpp"

using namespace flatnorm;

TEST(Gallery, AllExamplesBuild) {
  for (const auto& name : gallery::example_names()) {
    const Surface s = gallery::build_example({name, 0.1, 0});
    EXPECT_GT(area(s), 0.0) << name;
  }
  EXPECT_THROW(gallery::build_example({"klein-bottle", 0.1, 0}), FlatError);
}

TEST(Gallery, SquareTorusVectors) {
  const Surface s = gallery::square_torus();
  EXPECT_EQ(s.vec(0), Complex(1, 0));
  EXPECT_EQ(s.vec(1), Complex(0, 1));
  EXPECT_EQ(s.vec(2), Complex(-1, -1));
}

TEST(Gallery, KwSurfaceShape) {
  for (double eps : {0.1, 0.05, 0.025}) {
    const auto kw = gallery::kw_surface(eps);
    const Surface& s = kw.surface;
    EXPECT_EQ(s.genus(), 2);
    ASSERT_EQ(s.vertices().size(), 1u);
    EXPECT_NEAR(s.vertices()[0].angle, 6 * std::numbers::pi, 1e-9);
    // unit square plus an eps-by-eps cylinder
    EXPECT_NEAR(area(s), 1 + eps * eps, 1e-12);
  }
  for (double bad : {0.0, -0.1, 0.5, 0.7}) {
    try {
      gallery::kw_surface(bad);
      FAIL() << bad;
    } catch (const FlatError& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadEpsilon);
    }
  }
}

TEST(Gallery, KwSpectrumRegression) {
  // frozen: two horizontal slit banks, the vertical crossing, then the
  // diagonals across the cylinder
  const double expected[] = {1, 1, 1, std::sqrt(2.0), std::sqrt(2.0), std::sqrt(5.0), std::sqrt(5.0)};
  for (double eps : {0.1, 0.05, 0.025}) {
    const Surface s = gallery::kw_surface(eps).surface;
    const auto scs = enumerate_saddles(s, 3 * eps);
    ASSERT_EQ(scs.size(), std::size(expected)) << eps;
    for (std::size_t k = 0; k < scs.size(); ++k) EXPECT_NEAR(scs[k].length / eps, expected[k], 1e-9);
  }
}

TEST(Gallery, TwistCochainPeriods) {
  const double eps = 0.05;
  const auto kw = gallery::kw_surface(eps);
  const Cochain tw = gallery::twist_cochain(kw.surface, kw.cylinder);
  EXPECT_LT(cocycle_residual(kw.surface, tw), 1e-15);
  bool saw_vertical = false;
  for (const auto& sc : enumerate_saddles(kw.surface, 1.0)) {
    const Complex p = period(kw.surface, sc, tw);
    if (std::abs(sc.holonomy - Complex(0, eps)) < 1e-12) {
      EXPECT_NEAR(std::abs(p - eps), 0.0, 1e-12);
      saw_vertical = true;
    }
    if (std::abs(sc.holonomy - Complex(1, 0)) < 1e-12 || std::abs(sc.holonomy - Complex(0, 1)) < 1e-12) {
      EXPECT_NEAR(std::abs(p), 0.0, 1e-12);  // disjoint from the cylinder
    }
  }
  EXPECT_TRUE(saw_vertical);
  gallery::Cylinder wrong = kw.cylinder;
  wrong.crossing.pop_back();
  try {
    gallery::twist_cochain(kw.surface, wrong);
    FAIL();
  } catch (const FlatError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSuchCylinder);
  }
}

TEST(Gallery, PrincipalExample) {
  const Surface s = gallery::principal_genus2();
  EXPECT_FALSE(s.is_translation());
  EXPECT_EQ(s.genus(), 2);
  EXPECT_DOUBLE_EQ(area(s), 91.0);
  const DoubleCover c = double_cover(s);
  EXPECT_EQ(c.total.genus(), 5);
  EXPECT_NEAR(area(c.total), 2 * area(s), 1e-12 * area(s));
}

TEST(Gallery, RandomCochainIsDeterministicCocycle) {
  for (const Surface& s : {gallery::regular_octagon(), gallery::principal_genus2(), gallery::kw_surface(0.1).surface}) {
    const Cochain a = gallery::random_cochain(s, 17, 0.3), b = gallery::random_cochain(s, 17, 0.3);
    EXPECT_EQ(a.values, b.values);
    EXPECT_NE(gallery::random_cochain(s, 18, 0.3).values, a.values);
    EXPECT_LT(cocycle_residual(s, a), 1e-12);
  }
}
