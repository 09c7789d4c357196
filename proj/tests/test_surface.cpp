#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flatnorm/gallery.hpp"
#include "flatnorm/io.hpp"
#include "flatnorm/surface.hpp"

using namespace flatnorm;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

json torus_doc() {
  return json::parse(R"({
    "kind": "translation",
    "triangles": [[0, 1, 2], [3, 4, 5]],
    "opposite": [[0, 3], [1, 4], [2, 5]],
    "vectors": {"0": [1, 0], "1": [0, 1], "2": [-1, -1],
                "3": [-1, 0], "4": [0, -1], "5": [1, 1]}
  })");
}

ErrorCode code_of(const json& doc) {
  try {
    io::surface_from_json(doc);
  } catch (const FlatError& e) {
    return e.code();
  }
  ADD_FAILURE() << "document was accepted";
  return ErrorCode::UsageError;
}

}  // namespace

TEST(BuildSurface, UnitSquareTorusDocument) {
  const Surface s = io::surface_from_json(torus_doc());
  EXPECT_EQ(s.genus(), 1);
  ASSERT_EQ(s.vertices().size(), 1u);
  EXPECT_NEAR(s.vertices()[0].angle, 2 * kPi, 1e-12);
  EXPECT_TRUE(s.vertices()[0].marked());
  EXPECT_DOUBLE_EQ(area(s), 1.0);
}

TEST(BuildSurface, NegatedVectorIsNotClosed) {
  auto doc = torus_doc();
  doc["vectors"]["0"] = json::array({-1, 0});
  EXPECT_EQ(code_of(doc), ErrorCode::TriangleNotClosed);
}

TEST(BuildSurface, StructuralErrors) {
  auto doc = torus_doc();
  doc["triangles"][0] = json::array({0, 1});
  EXPECT_EQ(code_of(doc), ErrorCode::NonTriangleFace);

  doc = torus_doc();
  doc["triangles"][1] = json::array({3, 4, 4});
  EXPECT_EQ(code_of(doc), ErrorCode::NonTriangleFace);

  doc = torus_doc();
  doc["opposite"].erase(2);
  EXPECT_EQ(code_of(doc), ErrorCode::UnpairedHalfEdge);

  // clockwise triangles
  doc = torus_doc();
  doc["triangles"] = json::parse("[[0, 2, 1], [3, 5, 4]]");
  EXPECT_EQ(code_of(doc), ErrorCode::NegativeOrientation);

  doc = torus_doc();
  doc["kind"] = "spherical";
  EXPECT_EQ(code_of(doc), ErrorCode::ParseError);
}

TEST(BuildSurface, SmallClosureResidualIsRedistributed) {
  auto doc = torus_doc();
  doc["vectors"]["2"] = json::array({-1 - 3e-10, -1});
  doc["vectors"]["5"] = json::array({1 + 3e-10, 1});
  const Surface s = io::surface_from_json(doc);
  for (int f = 0; f < 2; ++f) {
    const auto t = s.map().triangle(f);
    EXPECT_LT(std::abs(s.vec(t[0]) + s.vec(t[1]) + s.vec(t[2])), 1e-15);
  }
  EXPECT_NEAR(area(s), 1.0, 1e-9);
}

TEST(BuildSurface, RegularOctagonIsGenusTwoWithOneDoubleZero) {
  const Surface s = gallery::regular_octagon();
  EXPECT_EQ(s.genus(), 2);
  ASSERT_EQ(s.vertices().size(), 1u);
  // corner-angle oracle: the octagon's eight interior angles of 3pi/4
  EXPECT_NEAR(s.vertices()[0].angle, 8 * 3 * kPi / 4, 1e-12);
  EXPECT_EQ(s.vertices()[0].order, 2);
}

TEST(Area, ClosedForms) {
  EXPECT_DOUBLE_EQ(area(gallery::square_torus()), 1.0);
  EXPECT_NEAR(area(gallery::regular_octagon()), 2 * (1 + std::sqrt(2.0)), 1e-12);
}

TEST(Transform, RotationAndScaling) {
  const Surface t = gallery::square_torus();
  const Surface r = transform(t, {0, 1});
  EXPECT_NEAR(std::abs(r.vec(0) - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(area(r), 1.0, 1e-15);
  EXPECT_NEAR(area(transform(t, 2.0)), 4.0, 1e-14);

  const Surface o = gallery::regular_octagon();
  EXPECT_NEAR(area(transform(o, std::sqrt(2.0 / area(o)))), 2.0, 1e-12);

  try {
    transform(t, 0.0);
    FAIL();
  } catch (const FlatError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroScale);
  }
}

TEST(Transform, AreaScalesByModulusSquared) {
  const Surface s = gallery::principal_genus2();
  for (Complex c : {Complex(2, 0), std::polar(1.0, kPi / 7), Complex(0, 0.3), Complex(-1.7, 0.4)}) {
    EXPECT_NEAR(area(transform(s, c)), std::norm(c) * area(s), 1e-12 * std::norm(c) * area(s));
  }
}

TEST(ConeAngles, GalleryValues) {
  auto ang = cone_angles(gallery::square_torus());
  ASSERT_EQ(ang.size(), 1u);
  EXPECT_NEAR(ang[0].second, 2 * kPi, 1e-12);

  ang = cone_angles(gallery::principal_genus2());
  ASSERT_EQ(ang.size(), 4u);
  for (const auto& [v, a] : ang) EXPECT_NEAR(a, 3 * kPi, 1e-9) << "vertex " << v;
}

TEST(Invariants, EulerCharacteristicMatchesZeroOrders) {
  for (const Surface& s : {gallery::square_torus(), gallery::regular_octagon(), gallery::kw_surface(0.1).surface,
                           gallery::principal_genus2(), gallery::parallelogram_torus()}) {
    int total = 0;
    for (const auto& v : s.vertices()) total += v.order;
    const int g = s.genus();
    EXPECT_EQ(s.euler_characteristic(), 2 - 2 * g);
    EXPECT_EQ(total, s.is_translation() ? 2 * g - 2 : 4 * g - 4);
  }
}

TEST(Invariants, DocumentRoundTripIsExact) {
  for (const Surface& s : {gallery::regular_octagon(), gallery::principal_genus2(), gallery::kw_surface(0.05).surface}) {
    const json doc = io::surface_to_json(s);
    const Surface r = io::surface_from_json(doc);
    EXPECT_EQ(io::surface_to_json(r)["triangles"], doc["triangles"]);
    EXPECT_EQ(io::surface_to_json(r)["opposite"], doc["opposite"]);
    for (int h = 0; h < s.num_half_edges(); ++h) EXPECT_LE(std::abs(r.vec(h) - s.vec(h)), 1e-15);
    for (int e = 0; e < s.map().num_edges(); ++e) EXPECT_EQ(r.sign(e), s.sign(e));
  }
}

TEST(Cochain, OmegaAndConjugateAreCocycles) {
  const Surface s = gallery::principal_genus2();
  EXPECT_LT(cocycle_residual(s, omega_cochain(s)), 1e-12);
  EXPECT_LT(cocycle_residual(s, conj_omega_cochain(s)), 1e-12);
  Cochain bad = omega_cochain(s);
  bad.values[0] += 1.0;
  EXPECT_THROW(require_cocycle(s, bad), FlatError);
  bad.values.pop_back();
  EXPECT_THROW(require_cocycle(s, bad), FlatError);
}

TEST(Cochain, DocumentRoundTrip) {
  const Surface s = gallery::regular_octagon();
  const Cochain c = gallery::random_cochain(s, 7);
  const Cochain r = io::cochain_from_json(io::cochain_to_json(c), s.num_half_edges());
  EXPECT_EQ(r.values, c.values);
}
