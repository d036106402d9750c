#include <doctest.h>

#include <algorithm>

#include "curvcx/curvature.hpp"
#include "curvcx/errors.hpp"
#include "curvcx/generators.hpp"

using namespace curvcx;

namespace {

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("classification of polygon angle data") {
    CHECK(coxeter_classify({2, 3, 5}).geometry == Geometry::spherical);
    CHECK(coxeter_classify({2, 3, 6}).geometry == Geometry::euclidean);
    CHECK(coxeter_classify({2, 4, 4}).geometry == Geometry::euclidean);
    CHECK(coxeter_classify({3, 3, 3}).geometry == Geometry::euclidean);
    CHECK(coxeter_classify({2, 3, 7}).geometry == Geometry::hyperbolic);
    CHECK(coxeter_classify({2, 2, 2, 2}).geometry == Geometry::euclidean);
    CHECK(coxeter_classify({2, 2, 2, 3}).geometry == Geometry::hyperbolic);
    CHECK(coxeter_classify({2, 2, 2, 2, 2}).geometry == Geometry::hyperbolic);
    CHECK_THROWS_AS(coxeter_classify({2, 3}), PreconditionError);
    CHECK_THROWS_AS(coxeter_classify({1, 3, 3}), PreconditionError);

    CoxeterClass c = coxeter_classify({2, 3, 7});
    CHECK(c.vertex_degrees == std::vector<int>{4, 6, 14});
    CHECK(c.face == Rational(1, 4) + Rational(1, 6) + Rational(1, 14) - Rational(1, 2));
    CHECK_FALSE(c.regular_constant.has_value());
    // Geometry follows the sign of the face curvature.
    for (int r = 2; r <= 7; ++r)
      for (int s = r; s <= 7; ++s)
        for (int t = s; t <= 7; ++t) {
          CoxeterClass x = coxeter_classify({r, s, t});
          Geometry expected = x.face > 0 ? Geometry::spherical : x.face == 0 ? Geometry::euclidean : Geometry::hyperbolic;
          CHECK(x.geometry == expected);
        }
    CHECK(coxeter_classify({4, 4, 4, 4}).regular_constant == Rational(8 + 4 - 16, 32));
    CHECK(to_string(Geometry::hyperbolic) == "hyperbolic");
  }

  TEST_CASE("Coxeter triangle complexes match their classification") {
    for (int r = 2; r <= 6; ++r)
      for (int s = r; s <= 6; ++s)
        for (int t = s; t <= 6; ++t) {
          CoxeterClass c = coxeter_classify({r, s, t});
          CAPTURE(r);
          CAPTURE(s);
          CAPTURE(t);
          if (c.geometry == Geometry::spherical) {
            CHECK_THROWS_AS(gen_coxeter_triangle(r, s, t, 2), PreconditionError);
            continue;
          }
          Structure x = gen_coxeter_triangle(r, s, t, 2);
          const Apartment& A = x.apartments.at(0);
          std::vector<Rational> corners;
          std::vector<int> degrees;
          for (VertexId v : x.complex->face_vertices(0)) {
            corners.push_back(corner_curvature(A, v, 0));
            degrees.push_back(static_cast<int>(x.complex->vertex_degree(v)));
          }
          std::sort(degrees.begin(), degrees.end());
          CHECK(degrees == c.vertex_degrees);
          CHECK(sorted(corners) == sorted(c.corner));
          CHECK(face_curvature(A, 0) == c.face);
        }
  }

  TEST_CASE("Gauss-Bonnet on the solids") {
    for (SphericalKind k : {SphericalKind::tetrahedron, SphericalKind::cube, SphericalKind::octahedron,
                            SphericalKind::dodecahedron, SphericalKind::icosahedron}) {
      CHECK(gauss_bonnet_sum(*gen_spherical(k).complex) == 2);
    }
    for (int n = 3; n <= 7; ++n) {
      CHECK(gauss_bonnet_sum(*gen_spherical(SphericalKind::prism, n).complex) == 2);
      CHECK(gauss_bonnet_sum(*gen_spherical(SphericalKind::antiprism, n).complex) == 2);
    }
    CHECK_THROWS(gauss_bonnet_sum(*gen_regular_tessellation(4, 4, 2).complex));
    CHECK(gauss_bonnet_sum(*gen_spherical(SphericalKind::cube).complex) == 6 * Rational(1, 3));
    CurvatureReport p5 = curvature_report(gen_spherical(SphericalKind::prism, 5), 0, 3);
    CHECK(p5.faces.size() == 10);
    CHECK(p5.faces_positive);
  }

  TEST_CASE("report on the heptagonal tiling") {
    Structure s = gen_regular_tessellation(7, 3, 3);
    CurvatureReport r = curvature_report(s, 0, 3);
    REQUIRE_FALSE(r.corners.empty());
    for (const auto& c : r.corners) CHECK(c.kappa == Rational(-1, 42));
    CHECK(r.all_negative);
    CHECK(r.all_nonpositive);
    CHECK_FALSE(r.all_positive);
    CHECK(r.max_face == Rational(-1, 6));
    CHECK(r.kappa_inf_proxy == std::vector<Rational>(3, Rational(-1, 6)));
    MyersEvidence ev = myers_evidence(s, r);
    CHECK(ev.verdict == MyersVerdict::infinite_nonpositive);
    CHECK(ev.sphere_sizes == std::vector<std::size_t>{1, 7, 21, 56});
  }

  TEST_CASE("report on the square tiling") {
    Structure s = gen_regular_tessellation(4, 4, 3);
    CurvatureReport r = curvature_report(s, 0, 3);
    CHECK(r.all_nonpositive);
    CHECK_FALSE(r.all_negative);
    CHECK(r.min_corner == 0);
    CHECK(r.max_corner == 0);
  }

  TEST_CASE("sigma_n has positive corners and nonpositive faces") {
    for (int n = 3; n <= 6; ++n) {
      Structure s = gen_sigma_n(n, 3);
      CurvatureReport r = curvature_report(s, 0, 3);
      CHECK(r.max_corner == Rational(1, 3) - Rational(1, 2) + Rational(1, 4));
      CHECK(r.min_corner == Rational(1, 2 * n) - Rational(1, 2) + Rational(1, 4));
      CHECK_FALSE(r.all_nonpositive);
      CHECK(r.faces_nonpositive);
      CHECK(r.max_face == Rational(1, n) - Rational(1, 3));
      CHECK(myers_evidence(s, r).verdict == MyersVerdict::infinite_nonpositive);
    }
  }

  TEST_CASE("the cube is finite with positive faces") {
    Structure s = gen_spherical(SphericalKind::cube);
    CurvatureReport r = curvature_report(s, 0, 2);
    CHECK(r.corners.size() == 24);
    CHECK(r.all_positive);
    CHECK(r.min_face == Rational(1, 3));
    MyersEvidence ev = myers_evidence(s, r);
    CHECK(ev.verdict == MyersVerdict::finite_positive);
    CHECK(to_string(ev.verdict) == to_string(MyersVerdict::finite_positive));
  }

  TEST_CASE("the proxy at infinity can only decrease") {
    for (Structure s : {gen_mixed_square_octagon(1, 4), gen_sigma_n(5, 4), gen_coxeter_triangle(2, 4, 5, 4)}) {
      CurvatureReport r = curvature_report(s, 0, 4);
      REQUIRE(r.kappa_inf_proxy.size() == 4);
      for (std::size_t i = 1; i < r.kappa_inf_proxy.size(); ++i) CHECK(r.kappa_inf_proxy[i] <= r.kappa_inf_proxy[i - 1]);
    }
  }

  TEST_CASE("book pages meet at degree-4 spine vertices") {
    Structure s = gen_book(3, 3);
    CurvatureReport r = curvature_report(s, 0, 3);
    CHECK(r.all_nonpositive);
    CHECK(r.min_corner == 0);
    CHECK(r.max_corner == 0);
  }
}
