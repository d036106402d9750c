#include <doctest.h>

#include <map>
#include <set>

#include "curvcx/curvature.hpp"
#include "curvcx/errors.hpp"
#include "curvcx/generators.hpp"
#include "curvcx/metric.hpp"
#include "helpers.hpp"

using namespace curvcx;

TEST_SUITE("generators") {
  TEST_CASE("regular tessellations have the expected corner curvature") {
    const std::map<std::pair<int, int>, SphericalKind> solids = {
        {{3, 3}, SphericalKind::tetrahedron}, {{4, 3}, SphericalKind::cube}, {{3, 4}, SphericalKind::octahedron},
        {{5, 3}, SphericalKind::dodecahedron}, {{3, 5}, SphericalKind::icosahedron}};
    for (int p = 3; p <= 8; ++p) {
      for (int q = 3; q <= 8; ++q) {
        CAPTURE(p);
        CAPTURE(q);
        auto it = solids.find({p, q});
        Structure s = it != solids.end() ? gen_spherical(it->second) : gen_regular_tessellation(p, q, 1);
        const Apartment& A = s.apartments.at(0);
        Rational expected = Rational(1, q) - Rational(1, 2) + Rational(1, p);
        CHECK(s.complex->boundary_length(0) == p);
        for (VertexId v : s.complex->face_vertices(0)) CHECK(corner_curvature(A, v, 0) == expected);
      }
    }
  }

  TEST_CASE("spherical {p,q} are refused by the layered generator") {
    CHECK_THROWS_AS(gen_regular_tessellation(3, 5, 2), PreconditionError);
    CHECK_THROWS_AS(gen_regular_tessellation(5, 3, 2), PreconditionError);
    CHECK_THROWS_AS(gen_coxeter_triangle(2, 3, 5, 2), PreconditionError);
  }

  TEST_CASE("solids have the right cell counts") {
    struct Row {
      SphericalKind kind;
      int n;
      std::size_t V, E, F;
    };
    for (Row r : {Row{SphericalKind::tetrahedron, 0, 4, 6, 4}, Row{SphericalKind::cube, 0, 8, 12, 6},
                  Row{SphericalKind::octahedron, 0, 6, 12, 8}, Row{SphericalKind::dodecahedron, 0, 20, 30, 12},
                  Row{SphericalKind::icosahedron, 0, 12, 30, 20}, Row{SphericalKind::prism, 5, 7, 15, 10},
                  Row{SphericalKind::antiprism, 5, 12, 20, 10}}) {
      Structure s = gen_spherical(r.kind, r.n);
      CHECK(s.complex->num_vertices() == r.V);
      CHECK(s.complex->num_edges() == r.E);
      CHECK(s.complex->num_faces() == r.F);
      CHECK(validate_tessellation(*s.complex).spherical);
    }
    CHECK(parse_spherical_kind("icosahedron") == SphericalKind::icosahedron);
    CHECK_THROWS(parse_spherical_kind("torus"));
  }

  TEST_CASE("sigma_n vertex degrees alternate") {
    for (int n = 3; n <= 6; ++n) {
      Structure s = gen_sigma_n(n, 2);
      auto cyc = s.complex->face_vertices(0);
      REQUIRE(cyc.size() == 4);
      std::multiset<Degree> deg;
      for (VertexId v : cyc) deg.insert(s.complex->vertex_degree(v));
      CHECK(deg == std::multiset<Degree>{3, 3, Degree(2 * n), Degree(2 * n)});
      CHECK(s.complex->vertex_degree(cyc[0]) != s.complex->vertex_degree(cyc[1]));
    }
  }

  TEST_CASE("product of trees face degrees") {
    for (auto [r, t] : {std::pair{3, 3}, std::pair{3, 4}, std::pair{4, 4}}) {
      Structure s = gen_product_trees(r, t, 2);
      const auto& X = *s.complex;
      for (FaceId f = 0; f < static_cast<FaceId>(X.num_faces()); ++f) {
        if (X.face_complete(f)) CHECK(X.face_degree(f) == 2 * (r - 1) + 2 * (t - 1));
      }
    }
  }

  TEST_CASE("book coordinates give the face distances") {
    for (int k : {2, 3, 4}) {
      const int R = 3;
      Structure s = gen_book(k, R);
      auto coords = book_face_coordinates(k, R);
      REQUIRE(coords.size() == s.complex->num_faces());
      CHECK(coords[0] == std::array<int, 3>{0, 0, 0});
      FaceMetric M(s.complex);
      auto d = M.built_distances(0);
      for (std::size_t f = 0; f < coords.size(); ++f) {
        auto [page, x, y] = coords[f];
        int expected = std::abs(x) + y + (page != 0 ? 1 : 0);
        if (expected <= R) CHECK((*d)[f] == expected);
      }
      CHECK(s.apartments.size() == static_cast<std::size_t>(k * (k - 1) / 2));
    }
  }

  TEST_CASE("mixed complex switches from squares to octagons") {
    Structure s = gen_mixed_square_octagon(2, 4);
    SphereStructure S = spheres(*s.complex, 0, 4);
    for (std::size_t i = 0; i < S.faces.size(); ++i) {
      CHECK(s.complex->boundary_length(S.faces[i]) == (S.level[i] <= 2 ? 4 : 8));
    }
  }

  TEST_CASE("generation is deterministic and seeded sampling is reproducible") {
    CHECK(to_raw(gen_regular_tessellation(5, 4, 3)) == to_raw(gen_regular_tessellation(5, 4, 3)));
    GeneratorOptions a;
    a.apartment_cap = 20;
    GeneratorOptions b = a;
    b.seed = 7;
    RawComplex x = to_raw(gen_product_trees(3, 3, 2, a));
    CHECK(x.apartments.size() == 20);
    CHECK(x == to_raw(gen_product_trees(3, 3, 2, a)));
    CHECK(x.apartments != to_raw(gen_product_trees(3, 3, 2, b)).apartments);
  }

  TEST_CASE("every sampled product apartment meets the trusted ball") {
    Structure s = gen_product_trees(3, 3, 3);
    for (const auto& A : s.apartments) {
      bool any = false;
      for (FaceId f : A.faces()) any = any || s.complex->face_complete(f);
      CHECK(any);
    }
  }

  TEST_CASE("face cap") {
    GeneratorOptions opt;
    opt.face_cap = 500;
    CHECK_THROWS_AS(gen_regular_tessellation(7, 3, 6, opt), BudgetExceededError);
  }

  TEST_CASE("generate dispatches on the family name") {
    GeneratorSpec spec{"regular_pq", {6, 3}, "", 2};
    CHECK(to_raw(generate(spec)) == to_raw(gen_regular_tessellation(6, 3, 2)));
    spec.family = "nonsense";
    CHECK_THROWS_AS(generate(spec), PreconditionError);
    spec.family = "book";
    CHECK_THROWS_AS(generate(spec), PreconditionError);  // wrong parameter count
  }

  TEST_CASE("trusted ball of the Z^3 squares") {
    Structure s = gen_cubic_lattice_squares(3);
    REQUIRE(s.trusted_radius == 1);
    CHECK_NOTHROW(spheres(*s.complex, 0, 1));
    CHECK(s.apartments.size() == 21);
  }
}
