#include <doctest.h>

#include "curvcx/errors.hpp"
#include "curvcx/generators.hpp"
#include "helpers.hpp"

using namespace curvcx;

namespace {

RawComplex triangle() {
  RawComplex raw;
  raw.vertex_count = 3;
  raw.edges = {{0, 1}, {1, 2}, {2, 0}};
  raw.faces = {{0, 1, 2}};
  return raw;
}

bool passes(const TessellationCheck& c, const std::string& axiom) {
  for (const auto& r : c.reports) {
    if (r.axiom == axiom) return r.pass;
  }
  FAIL("no report for " << axiom);
  return false;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("incidences of a single triangle") {
    PolygonalComplex X = build_complex(triangle());
    CHECK(X.num_vertices() == 3);
    CHECK(X.num_edges() == 3);
    CHECK(X.num_faces() == 1);
    auto fe = X.face_edges(0);
    REQUIRE(fe.size() == 3);
    CHECK(X.edge_vertices(fe[0]) == std::array<VertexId, 2>{0, 1});
    CHECK(X.edge_degree(0) == 1);
    CHECK(X.vertex_degree(0) == 2);
    CHECK(X.face_degree(0) == 0);
    CHECK(X.find_edge(2, 1).value() == 1);
    CHECK_FALSE(X.find_edge(0, 0).has_value());
    CHECK_FALSE(passes(validate_tessellation(X), "T1"));
  }

  TEST_CASE("malformed cell lists are rejected") {
    RawComplex loop = triangle();
    loop.edges.push_back({1, 1});
    CHECK_THROWS_AS(build_complex(loop), InvalidComplexError);

    RawComplex dup = triangle();
    dup.edges.push_back({1, 0});
    CHECK_THROWS_AS(build_complex(dup), InvalidComplexError);

    RawComplex shortface = triangle();
    shortface.faces = {{0, 1}};
    CHECK_THROWS_AS(build_complex(shortface), InvalidComplexError);

    RawComplex missing = triangle();
    missing.edges.pop_back();
    CHECK_THROWS_AS(build_complex(missing), InvalidComplexError);

    RawComplex range = triangle();
    range.faces = {{0, 1, 7}};
    CHECK_THROWS_AS(build_complex(range), InvalidComplexError);

    RawComplex repeat;
    repeat.vertex_count = 4;
    repeat.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 1}};
    repeat.faces = {{0, 1, 2, 0, 3}};
    CHECK_THROWS_AS(build_complex(repeat), InvalidComplexError);

    // Two squares sharing two consecutive edges.
    RawComplex two;
    two.vertex_count = 5;
    two.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {4, 0}};
    two.faces = {{0, 1, 2, 3}, {0, 1, 2, 4}};
    CHECK_THROWS_AS(build_complex(two), InvalidComplexError);
  }

  TEST_CASE("truncation overrides are checked against complete cells") {
    RawComplex raw = triangle();
    raw.truncation = Truncation{{0}, {}};
    raw.truncation->true_degrees.edge[0] = 3;  // built value is 1 and the edge is complete
    CHECK_THROWS_AS(build_complex(raw), InvalidComplexError);

    raw.truncation->true_degrees.edge.clear();
    raw.truncation->true_degrees.vertex[0] = -1;
    CHECK_THROWS_AS(build_complex(raw), InvalidComplexError);

    raw.truncation->true_degrees.vertex.clear();
    raw.truncation->trusted_faces = {4};
    CHECK_THROWS_AS(build_complex(raw), InvalidComplexError);
  }

  TEST_CASE("cube degrees") {
    Structure s = gen_spherical(SphericalKind::cube);
    const auto& X = *s.complex;
    CHECK(X.num_vertices() == 8);
    CHECK(X.num_edges() == 12);
    CHECK(X.num_faces() == 6);
    for (VertexId v = 0; v < 8; ++v) CHECK(X.vertex_degree(v) == 3);
    for (FaceId f = 0; f < 6; ++f) {
      CHECK(X.face_degree(f) == 4);
      CHECK(X.face_neighbors(f).size() == 4);
    }
    TessellationCheck chk = validate_tessellation(X);
    CHECK(chk.all_pass());
    CHECK(chk.spherical);
  }

  TEST_CASE("a cube with a missing face is not a tessellation") {
    RawComplex raw = to_raw(gen_spherical(SphericalKind::cube));
    raw.faces.pop_back();
    raw.apartments.clear();
    PolygonalComplex X = build_complex(raw);
    TessellationCheck chk = validate_tessellation(X);
    CHECK_FALSE(passes(chk, "T1"));
    CHECK_FALSE(chk.spherical);
  }

  TEST_CASE("degree profile of a product of two 4-regular trees") {
    Structure s = gen_product_trees(4, 4, 2);
    DegreeProfile p = degree_profile(*s.complex);
    CHECK(p.min_edge == 3);
    CHECK(p.max_edge == 3);
    CHECK(p.max_face == 12);
    CHECK(p.min_face == 12);
    CHECK(p.max_vertex == 8);
    CHECK(s.complex->face_degree(0) == 12);
  }

  TEST_CASE("book spine cells") {
    Structure s = gen_book(3, 2);
    const auto& X = *s.complex;
    // Face 0 sits on the spine: one spine edge of degree 3, three of degree 2.
    CHECK(X.face_degree(0) == 5);
    CHECK(X.max_edge_degree(0) == 2);
    CHECK(X.min_edge_degree(0) == 1);
    int spine = 0;
    for (EdgeId e : X.face_edges(0)) spine += X.edge_degree(e) == 3;
    CHECK(spine == 1);
  }

  TEST_CASE("overrides supply degrees outside the trusted closure") {
    Structure s = gen_regular_tessellation(7, 3, 1);
    const auto& X = *s.complex;
    for (FaceId f = 0; f < static_cast<FaceId>(X.num_faces()); ++f) {
      if (X.face_complete(f)) continue;
      REQUIRE(X.has_face_degree(f));
      CHECK(X.face_degree(f) == 7);
    }
    for (VertexId v = 0; v < static_cast<VertexId>(X.num_vertices()); ++v) {
      if (X.has_vertex_degree(v)) CHECK(X.vertex_degree(v) == 3);
    }
  }

  TEST_CASE("infinite override degrees") {
    RawComplex raw = to_raw(gen_regular_tessellation(4, 4, 1));
    VertexId far = -1;
    for (auto& [v, d] : raw.truncation->true_degrees.vertex) far = v;
    REQUIRE(far >= 0);
    raw.truncation->true_degrees.vertex[far] = kInfiniteDegree;
    PolygonalComplex X = build_complex(raw);
    CHECK(X.vertex_degree(far) == kInfiniteDegree);
  }

  TEST_CASE("link classification") {
    {
      Structure s = gen_regular_tessellation(7, 3, 2);
      auto c = classify_link(link(*s.complex, s.complex->face_vertices(0)[0]));
      CHECK(c.cycle_length == 3);
      CHECK_FALSE(c.generalized_m.has_value());
    }
    {
      Structure s = gen_regular_tessellation(4, 4, 2);
      auto c = classify_link(link(*s.complex, s.complex->face_vertices(0)[0]));
      CHECK(c.cycle_length == 4);
      CHECK(c.generalized_m == 2);
    }
    {
      Structure s = gen_product_trees(3, 3, 2);
      LinkGraph L = link(*s.complex, s.complex->face_vertices(0)[0]);
      CHECK(L.nodes.size() == 6);
      CHECK(L.edge_count() == 9);
      auto c = classify_link(L);
      CHECK_FALSE(c.cycle_length.has_value());
      CHECK(c.generalized_m == 2);
    }
    {
      // Incidence graph of the Fano plane.
      LinkGraph L;
      L.adjacency.resize(14);
      int lines[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
      for (int l = 0; l < 7; ++l) {
        for (int p : lines[l]) {
          L.adjacency[p].push_back(7 + l);
          L.adjacency[7 + l].push_back(p);
        }
      }
      auto c = classify_link(L);
      CHECK(c.generalized_m == 3);
      CHECK(describe(c) == "generalized 3-gon");
    }
    {
      LinkGraph L;
      L.adjacency = {{1, 2}, {0, 2}, {0, 1}, {4}, {3}};  // disconnected
      CHECK(classify_link(L).other());
    }
  }

  TEST_CASE("apartments of generated families are tessellations") {
    for (Structure s : {gen_regular_tessellation(4, 4, 3), gen_regular_tessellation(7, 3, 3), gen_sigma_n(4, 3),
                        gen_book(3, 3), gen_product_trees(3, 3, 2), gen_coxeter_triangle(2, 4, 4, 3),
                        gen_mixed_square_octagon(2, 4)}) {
      CAPTURE(s.family);
      int checked = 0;
      for (const auto& A : s.apartments) {
        bool any = false;
        for (FaceId f : A.faces()) any = any || s.complex->face_complete(f);
        if (!any) continue;
        CHECK(validate_tessellation(A).all_pass());
        if (++checked == 50) break;
      }
      CHECK(checked > 0);
    }
  }

  TEST_CASE("apartment axioms hold on generated families") {
    for (Structure s : {gen_regular_tessellation(7, 3, 3), gen_product_trees(3, 3, 2), gen_book(3, 3),
                        gen_spherical(SphericalKind::icosahedron)}) {
      CAPTURE(s.family);
      int R = s.trusted_radius.value_or(3);
      for (const auto& r : validate_pcps(*s.complex, s.apartments, R, 0)) {
        CAPTURE(r.axiom);
        CHECK(r.pass);
      }
    }
  }

  TEST_CASE("squares of Z^3 fail the common apartment axiom") {
    Structure s = gen_cubic_lattice_squares(3);
    auto reports = validate_pcps(*s.complex, s.apartments, 1, 0);
    REQUIRE(!reports.empty());
    CHECK(reports[0].axiom == "PCPS1");
    CHECK_FALSE(reports[0].pass);
    REQUIRE(!reports[0].offending.empty());
    auto pair = reports[0].offending[0].cells;
    REQUIRE(pair.size() == 2);
    for (const auto& A : s.apartments) {
      CHECK_FALSE((A.contains_face(static_cast<FaceId>(pair[0])) && A.contains_face(static_cast<FaceId>(pair[1]))));
    }
    // Each coordinate plane is a square tiling.
    for (const auto& A : s.apartments) {
      bool any = false;
      for (FaceId f : A.faces()) any = any || s.complex->face_complete(f);
      if (any) CHECK(validate_tessellation(A).all_pass());
    }
  }

  TEST_CASE("apartment vertex degrees") {
    Structure s = gen_book(3, 2);
    const auto& X = *s.complex;
    VertexId spine_vertex = -1;
    for (VertexId v : X.face_vertices(0)) {
      if (X.vertex_degree(v) == 5) spine_vertex = v;
    }
    REQUIRE(spine_vertex >= 0);
    for (const auto& A : s.apartments) {
      if (A.contains_vertex(spine_vertex)) CHECK(A.vertex_degree(spine_vertex) == 4);
    }
  }
}
