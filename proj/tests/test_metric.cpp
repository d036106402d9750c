#include <doctest.h>

#include <algorithm>

#include "curvcx/errors.hpp"
#include "curvcx/generators.hpp"
#include "curvcx/metric.hpp"
#include "helpers.hpp"

using namespace curvcx;

namespace {

std::vector<std::size_t> sphere_sizes(const PolygonalComplex& X, int R) {
  SphereStructure S = spheres(X, 0, R);
  std::vector<std::size_t> out;
  for (const auto& s : S.spheres) out.push_back(s.size());
  return out;
}

FaceId face_with_interval_size(const FaceMetric& M, int n, std::size_t members) {
  auto d = M.built_distances(0);
  for (FaceId g = 0; g < static_cast<FaceId>(d->size()); ++g) {
    if ((*d)[g] == n && M.interval(0, g).members().size() == members) return g;
  }
  return -1;
}

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("distances agree with Floyd-Warshall on the dodecahedron") {
    Structure s = gen_spherical(SphericalKind::dodecahedron);
    const auto& X = *s.complex;
    const int n = static_cast<int>(X.num_faces());
    std::vector<std::vector<int>> D(n, std::vector<int>(n, 1000));
    for (int f = 0; f < n; ++f) {
      D[f][f] = 0;
      for (FaceId g : X.face_neighbors(f)) D[f][g] = 1;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D[i][j] = std::min(D[i][j], D[i][k] + D[k][j]);
    FaceMetric M(s.complex);
    for (int f = 0; f < n; ++f)
      for (int g = 0; g < n; ++g) CHECK(M.distance(f, g) == D[f][g]);
  }

  TEST_CASE("sphere sizes of the square tiling grow linearly") {
    Structure s = gen_regular_tessellation(4, 4, 6);
    auto sz = sphere_sizes(*s.complex, 6);
    CHECK(sz[0] == 1);
    for (std::size_t n = 1; n < sz.size(); ++n) CHECK(sz[n] == 4 * n);
  }

  TEST_CASE("sphere sizes of the heptagonal tiling follow their recurrence") {
    Structure s = gen_regular_tessellation(7, 3, 5);
    auto sz = sphere_sizes(*s.complex, 5);
    REQUIRE(sz.size() == 6);
    CHECK(sz[0] == 1);
    CHECK(sz[1] == 7);
    CHECK(sz[2] == 21);
    for (std::size_t n = 3; n < sz.size(); ++n) CHECK(sz[n] == 3 * sz[n - 1] - sz[n - 2]);
  }

  TEST_CASE("spheres refuse untrusted balls") {
    Structure s = gen_regular_tessellation(7, 3, 2);
    CHECK_NOTHROW(spheres(*s.complex, 0, 2));
    CHECK_THROWS_AS(spheres(*s.complex, 0, 3), IncompleteCellError);
  }

  TEST_CASE("forward and backward counts partition the neighbours") {
    Structure s = gen_regular_tessellation(5, 4, 4);
    SphereStructure S = spheres(*s.complex, 0, 3);
    for (std::size_t i = 0; i < S.faces.size(); ++i) {
      CHECK(S.forward[i] + S.backward[i] + S.lateral[i] ==
            static_cast<int>(s.complex->face_neighbors(S.faces[i]).size()));
      if (S.level[i] > 0) CHECK(S.backward[i] >= 1);
    }
  }

  TEST_CASE("cut locus") {
    CHECK(cut_locus(*gen_regular_tessellation(7, 3, 4).complex, 0, 4).empty());
    CHECK(cut_locus(*gen_regular_tessellation(4, 4, 4).complex, 0, 4).empty());
    Structure cube = gen_spherical(SphericalKind::cube);
    CHECK(cut_locus(*cube.complex, 0, 2).empty());
    auto cut = cut_locus(*cube.complex, 0, 3);
    REQUIRE(cut.size() == 1);
    CHECK(FaceMetric(cube.complex).distance(0, cut[0]) == 2);
  }

  TEST_CASE("exactness rules on truncated complexes") {
    CHECK(distance_exact(0, 0, 4));
    CHECK_FALSE(distance_exact(0, 0, 5));
    CHECK(interval_exact(1, 0, 4));
    CHECK_FALSE(interval_exact(0, 0, 4));
    Structure s = gen_regular_tessellation(7, 3, 1);
    FaceMetric M(s.complex);
    CHECK(M.trusted_radius(0) == 1);
    auto d = M.built_distances(0);
    FaceId far = static_cast<FaceId>(std::max_element(d->begin(), d->end()) - d->begin());
    CHECK((*d)[far] == 3);
    CHECK(M.trusted_radius(far) == -1);
    CHECK(M.distance(0, far) == 3);
  }

  TEST_CASE("geodesics across a 3x3 block of squares") {
    Structure s = gen_regular_tessellation(4, 4, 5);
    FaceMetric M(s.complex);
    FaceId g = face_with_interval_size(M, 4, 9);
    REQUIRE(g >= 0);
    GeodesicInterval I = M.interval(0, g);
    std::vector<std::size_t> widths;
    for (const auto& L : I.layers) widths.push_back(L.size());
    CHECK(widths == std::vector<std::size_t>{1, 2, 3, 2, 1});
    CHECK(bigon_certificate(M, 0, g) == 3);
    BigonEnumeration B = enumerate_bigons(M, 0, g, 100);
    CHECK(B.geodesic_count == 6);  // C(4,2)
    CHECK(B.geodesics.size() == 6);
    CHECK(B.spread == std::vector<int>{0, 2, 4, 2, 0});
    CHECK(B.delta_bigon == 4);
    CHECK_THROWS_AS(enumerate_bigons(M, 0, g, 5), BudgetExceededError);
  }

  TEST_CASE("enumerated geodesics are paths of adjacent faces") {
    Structure s = gen_regular_tessellation(5, 4, 4);
    FaceMetric M(s.complex);
    auto d = M.built_distances(0);
    int checked = 0;
    for (FaceId g = 0; g < static_cast<FaceId>(d->size()) && checked < 40; ++g) {
      if ((*d)[g] != 3) continue;
      ++checked;
      BigonEnumeration B = enumerate_bigons(M, 0, g, 10000);
      CHECK(B.geodesics.size() == B.geodesic_count);
      for (const auto& gamma : B.geodesics) {
        REQUIRE(gamma.size() == 4);
        for (std::size_t k = 0; k + 1 < gamma.size(); ++k) {
          auto nb = s.complex->face_neighbors(gamma[k]);
          CHECK(std::binary_search(nb.begin(), nb.end(), gamma[k + 1]));
        }
      }
    }
    CHECK(checked == 40);
  }

  TEST_CASE("bigons in {4,5} are not 1-thin") {
    // Faces 0..4 surround vertex 0 in this build; 0 and 21 are joined by
    // geodesics through 1 and 4 that are two apart.
    Structure s = gen_regular_tessellation(4, 5, 4);
    FaceMetric M(s.complex);
    auto around = testing::wheel(*s.complex, 0);
    CHECK(around.size() == 5);
    BigonEnumeration worst;
    for (FaceId g = 0; g < static_cast<FaceId>(s.complex->num_faces()); ++g) {
      if (!s.complex->face_complete(g)) continue;
      BigonEnumeration B = enumerate_bigons(M, 0, g, 100000);
      if (B.delta_bigon > worst.delta_bigon) worst = B;
    }
    CHECK(worst.delta_bigon == 2);
    CHECK(M.distance(1, 4) == 2);
  }

  TEST_CASE("bigons in {7,3} are 1-thin") {
    Structure s = gen_regular_tessellation(7, 3, 4);
    FaceMetric M(s.complex);
    int worst = 0;
    for (FaceId g = 0; g < static_cast<FaceId>(s.complex->num_faces()); ++g) {
      if (s.complex->face_complete(g)) worst = std::max(worst, enumerate_bigons(M, 0, g, 100000).delta_bigon);
    }
    CHECK(worst == 1);
  }

  TEST_CASE("four-point delta") {
    Structure sq = gen_regular_tessellation(4, 4, 5);
    FaceMetric M(sq.complex);
    FaceId g = face_with_interval_size(M, 4, 5);
    REQUIRE(g >= 0);
    auto line = M.interval(0, g).members();
    CHECK(four_point_delta(M, line) == Rational(0));
    // Squares around a vertex: sides 1, diagonals 2, so (4 - 2)/2.
    auto around = testing::wheel(*sq.complex, sq.complex->face_vertices(0)[0]);
    REQUIRE(around.size() == 4);
    CHECK(four_point_delta(M, around) == Rational(1));
    CHECK_THROWS_AS(four_point_delta(M, line, 10.0), BudgetExceededError);

    Structure cube = gen_spherical(SphericalKind::cube);
    std::vector<FaceId> all(6);
    for (int i = 0; i < 6; ++i) all[i] = i;
    // Opposite pairs at 2, all others at 1: (2+2) - (1+1) over two.
    CHECK(four_point_delta(FaceMetric(cube.complex), all) == Rational(1));
  }
}
