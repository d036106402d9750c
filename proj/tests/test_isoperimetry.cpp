#include <doctest.h>

#include <algorithm>

#include "curvcx/errors.hpp"
#include "curvcx/generators.hpp"
#include "curvcx/isoperimetry.hpp"
#include "helpers.hpp"

using namespace curvcx;

namespace {

// Direct minimum of |∂K|/vol(K) over subsets of `region` with at most k faces.
Rational direct_min(const PolygonalComplex& X, const std::vector<FaceId>& region, std::size_t k) {
  const std::size_t n = region.size();
  Rational best(1 << 20);
  for (std::uint64_t m = 1; m < (1ull << n); ++m) {
    if (static_cast<std::size_t>(__builtin_popcountll(m)) > k) continue;
    std::int64_t boundary = 0, volume = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(m >> i & 1)) continue;
      std::int64_t inside = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(m >> j & 1)) continue;
        auto nb = X.face_neighbors(region[i]);
        inside += std::binary_search(nb.begin(), nb.end(), region[j]);
      }
      boundary += X.face_degree(region[i]) - inside;
      volume += X.face_degree(region[i]);
    }
    best = std::min(best, Rational(boundary, volume));
  }
  return best;
}

}  // namespace

TEST_SUITE("isoperimetry") {
  TEST_CASE("cube") {
    Structure s = gen_spherical(SphericalKind::cube);
    std::vector<FaceId> all = {0, 1, 2, 3, 4, 5};
    CheegerWitness whole = cheeger_bruteforce(*s.complex, all);
    CHECK(whole.ratio() == 0);
    CHECK(whole.faces.size() == 6);
    CheegerOptions opt;
    opt.max_size = 3;
    CheegerWitness three = cheeger_bruteforce(*s.complex, all, opt);
    CHECK(three.ratio() == Rational(1, 2));
    CHECK(three.ratio() == direct_min(*s.complex, all, 3));
    CHECK(three.boundary == 6);
    CHECK(three.volume == 12);
  }

  TEST_CASE("brute force matches a direct scan") {
    for (Structure s : {gen_regular_tessellation(7, 3, 3), gen_regular_tessellation(4, 5, 3), gen_book(3, 3),
                        gen_product_trees(3, 3, 2)}) {
      CAPTURE(s.family);
      auto region = testing::ball(*s.complex, 0, 1);
      if (region.size() > 12) region.resize(12);
      for (bool parallel : {true, false}) {
        CheegerOptions opt;
        opt.parallel = parallel;
        CHECK(cheeger_bruteforce(*s.complex, region, opt).ratio() == direct_min(*s.complex, region, region.size()));
      }
    }
  }

  TEST_CASE("region limits") {
    Structure s = gen_regular_tessellation(7, 3, 3);
    auto region = testing::ball(*s.complex, 0, 2);  // 29 faces
    CHECK_THROWS_AS(cheeger_bruteforce(*s.complex, region), BudgetExceededError);
    CHECK_THROWS_AS(cheeger_bruteforce(*s.complex, {}), PreconditionError);
    std::vector<FaceId> twice = {0, 0};
    CHECK_THROWS_AS(cheeger_bruteforce(*s.complex, twice), PreconditionError);
  }

  TEST_CASE("lower bounds") {
    {
      Structure s = gen_regular_tessellation(7, 3, 3);
      CheegerBounds b = cheeger_lower_bounds(*s.complex, 0, 3);
      CHECK(b.bound1 == Rational(1, 7));
      CHECK(b.bound2 == Rational(-1, 7));
      REQUIRE(b.certificate.has_value());
      CHECK(*b.certificate == Rational(1, 7));
      CHECK(best_lower_bound(b) == Rational(1, 7));
      // Any finite region gives an upper bound above the lower bound.
      auto region = testing::ball(*s.complex, 0, 1);
      CHECK(cheeger_bruteforce(*s.complex, region).ratio() >= b.bound1);
    }
    {
      Structure s = gen_product_trees(4, 4, 2);
      CheegerBounds b = cheeger_lower_bounds(*s.complex);
      CHECK(b.bound1 == Rational(-1, 2));
      CHECK(b.bound2 == Rational(1, 12));
      CHECK(best_lower_bound(b) == Rational(1, 12));
    }
    {
      Structure s = gen_regular_tessellation(4, 4, 3);
      CheegerBounds b = cheeger_lower_bounds(*s.complex, 0, 3);
      CHECK(b.bound1 == Rational(-1, 2));
      CHECK(b.bound2 == Rational(-1, 4));
      CHECK_FALSE(best_lower_bound(b).has_value());
    }
  }

  TEST_CASE("Cheeger constant at infinity of the mixed complex") {
    Structure s = gen_mixed_square_octagon(2, 5);
    auto h = cheeger_at_infinity(*s.complex, 0, 5);
    REQUIRE(h.size() == 5);
    CHECK(h[0] == Rational(-1, 2));
    CHECK(h[1] == Rational(-1, 2));
    for (int r = 2; r < 5; ++r) CHECK(h[r] == Rational(1, 4));
  }
}
