#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvcx/core.hpp"

namespace curvcx {

/// Face cap for the layered generators: CURVCX_BUDGET if set, else 10^6.
std::size_t default_face_cap();

struct GeneratorOptions {
  std::size_t face_cap = default_face_cap();
  /// Apartment systems larger than this are sampled.
  std::size_t apartment_cap = 4096;
  std::uint64_t seed = 0;
};

// Infinite families are built to distance R + 2 around face 0 (the center)
// and B_R is marked trusted. Cells outside the trusted closure carry their
// true degrees as overrides.

Structure gen_regular_tessellation(int p, int q, int R, const GeneratorOptions& opt = {});
/// Triangles whose vertices have degrees 2r, 2s, 2t, one of each per face.
Structure gen_coxeter_triangle(int r, int s, int t, int R, const GeneratorOptions& opt = {});
/// Squares around vertices alternating between degree 2n and degree 3.
Structure gen_sigma_n(int n, int R, const GeneratorOptions& opt = {});
/// Squares within distance core_radius of the center, octagons beyond.
Structure gen_mixed_square_octagon(int core_radius, int R, const GeneratorOptions& opt = {});
/// T_r x T_s; apartments are products of leaf-to-leaf paths of the depth
/// R + 1 subtrees.
Structure gen_product_trees(int r, int s, int R, const GeneratorOptions& opt = {});
/// k half-planes of squares glued along a spine; apartments are page pairs.
Structure gen_book(int k, int R, const GeneratorOptions& opt = {});
/// (page, x, y) of every face of gen_book(k, R), in face order.
std::vector<std::array<int, 3>> book_face_coordinates(int k, int R);

enum class SphericalKind { tetrahedron, cube, octahedron, dodecahedron, icosahedron, prism, antiprism };

/// prism(n): two wheels of n triangles sharing their rim.
/// antiprism(n): two wheels of n squares with interleaved rims.
Structure gen_spherical(SphericalKind kind, int n = 0);
SphericalKind parse_spherical_kind(const std::string& name);

/// Unit squares of Z^3 inside [-M, M]^3, with coordinate-plane apartments.
/// Squares inside [-(M-1), M-1]^3 are trusted; the trusted radius is M - 2.
Structure gen_cubic_lattice_squares(int M);

struct GeneratorSpec {
  std::string family;  // regular_pq, coxeter_triangle, product_trees, book, sigma_n, spherical, mixed, cubic_squares
  std::vector<int> params;
  std::string kind;  // spherical solids
  int radius = 1;
};

Structure generate(const GeneratorSpec& spec, const GeneratorOptions& opt = {});

}  // namespace curvcx
