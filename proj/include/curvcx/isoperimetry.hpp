#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curvcx/core.hpp"
#include "curvcx/rational.hpp"

namespace curvcx {

/// A face set K with |∂K| = Σ_{f∈K} (|f| - |N(f) ∩ K|) and vol(K) = Σ |f|,
/// using true face degrees.
struct CheegerWitness {
  std::vector<FaceId> faces;
  std::int64_t boundary = 0;
  std::int64_t volume = 0;
  std::uint64_t subsets = 0;  // subsets examined
  Rational ratio() const { return Rational(boundary, volume); }
};

struct CheegerOptions {
  std::size_t max_size = 0;    // largest |K|; 0 means |region|
  std::size_t region_cap = 22; // largest accepted region
  bool parallel = true;        // connected subsets in parallel, else full serial scan
};

/// Exact minimiser of |∂K|/vol(K) over nonempty K inside the region. For
/// an infinite complex this is an upper bound on its Cheeger constant.
CheegerWitness cheeger_bruteforce(const PolygonalComplex& X, std::span<const FaceId> region,
                                  const CheegerOptions& opt = {});

struct CheegerBounds {
  // Infima over the trusted faces, so only inner approximations.
  Rational bound1;  // (m_E/M_E)(1 - 6/|∂f|)
  Rational bound2;  // (m_E - 2)/|f|
  /// min over faces of B_{R-1}(center) of (|f|_+ - |f|_-)/|f|.
  std::optional<Rational> certificate;
  FaceId bound1_face = -1, bound2_face = -1, certificate_face = -1;
  std::size_t faces = 0;
};

/// Bounds over the trusted faces (all faces when untruncated). The
/// certificate needs a center and radius with B_R trusted.
CheegerBounds cheeger_lower_bounds(const PolygonalComplex& X, std::optional<FaceId> center = std::nullopt,
                                   int R = 0);

/// Largest of the bounds that is positive, if any.
std::optional<Rational> best_lower_bound(const CheegerBounds& b);

/// Entry r (r = 0..R-1) is the infimum of (m_E/M_E)(1 - 6/|∂f|) over
/// f in B_R \ B_r.
std::vector<Rational> cheeger_at_infinity(const PolygonalComplex& X, FaceId o, int R);

}  // namespace curvcx
