#pragma once

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "curvcx/core.hpp"
#include "curvcx/rational.hpp"

namespace curvcx {

struct GeodesicInterval {
  FaceId from = 0, to = 0;
  int length = 0;
  /// layers[k] = members at distance k from `from`, ascending.
  std::vector<std::vector<FaceId>> layers;
  std::vector<FaceId> members() const;
  bool contains(FaceId h) const;
};

/// Face-adjacency distances. Distances are computed in the built complex and
/// only returned when trusted radii make them equal to the true distances.
class FaceMetric {
 public:
  explicit FaceMetric(std::shared_ptr<const PolygonalComplex> X);

  const PolygonalComplex& complex() const { return *X_; }

  /// BFS distances from f in the built complex, -1 where unreachable.
  std::shared_ptr<const std::vector<int>> built_distances(FaceId f) const;

  /// Largest t such that every face within t of f is complete; -1 when f is
  /// not complete, kUnbounded on untruncated complexes.
  int trusted_radius(FaceId f) const;
  const std::vector<int>& trusted_radii() const;
  static constexpr int kUnbounded = 1 << 28;

  int distance(FaceId f, FaceId g) const;
  GeodesicInterval interval(FaceId f, FaceId g) const;

 private:
  std::shared_ptr<const PolygonalComplex> X_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<FaceId, std::shared_ptr<const std::vector<int>>> cache_;
  mutable std::once_flag radii_once_;
  mutable std::vector<int> radii_;
};

/// True when built distances of length up to n between f and g are exact.
bool distance_exact(int radius_f, int radius_g, int n);
/// True when the geodesic interval of a pair at distance n is fully built.
bool interval_exact(int radius_f, int radius_g, int n);

struct SphereStructure {
  FaceId center = 0;
  int radius = 0;
  std::vector<std::vector<FaceId>> spheres;  // S_0..S_R
  // Indexed like `faces`, which lists B_R sphere by sphere.
  std::vector<FaceId> faces;
  std::vector<int> level;
  std::vector<int> forward;   // |f|_+
  std::vector<int> backward;  // |f|_-
  std::vector<int> lateral;
};

/// Requires B_R(o) to be trusted.
SphereStructure spheres(const PolygonalComplex& X, FaceId o, int R);

/// Faces of B_{R-1}(o) without a neighbour one step further from o.
std::vector<FaceId> cut_locus(const PolygonalComplex& X, FaceId o, int R);

int bigon_certificate(const FaceMetric& M, FaceId f, FaceId g);

struct BigonEnumeration {
  std::uint64_t geodesic_count = 0;
  std::vector<std::vector<FaceId>> geodesics;
  /// spread[k] = max over geodesic pairs of d(γ_k, γ'_k).
  std::vector<int> spread;
  int delta_bigon = 0;
};

/// Counts geodesics on the interval first and throws BudgetExceededError above cap.
BigonEnumeration enumerate_bigons(const FaceMetric& M, FaceId f, FaceId g, std::uint64_t cap);

/// Four-point δ of the sample as a half-integer. Throws when |sample|^4
/// exceeds the budget or a pair distance is not exact.
Rational four_point_delta(const FaceMetric& M, std::span<const FaceId> sample, double budget = 1e10);

}  // namespace curvcx
