#include "curvcx/isoperimetry.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "curvcx/errors.hpp"
#include "curvcx/kernels.hpp"
#include "curvcx/metric.hpp"

namespace curvcx {

CheegerWitness cheeger_bruteforce(const PolygonalComplex& X, std::span<const FaceId> region,
                                  const CheegerOptions& opt) {
  const std::size_t n = region.size();
  if (n == 0) throw PreconditionError("empty region");
  if (n > opt.region_cap) {
    throw BudgetExceededError("region of " + std::to_string(n) + " faces exceeds the cap of " +
                              std::to_string(opt.region_cap));
  }
  if (n > 64 || (!opt.parallel && n > 30)) throw BudgetExceededError("region too large for subset search");
  std::unordered_map<FaceId, int> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(region[i], static_cast<int>(i)).second) throw PreconditionError("region repeats a face");
  }
  kernels::CheegerProblem P;
  P.neighbors.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    FaceId f = region[i];
    if (!X.has_face_degree(f)) throw IncompleteCellError("face " + std::to_string(f) + " has no known degree");
    P.degree.push_back(X.face_degree(f));
    for (FaceId g : X.face_neighbors(f)) {
      auto it = index.find(g);
      if (it != index.end()) P.neighbors[i] |= std::uint64_t{1} << it->second;
    }
  }
  std::size_t max_size = opt.max_size == 0 ? n : std::min(opt.max_size, n);
  kernels::CheegerScan scan =
      opt.parallel ? kernels::cheeger_scan_parallel(P, max_size) : kernels::cheeger_scan_serial(P, max_size);
  CheegerWitness w;
  w.boundary = scan.boundary;
  w.volume = scan.volume;
  w.subsets = scan.subsets;
  for (std::size_t i = 0; i < n; ++i) {
    if (scan.mask >> i & 1) w.faces.push_back(region[i]);
  }
  std::sort(w.faces.begin(), w.faces.end());
  return w;
}

namespace {

Rational bound1_term(const PolygonalComplex& X, FaceId f) {
  return Rational(X.min_edge_degree(f), X.max_edge_degree(f)) * (Rational(1) - Rational(6, X.boundary_length(f)));
}

Rational bound2_term(const PolygonalComplex& X, FaceId f) {
  return Rational(X.min_edge_degree(f) - 2, X.face_degree(f));
}

}  // namespace

CheegerBounds cheeger_lower_bounds(const PolygonalComplex& X, std::optional<FaceId> center, int R) {
  CheegerBounds b;
  bool first = true;
  for (FaceId f = 0; f < static_cast<FaceId>(X.num_faces()); ++f) {
    if (!X.face_complete(f)) continue;
    Rational t1 = bound1_term(X, f), t2 = bound2_term(X, f);
    if (first || t1 < b.bound1) b.bound1 = t1, b.bound1_face = f;
    if (first || t2 < b.bound2) b.bound2 = t2, b.bound2_face = f;
    first = false;
    ++b.faces;
  }
  if (first) throw PreconditionError("no trusted faces");
  if (center && R >= 1) {
    SphereStructure S = spheres(X, *center, R);
    for (std::size_t i = 0; i < S.faces.size(); ++i) {
      FaceId f = S.faces[i];
      if (S.level[i] >= R) continue;
      Rational c(S.forward[i] - S.backward[i], X.face_degree(f));
      if (!b.certificate || c < *b.certificate) b.certificate = c, b.certificate_face = f;
    }
  }
  return b;
}

std::optional<Rational> best_lower_bound(const CheegerBounds& b) {
  Rational best = std::max(b.bound1, b.bound2);
  if (b.certificate && *b.certificate >= 0) best = std::max(best, *b.certificate);
  if (best > 0) return best;
  return std::nullopt;
}

std::vector<Rational> cheeger_at_infinity(const PolygonalComplex& X, FaceId o, int R) {
  SphereStructure S = spheres(X, o, R);
  std::vector<std::optional<Rational>> inf(std::max(R, 0));
  for (std::size_t i = 0; i < S.faces.size(); ++i) {
    Rational t = bound1_term(X, S.faces[i]);
    for (int r = 0; r < S.level[i] && r < R; ++r) {
      if (!inf[r] || t < *inf[r]) inf[r] = t;
    }
  }
  std::vector<Rational> out;
  for (auto& x : inf) {
    if (!x) break;
    out.push_back(*x);
  }
  return out;
}

}  // namespace curvcx
