#include <algorithm>
#include <map>

#include "curvcx/core.hpp"
#include "curvcx/errors.hpp"
#include "curvcx/metric.hpp"

namespace curvcx {

namespace {

constexpr std::size_t kMaxListed = 32;

void note_offense(ValidationReport& r, Offense o) {
  r.pass = false;
  if (r.offending.size() < kMaxListed) r.offending.push_back(std::move(o));
}

}  // namespace

std::vector<ValidationReport> validate_pcps(const PolygonalComplex& X, std::span<const Apartment> apartments, int R,
                                            FaceId o) {
  SphereStructure S = spheres(X, o, R);
  const std::string ball = "B_" + std::to_string(R) + "(" + std::to_string(o) + ")";

  // (PCPS1): per-face bitsets of the apartments containing it.
  const std::size_t words = (apartments.size() + 63) / 64;
  std::map<FaceId, std::vector<std::uint64_t>> holders;
  for (FaceId f : S.faces) holders[f].assign(words, 0);
  for (std::size_t a = 0; a < apartments.size(); ++a) {
    for (FaceId f : apartments[a].faces()) {
      auto it = holders.find(f);
      if (it != holders.end()) it->second[a / 64] |= 1ULL << (a % 64);
    }
  }
  ValidationReport p1{"PCPS1", true, {}, "all face pairs of " + ball};
  std::size_t missing = 0;
  for (std::size_t i = 0; i < S.faces.size(); ++i) {
    const auto& hi = holders[S.faces[i]];
    for (std::size_t j = i; j < S.faces.size(); ++j) {
      const auto& hj = holders[S.faces[j]];
      bool shared = false;
      for (std::size_t w = 0; w < words && !shared; ++w) shared = (hi[w] & hj[w]) != 0;
      if (!shared) {
        ++missing;
        note_offense(p1, {"face-pair", {S.faces[i], S.faces[j]}, "no apartment contains both"});
      }
    }
  }
  if (missing) p1.scope += "; " + std::to_string(missing) + " uncovered pairs";

  // (PCPS2): intervals between faces of the half ball stay in the apartment.
  const int half = R / 2;
  std::vector<FaceId> inner;
  for (std::size_t i = 0; i < S.faces.size(); ++i) {
    if (S.level[i] <= half) inner.push_back(S.faces[i]);
  }
  std::sort(inner.begin(), inner.end());
  FaceMetric M(std::shared_ptr<const PolygonalComplex>(&X, [](const PolygonalComplex*) {}));
  std::map<std::pair<FaceId, FaceId>, std::vector<FaceId>> intervals;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t j = i + 1; j < inner.size(); ++j) intervals[{inner[i], inner[j]}] = M.interval(inner[i], inner[j]).members();
  }
  ValidationReport p2{"PCPS2", true, {}, "interval criterion on apartment faces of B_" + std::to_string(half) + "(" + std::to_string(o) + ")"};
  for (std::size_t a = 0; a < apartments.size(); ++a) {
    std::vector<FaceId> mine;
    for (FaceId f : inner) {
      if (apartments[a].contains_face(f)) mine.push_back(f);
    }
    for (std::size_t i = 0; i < mine.size(); ++i) {
      for (std::size_t j = i + 1; j < mine.size(); ++j) {
        for (FaceId h : intervals[{mine[i], mine[j]}]) {
          if (!apartments[a].contains_face(h)) {
            note_offense(p2, {"face", {static_cast<std::int64_t>(a), mine[i], mine[j], h},
                              "apartment misses a face on a geodesic between two of its faces"});
            break;
          }
        }
      }
    }
  }

  // (PCPS3): each apartment is a planar tessellation on its trusted part.
  ValidationReport p3{"PCPS3", true, {}, "tessellation checks on the apartment faces of " + ball};
  std::vector<char> in_ball(X.num_faces(), 0);
  for (FaceId f : S.faces) in_ball[f] = 1;
  for (std::size_t a = 0; a < apartments.size(); ++a) {
    std::vector<FaceId> scope;
    for (FaceId f : apartments[a].faces()) {
      if (in_ball[f]) scope.push_back(f);
    }
    if (scope.empty()) continue;
    TessellationCheck c = validate_tessellation(apartments[a], scope);
    for (const auto& r : c.reports) {
      if (r.pass) continue;
      const Offense& first = r.offending.front();
      std::vector<std::int64_t> cells{static_cast<std::int64_t>(a)};
      cells.insert(cells.end(), first.cells.begin(), first.cells.end());
      note_offense(p3, {first.kind, cells, "apartment " + std::to_string(a) + " fails " + r.axiom + ": " + first.detail});
    }
  }
  return {p1, p2, p3};
}

}  // namespace curvcx
