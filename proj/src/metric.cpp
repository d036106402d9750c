#include "curvcx/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "curvcx/errors.hpp"
#include "curvcx/kernels.hpp"

namespace curvcx {

std::vector<FaceId> GeodesicInterval::members() const {
  std::vector<FaceId> all;
  for (const auto& layer : layers) all.insert(all.end(), layer.begin(), layer.end());
  std::sort(all.begin(), all.end());
  return all;
}

bool GeodesicInterval::contains(FaceId h) const {
  for (const auto& layer : layers) {
    if (std::binary_search(layer.begin(), layer.end(), h)) return true;
  }
  return false;
}

// A shorter true path of length m < n would run through faces within
// radius_f + 1 of f or radius_g + 1 of g; all of those are built.
bool distance_exact(int radius_f, int radius_g, int n) {
  return static_cast<std::int64_t>(radius_f) + radius_g + 4 >= n;
}

bool interval_exact(int radius_f, int radius_g, int n) {
  return static_cast<std::int64_t>(radius_f) + radius_g + 3 >= n;
}

FaceMetric::FaceMetric(std::shared_ptr<const PolygonalComplex> X) : X_(std::move(X)) {}

std::shared_ptr<const std::vector<int>> FaceMetric::built_distances(FaceId f) const {
  if (f < 0 || static_cast<std::size_t>(f) >= X_->num_faces()) {
    throw PreconditionError("face " + std::to_string(f) + " does not exist");
  }
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
  }
  auto dist = std::make_shared<std::vector<int>>(X_->num_faces(), -1);
  std::vector<FaceId> queue{f};
  (*dist)[f] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    FaceId h = queue[head];
    for (FaceId g : X_->face_neighbors(h)) {
      if ((*dist)[g] < 0) {
        (*dist)[g] = (*dist)[h] + 1;
        queue.push_back(g);
      }
    }
  }
  std::unique_lock lock(mutex_);
  auto [it, fresh] = cache_.emplace(f, std::move(dist));
  return it->second;
}

const std::vector<int>& FaceMetric::trusted_radii() const {
  std::call_once(radii_once_, [this] {
    const std::size_t F = X_->num_faces();
    radii_.assign(F, kUnbounded);
    if (!X_->truncated()) return;
    // Multi-source BFS from the untrusted faces.
    std::vector<int> d(F, -1);
    std::vector<FaceId> queue;
    for (std::size_t f = 0; f < F; ++f) {
      if (!X_->face_complete(static_cast<FaceId>(f))) {
        d[f] = 0;
        queue.push_back(static_cast<FaceId>(f));
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      FaceId h = queue[head];
      for (FaceId g : X_->face_neighbors(h)) {
        if (d[g] < 0) {
          d[g] = d[h] + 1;
          queue.push_back(g);
        }
      }
    }
    for (std::size_t f = 0; f < F; ++f) radii_[f] = d[f] < 0 ? kUnbounded : d[f] - 1;
  });
  return radii_;
}

int FaceMetric::trusted_radius(FaceId f) const { return trusted_radii().at(f); }

int FaceMetric::distance(FaceId f, FaceId g) const {
  auto dist = built_distances(f);
  int n = dist->at(g);
  if (n < 0) {
    if (X_->truncated()) {
      throw IncompleteCellError("faces " + std::to_string(f) + " and " + std::to_string(g) +
                                " are not connected inside the built region");
    }
    throw PreconditionError("faces " + std::to_string(f) + " and " + std::to_string(g) + " are disconnected");
  }
  if (!distance_exact(trusted_radius(f), trusted_radius(g), n)) {
    throw IncompleteCellError("trusted radius around faces " + std::to_string(f) + " and " + std::to_string(g) +
                              " is too small for distance " + std::to_string(n));
  }
  return n;
}

GeodesicInterval FaceMetric::interval(FaceId f, FaceId g) const {
  int n = distance(f, g);
  if (!interval_exact(trusted_radius(f), trusted_radius(g), n)) {
    throw IncompleteCellError("trusted radius around faces " + std::to_string(f) + " and " + std::to_string(g) +
                              " is too small for their interval");
  }
  auto df = built_distances(f);
  GeodesicInterval I;
  I.from = f;
  I.to = g;
  I.length = n;
  I.layers.assign(n + 1, {});
  I.layers[n] = {g};
  for (int k = n; k > 0; --k) {
    for (FaceId h : I.layers[k]) {
      for (FaceId w : X_->face_neighbors(h)) {
        if ((*df)[w] == k - 1) I.layers[k - 1].push_back(w);
      }
    }
    auto& L = I.layers[k - 1];
    std::sort(L.begin(), L.end());
    L.erase(std::unique(L.begin(), L.end()), L.end());
  }
  return I;
}

SphereStructure spheres(const PolygonalComplex& X, FaceId o, int R) {
  if (R < 0) throw PreconditionError("negative radius");
  kernels::LocalBfs bfs(X.num_faces());
  bfs.run(X, o, R + 1);
  SphereStructure S;
  S.center = o;
  S.radius = R;
  S.spheres.assign(R + 1, {});
  for (FaceId f : bfs.order()) {
    int d = bfs.dist(f);
    if (d > R) continue;
    if (!X.face_complete(f)) {
      throw IncompleteCellError("face " + std::to_string(f) + " at distance " + std::to_string(d) + " is not trusted");
    }
    S.spheres[d].push_back(f);
  }
  for (auto& s : S.spheres) std::sort(s.begin(), s.end());
  for (int k = 0; k <= R; ++k) {
    for (FaceId f : S.spheres[k]) {
      int fwd = 0, bwd = 0, lat = 0;
      for (FaceId g : X.face_neighbors(f)) {
        int d = bfs.dist(g);
        if (d == k + 1) ++fwd;
        else if (d == k - 1) ++bwd;
        else if (d == k) ++lat;
      }
      S.faces.push_back(f);
      S.level.push_back(k);
      S.forward.push_back(fwd);
      S.backward.push_back(bwd);
      S.lateral.push_back(lat);
    }
  }
  return S;
}

std::vector<FaceId> cut_locus(const PolygonalComplex& X, FaceId o, int R) {
  SphereStructure S = spheres(X, o, R);
  std::vector<FaceId> cut;
  for (std::size_t i = 0; i < S.faces.size(); ++i) {
    if (S.level[i] <= R - 1 && S.forward[i] == 0) cut.push_back(S.faces[i]);
  }
  std::sort(cut.begin(), cut.end());
  return cut;
}

int bigon_certificate(const FaceMetric& M, FaceId f, FaceId g) {
  GeodesicInterval I = M.interval(f, g);
  std::size_t best = 0;
  for (const auto& layer : I.layers) best = std::max(best, layer.size());
  return static_cast<int>(best);
}

BigonEnumeration enumerate_bigons(const FaceMetric& M, FaceId f, FaceId g, std::uint64_t cap) {
  GeodesicInterval I = M.interval(f, g);
  const PolygonalComplex& X = M.complex();
  const int n = I.length;
  // Number of geodesics from f to each member, layer by layer.
  std::unordered_map<FaceId, std::uint64_t> ways{{f, 1}};
  constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max() / 4;
  for (int k = 1; k <= n; ++k) {
    for (FaceId h : I.layers[k]) {
      std::uint64_t w = 0;
      for (FaceId p : I.layers[k - 1]) {
        auto nb = X.face_neighbors(h);
        if (std::binary_search(nb.begin(), nb.end(), p)) w = std::min(kSat, w + ways[p]);
      }
      ways[h] = w;
    }
  }
  BigonEnumeration out;
  out.geodesic_count = ways[g];
  if (out.geodesic_count > cap) {
    throw BudgetExceededError(std::to_string(out.geodesic_count) + " geodesics exceed the cap of " +
                              std::to_string(cap));
  }
  // Depth-first enumeration from g back to f.
  std::vector<FaceId> path(n + 1);
  path[n] = g;
  std::vector<std::vector<FaceId>> found;
  auto rec = [&](auto& self, int k) -> void {
    if (k == 0) {
      found.push_back(path);
      return;
    }
    auto nb = X.face_neighbors(path[k]);
    for (FaceId p : I.layers[k - 1]) {
      if (std::binary_search(nb.begin(), nb.end(), p)) {
        path[k - 1] = p;
        self(self, k - 1);
      }
    }
  };
  rec(rec, n);
  std::sort(found.begin(), found.end());
  out.geodesics = std::move(found);
  out.spread.assign(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    // Faces used at index k; every pair of them occurs in some bigon.
    std::vector<FaceId> used;
    for (const auto& gamma : out.geodesics) used.push_back(gamma[k]);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (std::size_t a = 0; a < used.size(); ++a) {
      for (std::size_t b = a + 1; b < used.size(); ++b) {
        out.spread[k] = std::max(out.spread[k], M.distance(used[a], used[b]));
      }
    }
    out.delta_bigon = std::max(out.delta_bigon, out.spread[k]);
  }
  return out;
}

Rational four_point_delta(const FaceMetric& M, std::span<const FaceId> sample, double budget) {
  const std::size_t n = sample.size();
  if (std::pow(static_cast<double>(n), 4) > budget) {
    throw BudgetExceededError("four-point scan over " + std::to_string(n) + " faces exceeds the budget");
  }
  const PolygonalComplex& X = M.complex();
  std::vector<int> D = kernels::pairwise_distances_parallel(X, sample);
  const auto& radius = M.trusted_radii();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int d = D[i * n + j];
      if (d < 0 || !distance_exact(radius[sample[i]], radius[sample[j]], d)) {
        throw IncompleteCellError("distance between faces " + std::to_string(sample[i]) + " and " +
                                  std::to_string(sample[j]) + " is not certified by the trusted region");
      }
    }
  }
  return Rational(kernels::four_point_twice_delta_parallel(D, n), 2);
}

}  // namespace curvcx
