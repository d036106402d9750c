#include "curvcx/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <limits>

#include "curvcx/errors.hpp"
#include "curvcx/metric.hpp"

namespace curvcx::kernels {

void LocalBfs::run(const PolygonalComplex& X, FaceId src, int depth, std::span<const char> allowed) {
  for (FaceId f : order_) dist_[f] = -1;
  order_.clear();
  dist_[src] = 0;
  order_.push_back(src);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    FaceId f = order_[head];
    if (dist_[f] == depth) continue;
    for (FaceId g : X.face_neighbors(f)) {
      if (dist_[g] >= 0 || (!allowed.empty() && !allowed[g])) continue;
      dist_[g] = dist_[f] + 1;
      order_.push_back(g);
    }
  }
}

namespace {

void fill_row(const PolygonalComplex& X, std::span<const FaceId> sample, std::size_t i, LocalBfs& bfs,
              std::vector<int>& D) {
  bfs.run(X, sample[i], std::numeric_limits<int>::max());
  for (std::size_t j = 0; j < sample.size(); ++j) D[i * sample.size() + j] = bfs.dist(sample[j]);
}

std::int64_t quad_defect(std::span<const int> D, std::size_t n, std::size_t i, std::size_t j, std::size_t k,
                         std::size_t l) {
  std::int64_t s1 = D[i * n + j] + D[k * n + l];
  std::int64_t s2 = D[i * n + k] + D[j * n + l];
  std::int64_t s3 = D[i * n + l] + D[j * n + k];
  if (s1 < s2) std::swap(s1, s2);
  if (s2 < s3) std::swap(s2, s3);
  if (s1 < s2) std::swap(s1, s2);
  return s1 - s2;
}

std::int64_t four_point_row(std::span<const int> D, std::size_t n, std::size_t i) {
  std::int64_t best = 0;
  for (std::size_t j = i + 1; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      for (std::size_t l = k + 1; l < n; ++l) best = std::max(best, quad_defect(D, n, i, j, k, l));
    }
  }
  return best;
}

struct BigonScratch {
  explicit BigonScratch(std::size_t F) : bfs(F), stamp(F, 0) {}
  LocalBfs bfs;
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  std::vector<FaceId> layer, next;
};

bool adjacent(const PolygonalComplex& X, FaceId a, FaceId b) {
  auto nb = X.face_neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool pair_before(FaceId f1, FaceId g1, FaceId f2, FaceId g2) {
  return f1 != f2 ? f1 < f2 : g1 < g2;
}

void merge(BigonScan& into, const BigonScan& part) {
  into.pairs += part.pairs;
  into.inexact += part.inexact;
  if (part.cert_from >= 0 &&
      (part.max_certificate > into.max_certificate ||
       (part.max_certificate == into.max_certificate &&
        (into.cert_from < 0 || pair_before(part.cert_from, part.cert_to, into.cert_from, into.cert_to))))) {
    into.max_certificate = part.max_certificate;
    into.cert_from = part.cert_from;
    into.cert_to = part.cert_to;
  }
  if (part.spread_from >= 0 &&
      (part.max_spread > into.max_spread ||
       (part.max_spread == into.max_spread &&
        (into.spread_from < 0 || pair_before(part.spread_from, part.spread_to, into.spread_from, into.spread_to))))) {
    into.max_spread = part.max_spread;
    into.spread_from = part.spread_from;
    into.spread_to = part.spread_to;
  }
}

void scan_source(const PolygonalComplex& X, FaceId f, const std::vector<char>& in_set,
                 std::span<const int> radius, int max_n, BigonScratch& s, BigonScan& out) {
  s.bfs.run(X, f, max_n);
  for (FaceId g : s.bfs.order()) {
    int n = s.bfs.dist(g);
    if (n == 0 || g < f || !in_set[g]) continue;
    ++out.pairs;
    if (!interval_exact(radius[f], radius[g], n)) {
      ++out.inexact;
      continue;
    }
    // Walk back from g through faces one step closer to f.
    ++s.epoch;
    s.layer.assign(1, g);
    int cert = 1, spread = 0;
    for (int k = n; k > 0; --k) {
      s.next.clear();
      for (FaceId h : s.layer) {
        for (FaceId w : X.face_neighbors(h)) {
          if (s.bfs.dist(w) == k - 1 && s.stamp[w] != s.epoch) {
            s.stamp[w] = s.epoch;
            s.next.push_back(w);
          }
        }
      }
      std::swap(s.layer, s.next);
      cert = std::max(cert, static_cast<int>(s.layer.size()));
      for (std::size_t a = 0; a < s.layer.size() && spread < 2; ++a) {
        for (std::size_t b = a + 1; b < s.layer.size(); ++b) {
          spread = std::max(spread, adjacent(X, s.layer[a], s.layer[b]) ? 1 : 2);
        }
      }
    }
    BigonScan one;
    one.max_certificate = cert;
    one.cert_from = f;
    one.cert_to = g;
    one.max_spread = spread;
    one.spread_from = f;
    one.spread_to = g;
    merge(out, one);
  }
}

std::vector<char> membership(const PolygonalComplex& X, std::span<const FaceId> faces) {
  std::vector<char> in(X.num_faces(), 0);
  for (FaceId f : faces) in.at(f) = 1;
  return in;
}

struct SubsetBest {
  std::int64_t b = 1, v = 0;  // ratio b/v; v == 0 means none yet
  std::uint64_t mask = 0;
  std::uint64_t count = 0;

  void offer(std::int64_t nb, std::int64_t nv, std::uint64_t m) {
    ++count;
    if (nv <= 0) return;
    if (v == 0) {
      b = nb, v = nv, mask = m;
      return;
    }
    __int128 lhs = static_cast<__int128>(nb) * v, rhs = static_cast<__int128>(b) * nv;
    if (lhs < rhs || (lhs == rhs && m < mask)) b = nb, v = nv, mask = m;
  }
  void merge(const SubsetBest& o) {
    std::uint64_t c = count + o.count;
    if (o.v != 0) offer(o.b, o.v, o.mask);
    count = c;
  }
};

void esu(const CheegerProblem& P, std::size_t max_size, std::uint64_t above, std::uint64_t sub, std::uint64_t ext,
         std::uint64_t nbhd, std::int64_t b, std::int64_t v, SubsetBest& best) {
  best.offer(b, v, sub);
  if (static_cast<std::size_t>(std::popcount(sub)) == max_size) return;
  while (ext) {
    int w = std::countr_zero(ext);
    ext &= ext - 1;
    std::uint64_t excl = P.neighbors[w] & ~nbhd & above;
    std::int64_t inside = std::popcount(P.neighbors[w] & sub);
    esu(P, max_size, above, sub | (1ULL << w), ext | excl, nbhd | P.neighbors[w],
        b + P.degree[w] - 2 * inside, v + P.degree[w], best);
  }
}

}  // namespace

std::vector<int> pairwise_distances_serial(const PolygonalComplex& X, std::span<const FaceId> sample) {
  std::vector<int> D(sample.size() * sample.size(), -1);
  LocalBfs bfs(X.num_faces());
  for (std::size_t i = 0; i < sample.size(); ++i) fill_row(X, sample, i, bfs, D);
  return D;
}

std::vector<int> pairwise_distances_parallel(const PolygonalComplex& X, std::span<const FaceId> sample) {
  std::vector<int> D(sample.size() * sample.size(), -1);
  const auto n = static_cast<std::int64_t>(sample.size());
#pragma omp parallel
  {
    LocalBfs bfs(X.num_faces());
#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) fill_row(X, sample, static_cast<std::size_t>(i), bfs, D);
  }
  return D;
}

std::int64_t four_point_twice_delta_serial(std::span<const int> D, std::size_t n) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, four_point_row(D, n, i));
  return best;
}

std::int64_t four_point_twice_delta_parallel(std::span<const int> D, std::size_t n) {
  std::int64_t best = 0;
  const auto m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (std::int64_t i = 0; i < m; ++i) best = std::max(best, four_point_row(D, n, static_cast<std::size_t>(i)));
  return best;
}

BigonScan bigon_scan_serial(const PolygonalComplex& X, std::span<const FaceId> faces,
                            std::span<const int> trusted_radius, int max_n) {
  auto in_set = membership(X, faces);
  BigonScratch s(X.num_faces());
  BigonScan out;
  for (FaceId f : faces) scan_source(X, f, in_set, trusted_radius, max_n, s, out);
  return out;
}

BigonScan bigon_scan_parallel(const PolygonalComplex& X, std::span<const FaceId> faces,
                              std::span<const int> trusted_radius, int max_n) {
  auto in_set = membership(X, faces);
  BigonScan out;
  const auto n = static_cast<std::int64_t>(faces.size());
#pragma omp parallel
  {
    BigonScratch s(X.num_faces());
    BigonScan part;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < n; ++i) scan_source(X, faces[i], in_set, trusted_radius, max_n, s, part);
#pragma omp critical
    merge(out, part);
  }
  return out;
}

CheegerScan cheeger_scan_serial(const CheegerProblem& P, std::size_t max_size) {
  const std::size_t n = P.size();
  if (n > 30) throw BudgetExceededError("serial subset scan is limited to 30 faces");
  SubsetBest best;
  // Gray-code walk: one face toggles per step.
  std::uint64_t mask = 0;
  std::int64_t b = 0, v = 0;
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    int i = std::countr_zero(step);
    std::uint64_t bit = 1ULL << i;
    std::int64_t inside = std::popcount(P.neighbors[i] & (mask & ~bit));
    if (mask & bit) {
      mask &= ~bit;
      b -= P.degree[i] - 2 * inside;
      v -= P.degree[i];
    } else {
      mask |= bit;
      b += P.degree[i] - 2 * inside;
      v += P.degree[i];
    }
    if (static_cast<std::size_t>(std::popcount(mask)) <= max_size) best.offer(b, v, mask);
  }
  return {best.b, best.v, best.mask, best.count};
}

CheegerScan cheeger_scan_parallel(const CheegerProblem& P, std::size_t max_size) {
  const std::size_t n = P.size();
  if (n > 64) throw BudgetExceededError("subset scan is limited to 64 faces");
  if (max_size == 0) return {};
  SubsetBest best;
  const auto m = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    SubsetBest part;
#pragma omp for schedule(dynamic) nowait
    for (std::int64_t r = 0; r < m; ++r) {
      std::uint64_t above = r == 63 ? 0 : ~((2ULL << r) - 1);
      std::uint64_t root = 1ULL << r;
      esu(P, max_size, above, root, P.neighbors[r] & above, P.neighbors[r] | root, P.degree[r], P.degree[r], part);
    }
#pragma omp critical
    best.merge(part);
  }
  return {best.b, best.v, best.mask, best.count};
}

namespace {

std::vector<int> row_index(const PolygonalComplex& X, std::span<const FaceId> ball) {
  std::vector<int> index(X.num_faces(), -1);
  for (std::size_t i = 0; i < ball.size(); ++i) index.at(ball[i]) = static_cast<int>(i);
  return index;
}

void fill_laplacian_row(const PolygonalComplex& X, std::span<const FaceId> ball, const std::vector<int>& index,
                        std::size_t i, Eigen::MatrixXd& L) {
  FaceId f = ball[i];
  L(i, i) = static_cast<double>(X.face_degree(f));
  for (FaceId g : X.face_neighbors(f)) {
    if (index[g] >= 0) L(i, index[g]) -= 1.0;
  }
}

}  // namespace

Eigen::MatrixXd laplacian_serial(const PolygonalComplex& X, std::span<const FaceId> ball) {
  auto index = row_index(X, ball);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(ball.size(), ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) fill_laplacian_row(X, ball, index, i, L);
  return L;
}

Eigen::MatrixXd laplacian_parallel(const PolygonalComplex& X, std::span<const FaceId> ball) {
  auto index = row_index(X, ball);
  for (FaceId f : ball) X.face_degree(f);  // surface incomplete cells before the parallel region
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(ball.size(), ball.size());
  const auto n = static_cast<std::int64_t>(ball.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) fill_laplacian_row(X, ball, index, static_cast<std::size_t>(i), L);
  return L;
}

}  // namespace curvcx::kernels
