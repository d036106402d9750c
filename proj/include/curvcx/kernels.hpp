#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "curvcx/core.hpp"

// Hot loops in two forms: a plain serial reference and an OpenMP version.
// Tests require both to agree; bench/ compares their speed.
namespace curvcx::kernels {

/// Depth-limited BFS on the built dual graph with reusable scratch space.
class LocalBfs {
 public:
  explicit LocalBfs(std::size_t num_faces) : dist_(num_faces, -1) {}
  /// Visits faces within `depth` of src; `allowed` (if nonempty) masks faces.
  void run(const PolygonalComplex& X, FaceId src, int depth, std::span<const char> allowed = {});
  int dist(FaceId f) const { return dist_[f]; }
  std::span<const FaceId> order() const { return order_; }

 private:
  std::vector<int> dist_;
  std::vector<FaceId> order_;
};

/// Row-major n x n matrix of built distances between sample faces (-1 when
/// unreachable).
std::vector<int> pairwise_distances_serial(const PolygonalComplex& X, std::span<const FaceId> sample);
std::vector<int> pairwise_distances_parallel(const PolygonalComplex& X, std::span<const FaceId> sample);

/// Twice the four-point δ of an n x n distance matrix.
std::int64_t four_point_twice_delta_serial(std::span<const int> D, std::size_t n);
std::int64_t four_point_twice_delta_parallel(std::span<const int> D, std::size_t n);

struct BigonScan {
  std::uint64_t pairs = 0;
  int max_certificate = 0;
  FaceId cert_from = -1, cert_to = -1;
  /// Largest distance inside one interval layer, capped at 2.
  int max_spread = 0;
  FaceId spread_from = -1, spread_to = -1;
  /// Pairs skipped because their interval was not fully built.
  std::uint64_t inexact = 0;
};

/// All pairs f < g of `faces` with 1 <= d(f,g) <= max_n.
BigonScan bigon_scan_serial(const PolygonalComplex& X, std::span<const FaceId> faces,
                            std::span<const int> trusted_radius, int max_n);
BigonScan bigon_scan_parallel(const PolygonalComplex& X, std::span<const FaceId> faces,
                              std::span<const int> trusted_radius, int max_n);

/// Subset search data: region-local adjacency bitmasks and true degrees.
struct CheegerProblem {
  std::vector<std::uint64_t> neighbors;
  std::vector<std::int64_t> degree;  // |f|, also the volume contribution
  std::size_t size() const { return degree.size(); }
};

struct CheegerScan {
  std::int64_t boundary = 0;
  std::int64_t volume = 0;
  std::uint64_t mask = 0;
  std::uint64_t subsets = 0;
};

/// Every nonempty subset (n <= 30) up to max_size elements.
CheegerScan cheeger_scan_serial(const CheegerProblem& P, std::size_t max_size);
/// Connected subsets only, rooted at their smallest element, parallel over roots.
CheegerScan cheeger_scan_parallel(const CheegerProblem& P, std::size_t max_size);

/// Dirichlet Laplacian on `ball`: diagonal |f|, -1 for each adjacency inside.
Eigen::MatrixXd laplacian_serial(const PolygonalComplex& X, std::span<const FaceId> ball);
Eigen::MatrixXd laplacian_parallel(const PolygonalComplex& X, std::span<const FaceId> ball);

}  // namespace curvcx::kernels
