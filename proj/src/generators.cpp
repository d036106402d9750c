#include "curvcx/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "curvcx/errors.hpp"

namespace curvcx {

std::size_t default_face_cap() {
  if (const char* env = std::getenv("CURVCX_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

namespace {

std::uint64_t key2(std::int64_t a, std::int64_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

/// Accumulates faces given as vertex cycles, creating edges on first use.
struct CellBuilder {
  std::int64_t vertex_count = 0;
  std::vector<std::array<VertexId, 2>> edges;
  std::vector<std::vector<VertexId>> faces;
  std::unordered_map<std::uint64_t, EdgeId> edge_index;

  EdgeId edge(VertexId a, VertexId b) {
    auto [it, fresh] = edge_index.emplace(key2(a, b), static_cast<EdgeId>(edges.size()));
    if (fresh) edges.push_back({a, b});
    return it->second;
  }
  FaceId face(std::vector<VertexId> cycle) {
    for (std::size_t i = 0; i < cycle.size(); ++i) edge(cycle[i], cycle[(i + 1) % cycle.size()]);
    faces.push_back(std::move(cycle));
    return static_cast<FaceId>(faces.size() - 1);
  }
  RawComplex raw() const {
    RawComplex r;
    r.vertex_count = vertex_count;
    r.edges = edges;
    r.faces = faces;
    return r;
  }
};

std::vector<int> bfs_levels(const RawComplex& raw, FaceId src) {
  std::unordered_map<std::uint64_t, std::vector<FaceId>> by_edge;
  for (std::size_t f = 0; f < raw.faces.size(); ++f) {
    const auto& c = raw.faces[f];
    for (std::size_t i = 0; i < c.size(); ++i) by_edge[key2(c[i], c[(i + 1) % c.size()])].push_back(static_cast<FaceId>(f));
  }
  std::vector<int> d(raw.faces.size(), -1);
  std::vector<FaceId> queue{src};
  d[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    FaceId f = queue[head];
    const auto& c = raw.faces[f];
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (FaceId g : by_edge[key2(c[i], c[(i + 1) % c.size()])]) {
        if (d[g] < 0) {
          d[g] = d[f] + 1;
          queue.push_back(g);
        }
      }
    }
  }
  return d;
}

/// Marks trusted faces and records true degrees on everything else.
void attach_truncation(RawComplex& raw, const std::vector<char>& trusted, const std::function<Degree(VertexId)>& vdeg,
                       const std::function<Degree(EdgeId)>& edeg, const std::function<Degree(FaceId)>& fdeg) {
  Truncation t;
  std::vector<char> vclosed(raw.vertex_count, 0), eclosed(raw.edges.size(), 0);
  std::unordered_map<std::uint64_t, EdgeId> index;
  for (std::size_t e = 0; e < raw.edges.size(); ++e) index[key2(raw.edges[e][0], raw.edges[e][1])] = static_cast<EdgeId>(e);
  for (std::size_t f = 0; f < raw.faces.size(); ++f) {
    if (!trusted[f]) continue;
    t.trusted_faces.push_back(static_cast<FaceId>(f));
    const auto& c = raw.faces[f];
    for (std::size_t i = 0; i < c.size(); ++i) {
      vclosed[c[i]] = 1;
      eclosed[index[key2(c[i], c[(i + 1) % c.size()])]] = 1;
    }
  }
  for (VertexId v = 0; v < raw.vertex_count; ++v) {
    if (!vclosed[v]) t.true_degrees.vertex[v] = vdeg(v);
  }
  for (std::size_t e = 0; e < raw.edges.size(); ++e) {
    if (!eclosed[e]) t.true_degrees.edge[static_cast<EdgeId>(e)] = edeg(static_cast<EdgeId>(e));
  }
  for (std::size_t f = 0; f < raw.faces.size(); ++f) {
    if (!trusted[f]) t.true_degrees.face[static_cast<FaceId>(f)] = fdeg(static_cast<FaceId>(f));
  }
  raw.truncation = std::move(t);
}

// ---------------------------------------------------------------------------
// Layered growth of planar tessellations around a center face.

struct GrowthRule {
  virtual ~GrowthRule() = default;
  virtual int face_size(int layer) const = 0;
  virtual int degree_of(int type) const = 0;
  virtual std::vector<int> center_types() const = 0;
  /// Types of `count` new vertices continuing a face whose cycle starts with
  /// the path types; new vertices follow the path in cycle order.
  virtual std::vector<int> continue_types(std::span<const int> path, int layer, int count) const = 0;
};

/// Every face carries the cyclic type pattern up to rotation and reflection.
struct PatternRule : GrowthRule {
  std::vector<int> pattern;
  std::vector<int> degrees;
  PatternRule(std::vector<int> p, std::vector<int> d) : pattern(std::move(p)), degrees(std::move(d)) {}
  int face_size(int) const override { return static_cast<int>(pattern.size()); }
  int degree_of(int type) const override { return degrees.at(type); }
  std::vector<int> center_types() const override { return pattern; }
  std::vector<int> continue_types(std::span<const int> path, int, int count) const override {
    const int p = static_cast<int>(pattern.size());
    for (int dir : {1, -1}) {
      for (int s = 0; s < p; ++s) {
        auto at = [&](int i) { return pattern[((s + dir * i) % p + p) % p]; };
        bool ok = true;
        for (std::size_t i = 0; i < path.size() && ok; ++i) ok = at(static_cast<int>(i)) == path[i];
        if (!ok) continue;
        std::vector<int> out;
        for (int i = 0; i < count; ++i) out.push_back(at(static_cast<int>(path.size()) + i));
        return out;
      }
    }
    throw PreconditionError("vertex types along the boundary do not fit the face pattern");
  }
};

/// Squares near the center, octagons further out; vertices made by core faces
/// have degree 4, the others degree 3.
struct MixedRule : GrowthRule {
  int core;
  explicit MixedRule(int c) : core(c) {}
  int face_size(int layer) const override { return layer <= core ? 4 : 8; }
  int degree_of(int type) const override { return type == 0 ? 4 : 3; }
  std::vector<int> center_types() const override { return {0, 0, 0, 0}; }
  std::vector<int> continue_types(std::span<const int>, int layer, int count) const override {
    return std::vector<int>(count, layer < core ? 0 : 1);
  }
};

class Growth {
 public:
  Growth(const GrowthRule& rule, std::size_t cap) : rule_(rule), cap_(cap) {}

  RawComplex run(int R) {
    start();
    for (;;) {
      // Open vertices on faces within R + 1 of the center, oldest first.
      auto d = bfs_levels(cells_.raw(), 0);
      std::vector<VertexId> snapshot;
      for (std::size_t f = 0; f < d.size(); ++f) {
        if (d[f] < 0 || d[f] > R + 1) continue;
        for (VertexId v : cells_.faces[f]) {
          if (on_boundary_[v]) snapshot.push_back(v);
        }
      }
      if (snapshot.empty()) break;
      for (VertexId v : snapshot) enqueue(v);
      // Most constrained vertex first, then oldest. A vertex one face short
      // of full is handled before its neighbours can be pushed past it.
      while (!queue_.empty()) {
        VertexId v = queue_.begin()->second;
        dequeue(v);
        if (!on_boundary_[v]) continue;
        add_one(v);
        if (on_boundary_[v]) enqueue(v);
      }
    }
    return finish(R);
  }

 private:
  const GrowthRule& rule_;
  std::size_t cap_;
  std::vector<int> type_, count_;
  std::vector<VertexId> next_, prev_;
  std::vector<char> on_boundary_;
  std::vector<int> layer_;
  CellBuilder cells_;
  std::vector<FaceId> boundary_face_;  // indexed by edge; the unique face of a boundary edge
  std::vector<std::vector<FaceId>> vertex_faces_;
  std::set<std::pair<int, VertexId>> queue_;
  std::vector<int> key_;

  int remaining(VertexId v) const { return rule_.degree_of(type_[v]) - count_[v]; }
  void dequeue(VertexId v) {
    if (key_[v] >= 0) queue_.erase({key_[v], v});
    key_[v] = -1;
  }
  void enqueue(VertexId v) {
    dequeue(v);
    key_[v] = remaining(v);
    queue_.insert({key_[v], v});
  }

  VertexId new_vertex(int type) {
    type_.push_back(type);
    count_.push_back(0);
    next_.push_back(-1);
    prev_.push_back(-1);
    on_boundary_.push_back(1);
    vertex_faces_.emplace_back();
    key_.push_back(-1);
    return static_cast<VertexId>(type_.size() - 1);
  }

  void add_face(const std::vector<VertexId>& cycle, int layer) {
    if (cells_.faces.size() >= cap_) {
      throw BudgetExceededError("face cap of " + std::to_string(cap_) + " reached while generating");
    }
    FaceId f = cells_.face(cycle);
    layer_.push_back(layer);
    boundary_face_.resize(cells_.edges.size(), -1);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      EdgeId e = cells_.edge(cycle[i], cycle[(i + 1) % cycle.size()]);
      boundary_face_[e] = boundary_face_[e] < 0 ? f : -2;
      ++count_[cycle[i]];
      vertex_faces_[cycle[i]].push_back(f);
      if (key_[cycle[i]] >= 0) enqueue(cycle[i]);
      if (count_[cycle[i]] > rule_.degree_of(type_[cycle[i]])) {
        throw PreconditionError("vertex " + std::to_string(cycle[i]) + " received too many faces");
      }
    }
  }

  void start() {
    auto types = rule_.center_types();
    std::vector<VertexId> cyc;
    for (int t : types) cyc.push_back(new_vertex(t));
    const auto k = static_cast<VertexId>(cyc.size());
    for (VertexId i = 0; i < k; ++i) {
      next_[i] = (i + 1) % k;
      prev_[i] = (i + k - 1) % k;
    }
    add_face(cyc, 0);
  }

  bool full(VertexId v, int extra) const { return count_[v] + extra == rule_.degree_of(type_[v]); }

  /// Adds the face across the boundary edge from v to its successor.
  void add_one(VertexId v) {
    {
      std::deque<VertexId> path{v, next_[v]};
      std::size_t guard = 0;
      while (full(path.front(), 1)) {
        path.push_front(prev_[path.front()]);
        if (++guard > type_.size()) throw PreconditionError("boundary closed up during growth");
      }
      while (full(path.back(), 1)) {
        path.push_back(next_[path.back()]);
        if (++guard > type_.size()) throw PreconditionError("boundary closed up during growth");
      }
      if (path.front() == path.back()) throw PreconditionError("boundary closed up during growth");
      int layer = std::numeric_limits<int>::max();
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        EdgeId e = cells_.edge_index.at(key2(path[i], path[i + 1]));
        layer = std::min(layer, layer_.at(boundary_face_.at(e)) + 1);
      }
      const int p = rule_.face_size(layer);
      const int L = static_cast<int>(path.size()) - 1;
      const int fresh = p - (L + 1);
      if (fresh < 0) {
        std::string trace;
        for (VertexId u : path) trace += " " + std::to_string(u) + "(" + std::to_string(count_[u]) + "/" + std::to_string(rule_.degree_of(type_[u])) + ")";
        throw PreconditionError("boundary path longer than the face to be added:" + trace);
      }
      std::vector<int> path_types;
      for (VertexId u : path) path_types.push_back(type_[u]);
      auto types = rule_.continue_types(path_types, layer, fresh);
      std::vector<VertexId> cyc(path.begin(), path.end());
      std::vector<VertexId> added;
      for (int t : types) added.push_back(new_vertex(t));
      // Cycle: u_0..u_L then the new vertices back towards u_0.
      cyc.insert(cyc.end(), added.begin(), added.end());
      if (fresh == 0 && cells_.edge_index.count(key2(path.front(), path.back()))) {
        throw PreconditionError("closing chord already exists");
      }
      add_face(cyc, layer);
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        if (!full(path[i], 0)) throw PreconditionError("interior path vertex left open");
        on_boundary_[path[i]] = 0;
        dequeue(path[i]);
      }
      // New boundary: u_0 -> (added, reversed) -> u_L.
      VertexId cur = path.front();
      for (auto it = added.rbegin(); it != added.rend(); ++it) {
        next_[cur] = *it;
        prev_[*it] = cur;
        cur = *it;
      }
      next_[cur] = path.back();
      prev_[path.back()] = cur;
    }
  }

  RawComplex finish(int R) {
    RawComplex built = cells_.raw();
    auto d = bfs_levels(built, 0);
    std::vector<char> keep(built.faces.size(), 0);
    for (std::size_t f = 0; f < built.faces.size(); ++f) {
      if (d[f] < 0) continue;
      if (d[f] <= R + 2) keep[f] = 1;
      if (d[f] <= R + 1) {
        for (VertexId v : built.faces[f]) {
          for (FaceId g : vertex_faces_[v]) keep[g] = 1;
        }
      }
    }
    std::vector<VertexId> vmap(type_.size(), -1);
    CellBuilder out;
    std::vector<int> out_type;
    std::vector<char> trusted;
    std::vector<int> face_size;
    for (std::size_t f = 0; f < built.faces.size(); ++f) {
      if (!keep[f]) continue;
      std::vector<VertexId> cyc;
      for (VertexId v : built.faces[f]) {
        if (vmap[v] < 0) {
          vmap[v] = static_cast<VertexId>(out.vertex_count++);
          out_type.push_back(type_[v]);
        }
        cyc.push_back(vmap[v]);
      }
      out.face(cyc);
      trusted.push_back(d[f] <= R ? 1 : 0);
      face_size.push_back(static_cast<int>(cyc.size()));
    }
    RawComplex raw = out.raw();
    attach_truncation(
        raw, trusted, [&](VertexId v) { return static_cast<Degree>(rule_.degree_of(out_type[v])); },
        [](EdgeId) { return Degree{2}; }, [&](FaceId f) { return static_cast<Degree>(face_size[f]); });
    raw.center = 0;
    raw.trusted_radius = R;
    raw.apartments.emplace_back();
    for (std::size_t f = 0; f < raw.faces.size(); ++f) raw.apartments[0].push_back(static_cast<FaceId>(f));
    return raw;
  }
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

// ---------------------------------------------------------------------------
// Trees for the product construction. Vertex 0 is the root; edge 0 joins it
// to vertex 1, and edge depth is the distance to edge 0 in the line graph.

struct Tree {
  std::vector<int> parent;       // per vertex
  std::vector<int> parent_edge;  // per vertex
  std::vector<std::array<int, 2>> edges;
  std::vector<int> edge_depth;
  std::vector<int> far_end;  // vertex of edge e further from edge 0
};

Tree build_tree(int degree, int max_depth) {
  Tree T;
  T.parent = {-1, 0};
  T.parent_edge = {-1, 0};
  T.edges = {{0, 1}};
  T.edge_depth = {0};
  T.far_end = {1};
  std::vector<std::pair<int, int>> frontier = {{0, 0}, {1, 0}};  // vertex, depth of edges it spawns - 1
  while (!frontier.empty()) {
    std::vector<std::pair<int, int>> next;
    for (auto [v, k] : frontier) {
      if (k + 1 > max_depth) continue;
      for (int c = 0; c < degree - 1; ++c) {
        int w = static_cast<int>(T.parent.size());
        T.parent.push_back(v);
        T.parent_edge.push_back(static_cast<int>(T.edges.size()));
        T.edges.push_back({v, w});
        T.edge_depth.push_back(k + 1);
        T.far_end.push_back(w);
        next.push_back({w, k + 1});
      }
    }
    frontier = std::move(next);
  }
  return T;
}

/// Edges on the tree path between two vertices.
std::vector<int> tree_path(const Tree& T, int a, int b) {
  auto depth = [&](int v) {
    int d = 0;
    while (T.parent[v] >= 0) v = T.parent[v], ++d;
    return d;
  };
  int da = depth(a), db = depth(b);
  std::vector<int> left, right;
  while (da > db) left.push_back(T.parent_edge[a]), a = T.parent[a], --da;
  while (db > da) right.push_back(T.parent_edge[b]), b = T.parent[b], --db;
  while (a != b) {
    left.push_back(T.parent_edge[a]), a = T.parent[a];
    right.push_back(T.parent_edge[b]), b = T.parent[b];
  }
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

std::vector<std::vector<int>> leaf_paths(const Tree& T, int depth) {
  std::vector<int> leaves;
  for (std::size_t e = 0; e < T.edges.size(); ++e) {
    if (T.edge_depth[e] == depth) leaves.push_back(T.far_end[e]);
  }
  std::vector<std::vector<int>> paths;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) paths.push_back(tree_path(T, leaves[i], leaves[j]));
  }
  return paths;
}

}  // namespace

Structure gen_regular_tessellation(int p, int q, int R, const GeneratorOptions& opt) {
  require(p >= 3 && q >= 3, "regular tessellation needs p >= 3 and q >= 3");
  require(R >= 1, "radius must be at least 1");
  require(p * q - 2 * p - 2 * q >= 0, "{p,q} with 1/p + 1/q > 1/2 is spherical, use gen_spherical");
  PatternRule rule(std::vector<int>(p, 0), {q});
  RawComplex raw = Growth(rule, opt.face_cap).run(R);
  raw.family = "regular_pq " + std::to_string(p) + " " + std::to_string(q);
  return make_structure(raw);
}

Structure gen_coxeter_triangle(int r, int s, int t, int R, const GeneratorOptions& opt) {
  require(r >= 2 && s >= 2 && t >= 2, "coxeter triangle needs r, s, t >= 2");
  require(R >= 1, "radius must be at least 1");
  // 1/r + 1/s + 1/t <= 1
  require(static_cast<long>(r) * s * t >= static_cast<long>(s) * t + r * t + r * s,
          "(r,s,t) is spherical; only Euclidean and hyperbolic triangles are generated");
  PatternRule rule({0, 1, 2}, {2 * r, 2 * s, 2 * t});
  RawComplex raw = Growth(rule, opt.face_cap).run(R);
  raw.family = "coxeter_triangle " + std::to_string(r) + " " + std::to_string(s) + " " + std::to_string(t);
  return make_structure(raw);
}

Structure gen_sigma_n(int n, int R, const GeneratorOptions& opt) {
  require(n >= 3, "sigma_n needs n >= 3");
  require(R >= 1, "radius must be at least 1");
  PatternRule rule({0, 1, 0, 1}, {2 * n, 3});
  RawComplex raw = Growth(rule, opt.face_cap).run(R);
  raw.family = "sigma_n " + std::to_string(n);
  return make_structure(raw);
}

Structure gen_mixed_square_octagon(int core_radius, int R, const GeneratorOptions& opt) {
  require(core_radius >= 0, "core radius must be nonnegative");
  require(R >= 1, "radius must be at least 1");
  MixedRule rule(core_radius);
  RawComplex raw = Growth(rule, opt.face_cap).run(R);
  raw.family = "mixed " + std::to_string(core_radius);
  return make_structure(raw);
}

Structure gen_product_trees(int r, int s, int R, const GeneratorOptions& opt) {
  require(r >= 2 && s >= 2, "product of trees needs r, s >= 2");
  require(R >= 1, "radius must be at least 1");
  const int D = R + 2;
  Tree A = build_tree(r, D), B = build_tree(s, D);
  // Vertex ids for pairs, faces for pairs of edges with depth sum <= D.
  std::map<std::pair<int, int>, VertexId> vid;
  CellBuilder cells;
  auto vertex = [&](int x, int y) {
    auto [it, fresh] = vid.emplace(std::make_pair(x, y), static_cast<VertexId>(cells.vertex_count));
    if (fresh) ++cells.vertex_count;
    return it->second;
  };
  std::map<std::pair<int, int>, FaceId> fid;
  std::vector<char> trusted;
  for (int total = 0; total <= D; ++total) {
    for (std::size_t a = 0; a < A.edges.size(); ++a) {
      int db = total - A.edge_depth[a];
      if (db < 0) continue;
      for (std::size_t b = 0; b < B.edges.size(); ++b) {
        if (B.edge_depth[b] != db) continue;
        auto [x1, x2] = A.edges[a];
        auto [y1, y2] = B.edges[b];
        std::vector<VertexId> cyc{vertex(x1, y1), vertex(x2, y1), vertex(x2, y2), vertex(x1, y2)};
        fid[{static_cast<int>(a), static_cast<int>(b)}] = cells.face(cyc);
        trusted.push_back(total <= R ? 1 : 0);
      }
    }
  }
  RawComplex raw = cells.raw();
  // Horizontal edges (tree A direction) lie in s squares, vertical ones in r.
  std::vector<Degree> edeg(raw.edges.size());
  std::vector<std::pair<int, int>> vpair(cells.vertex_count);
  for (auto& [xy, v] : vid) vpair[v] = xy;
  for (std::size_t e = 0; e < raw.edges.size(); ++e) {
    auto [u, w] = raw.edges[e];
    edeg[e] = vpair[u].second == vpair[w].second ? s : r;
  }
  attach_truncation(
      raw, trusted, [&](VertexId) { return static_cast<Degree>(r + s); }, [&](EdgeId e) { return edeg[e]; },
      [&](FaceId) { return static_cast<Degree>(2 * (r - 1) + 2 * (s - 1)); });

  auto pa = leaf_paths(A, R + 1), pb = leaf_paths(B, R + 1);
  auto min_depth = [](const Tree& T, const std::vector<int>& path) {
    int m = std::numeric_limits<int>::max();
    for (int e : path) m = std::min(m, T.edge_depth[e]);
    return m;
  };
  // Only products that reach into the trusted ball. With pb sorted by
  // depth, the partners of pa[i] are a prefix of pb.
  std::stable_sort(pb.begin(), pb.end(),
                   [&](const auto& x, const auto& y) { return min_depth(B, x) < min_depth(B, y); });
  std::vector<int> db;
  for (const auto& path : pb) db.push_back(min_depth(B, path));
  std::vector<std::uint64_t> first(pa.size() + 1, 0);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    auto partners = std::upper_bound(db.begin(), db.end(), R - min_depth(A, pa[i])) - db.begin();
    first[i + 1] = first[i] + static_cast<std::uint64_t>(partners);
  }
  const std::uint64_t total = first.back();
  std::vector<std::uint64_t> chosen;
  if (total <= opt.apartment_cap) {
    for (std::uint64_t k = 0; k < total; ++k) chosen.push_back(k);
  } else {
    // Floyd's sampling of apartment_cap distinct indices.
    std::mt19937_64 rng(opt.seed);
    std::set<std::uint64_t> picked;
    for (std::uint64_t k = total - opt.apartment_cap; k < total; ++k) {
      std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, k)(rng);
      if (!picked.insert(t).second) picked.insert(k);
    }
    chosen.assign(picked.begin(), picked.end());
  }
  for (std::uint64_t k : chosen) {
    std::size_t i = std::upper_bound(first.begin(), first.end(), k) - first.begin() - 1;
    const auto& g1 = pa[i];
    const auto& g2 = pb[k - first[i]];
    std::vector<FaceId> faces;
    for (int a : g1) {
      for (int b : g2) {
        auto it = fid.find({a, b});
        if (it != fid.end()) faces.push_back(it->second);
      }
    }
    std::sort(faces.begin(), faces.end());
    raw.apartments.push_back(std::move(faces));
  }
  raw.center = 0;
  raw.trusted_radius = R;
  raw.family = "product_trees " + std::to_string(r) + " " + std::to_string(s);
  return make_structure(raw);
}

std::vector<std::array<int, 3>> book_face_coordinates(int k, int R) {
  std::vector<std::array<int, 3>> out;
  const int D = R + 2;
  for (int page = 0; page < k; ++page) {
    const int off = page == 0 ? 0 : 1;
    for (int x = -D; x <= D; ++x) {
      for (int y = 0; std::abs(x) + y + off <= D; ++y) out.push_back({page, x, y});
    }
  }
  // Face 0 is the center cell.
  std::stable_partition(out.begin(), out.end(),
                        [](const std::array<int, 3>& c) { return c == std::array<int, 3>{0, 0, 0}; });
  return out;
}

Structure gen_book(int k, int R, const GeneratorOptions&) {
  require(k >= 2, "a book needs at least two pages");
  require(R >= 1, "radius must be at least 1");
  auto coords = book_face_coordinates(k, R);
  std::map<std::array<int, 3>, VertexId> vid;  // spine vertices use page -1
  CellBuilder cells;
  auto vertex = [&](int page, int x, int y) {
    std::array<int, 3> key{y == 0 ? -1 : page, x, y};
    auto [it, fresh] = vid.emplace(key, static_cast<VertexId>(cells.vertex_count));
    if (fresh) ++cells.vertex_count;
    return it->second;
  };
  std::vector<char> trusted;
  std::vector<Degree> fdeg;
  for (auto [page, x, y] : coords) {
    cells.face({vertex(page, x, y), vertex(page, x + 1, y), vertex(page, x + 1, y + 1), vertex(page, x, y + 1)});
    int d = std::abs(x) + y + (page == 0 ? 0 : 1);
    trusted.push_back(d <= R ? 1 : 0);
    fdeg.push_back(y == 0 ? k + 2 : 4);
  }
  RawComplex raw = cells.raw();
  std::vector<char> spine_vertex(cells.vertex_count, 0);
  for (auto& [key, v] : vid) spine_vertex[v] = key[0] == -1;
  attach_truncation(
      raw, trusted, [&](VertexId v) { return static_cast<Degree>(spine_vertex[v] ? 2 + k : 4); },
      [&](EdgeId e) {
        auto [a, b] = raw.edges[e];
        return static_cast<Degree>(spine_vertex[a] && spine_vertex[b] ? k : 2);
      },
      [&](FaceId f) { return fdeg[f]; });
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::vector<FaceId> faces;
      for (std::size_t f = 0; f < coords.size(); ++f) {
        if (coords[f][0] == i || coords[f][0] == j) faces.push_back(static_cast<FaceId>(f));
      }
      raw.apartments.push_back(std::move(faces));
    }
  }
  raw.center = 0;
  raw.trusted_radius = R;
  raw.family = "book " + std::to_string(k);
  return make_structure(raw);
}

namespace {

/// Dual of a closed surface: faces around each vertex in cyclic order.
RawComplex dual_surface(const RawComplex& raw) {
  PolygonalComplex X = build_complex(raw);
  CellBuilder cells;
  cells.vertex_count = static_cast<std::int64_t>(X.num_faces());
  for (std::size_t v = 0; v < X.num_vertices(); ++v) {
    auto around = X.vertex_faces(static_cast<VertexId>(v));
    std::vector<VertexId> cyc{around.front()};
    std::set<FaceId> used{around.front()};
    while (cyc.size() < around.size()) {
      FaceId cur = cyc.back();
      bool moved = false;
      for (FaceId g : X.face_neighbors(cur)) {
        if (used.count(g) || std::find(around.begin(), around.end(), g) == around.end()) continue;
        auto e = X.common_edge(cur, g);
        auto ev = X.edge_vertices(*e);
        if (ev[0] != static_cast<VertexId>(v) && ev[1] != static_cast<VertexId>(v)) continue;
        cyc.push_back(g);
        used.insert(g);
        moved = true;
        break;
      }
      if (!moved) throw InvalidComplexError("vertex star is not a disk");
    }
    cells.face(cyc);
  }
  return cells.raw();
}

RawComplex from_faces(std::int64_t n, const std::vector<std::vector<VertexId>>& faces) {
  CellBuilder cells;
  cells.vertex_count = n;
  for (const auto& f : faces) cells.face(f);
  return cells.raw();
}

}  // namespace

SphericalKind parse_spherical_kind(const std::string& name) {
  static const std::map<std::string, SphericalKind> kinds{
      {"tetrahedron", SphericalKind::tetrahedron}, {"cube", SphericalKind::cube},
      {"octahedron", SphericalKind::octahedron},   {"dodecahedron", SphericalKind::dodecahedron},
      {"icosahedron", SphericalKind::icosahedron}, {"prism", SphericalKind::prism},
      {"antiprism", SphericalKind::antiprism}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw PreconditionError("unknown spherical kind '" + name + "'");
  return it->second;
}

Structure gen_spherical(SphericalKind kind, int n) {
  RawComplex raw;
  std::string label;
  switch (kind) {
    case SphericalKind::tetrahedron:
      raw = from_faces(4, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
      label = "tetrahedron";
      break;
    case SphericalKind::cube: {
      std::vector<std::vector<VertexId>> faces;
      for (int axis = 0; axis < 3; ++axis) {
        int b = (axis + 1) % 3, c = (axis + 2) % 3;
        for (int side = 0; side < 2; ++side) {
          int base = side << axis;
          faces.push_back({base, base | (1 << b), base | (1 << b) | (1 << c), base | (1 << c)});
        }
      }
      raw = from_faces(8, faces);
      label = "cube";
      break;
    }
    case SphericalKind::octahedron: {
      // 2i is +e_i, 2i+1 is -e_i.
      std::vector<std::vector<VertexId>> faces;
      for (int sx = 0; sx < 2; ++sx) {
        for (int sy = 0; sy < 2; ++sy) {
          for (int sz = 0; sz < 2; ++sz) faces.push_back({sx, 2 + sy, 4 + sz});
        }
      }
      raw = from_faces(6, faces);
      label = "octahedron";
      break;
    }
    case SphericalKind::icosahedron:
    case SphericalKind::dodecahedron: {
      std::vector<std::vector<VertexId>> faces;
      for (int i = 0; i < 5; ++i) {
        int u = 1 + i, un = 1 + (i + 1) % 5, l = 6 + i, ln = 6 + (i + 1) % 5;
        faces.push_back({0, u, un});
        faces.push_back({u, l, un});
        faces.push_back({un, l, ln});
        faces.push_back({11, ln, l});
      }
      raw = from_faces(12, faces);
      label = "icosahedron";
      if (kind == SphericalKind::dodecahedron) {
        raw = dual_surface(raw);
        label = "dodecahedron";
      }
      break;
    }
    case SphericalKind::prism: {
      require(n >= 3, "prism needs n >= 3");
      std::vector<std::vector<VertexId>> faces;
      for (int i = 0; i < n; ++i) faces.push_back({n, i, (i + 1) % n});
      for (int i = 0; i < n; ++i) faces.push_back({n + 1, (i + 1) % n, i});
      raw = from_faces(n + 2, faces);
      label = "prism " + std::to_string(n);
      break;
    }
    case SphericalKind::antiprism: {
      require(n >= 3, "antiprism needs n >= 3");
      // top 2n, bottom 2n+1, upper rim a_i = i, lower rim c_i = n + i.
      std::vector<std::vector<VertexId>> faces;
      for (int i = 0; i < n; ++i) faces.push_back({2 * n, i, n + i, (i + 1) % n});
      for (int i = 0; i < n; ++i) faces.push_back({2 * n + 1, n + (i + 1) % n, (i + 1) % n, n + i});
      raw = from_faces(2 * n + 2, faces);
      label = "antiprism " + std::to_string(n);
      break;
    }
  }
  raw.family = "spherical " + label;
  raw.center = 0;
  raw.apartments.emplace_back();
  for (std::size_t f = 0; f < raw.faces.size(); ++f) raw.apartments[0].push_back(static_cast<FaceId>(f));
  return make_structure(raw);
}

Structure gen_cubic_lattice_squares(int M) {
  require(M >= 2, "cubic lattice needs M >= 2");
  const int side = 2 * M + 1;
  auto vid = [&](int x, int y, int z) { return static_cast<VertexId>(((x + M) * side + (y + M)) * side + (z + M)); };
  CellBuilder cells;
  cells.vertex_count = static_cast<std::int64_t>(side) * side * side;
  std::vector<char> trusted;
  // The square in the plane z = 0 at the origin comes first.
  std::vector<std::array<int, 4>> specs;
  for (int axis = 2; axis >= 0; --axis) {
    for (int c = -M; c <= M; ++c) {
      for (int u = -M; u < M; ++u) {
        for (int w = -M; w < M; ++w) specs.push_back({axis, c, u, w});
      }
    }
  }
  std::stable_partition(specs.begin(), specs.end(),
                        [](const std::array<int, 4>& s) { return s == std::array<int, 4>{2, 0, 0, 0}; });
  std::map<std::pair<int, int>, std::vector<FaceId>> planes;
  for (auto [axis, c, u, w] : specs) {
    std::array<std::array<int, 3>, 4> pts;
    int corners[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int i = 0; i < 4; ++i) {
      std::array<int, 3> p{};
      p[axis] = c;
      p[(axis + 1) % 3] = u + corners[i][0];
      p[(axis + 2) % 3] = w + corners[i][1];
      pts[i] = p;
    }
    std::vector<VertexId> cyc;
    bool inner = true;
    for (auto& p : pts) {
      cyc.push_back(vid(p[0], p[1], p[2]));
      for (int x : p) inner = inner && std::abs(x) <= M - 1;
    }
    FaceId f = cells.face(cyc);
    trusted.push_back(inner ? 1 : 0);
    planes[{axis, c}].push_back(f);
  }
  RawComplex raw = cells.raw();
  attach_truncation(
      raw, trusted, [](VertexId) { return Degree{6}; }, [](EdgeId) { return Degree{4}; },
      [](FaceId) { return Degree{12}; });
  for (auto& [key, faces] : planes) {
    std::sort(faces.begin(), faces.end());
    raw.apartments.push_back(faces);
  }
  raw.center = 0;
  raw.trusted_radius = M - 2;
  raw.family = "cubic_squares " + std::to_string(M);
  return make_structure(raw);
}

Structure generate(const GeneratorSpec& spec, const GeneratorOptions& opt) {
  auto need = [&](std::size_t k) {
    if (spec.params.size() != k) {
      throw PreconditionError("family " + spec.family + " takes " + std::to_string(k) + " parameters");
    }
  };
  const auto& p = spec.params;
  if (spec.family == "regular_pq") return need(2), gen_regular_tessellation(p[0], p[1], spec.radius, opt);
  if (spec.family == "coxeter_triangle") return need(3), gen_coxeter_triangle(p[0], p[1], p[2], spec.radius, opt);
  if (spec.family == "product_trees") return need(2), gen_product_trees(p[0], p[1], spec.radius, opt);
  if (spec.family == "book") return need(1), gen_book(p[0], spec.radius, opt);
  if (spec.family == "sigma_n") return need(1), gen_sigma_n(p[0], spec.radius, opt);
  if (spec.family == "mixed") return need(1), gen_mixed_square_octagon(p[0], spec.radius, opt);
  if (spec.family == "cubic_squares") return need(0), gen_cubic_lattice_squares(spec.radius);
  if (spec.family == "spherical") {
    SphericalKind kind = parse_spherical_kind(spec.kind);
    return gen_spherical(kind, p.empty() ? 0 : p[0]);
  }
  throw PreconditionError("unknown family '" + spec.family + "'");
}

}  // namespace curvcx
