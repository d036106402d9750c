#include "curvcx/core.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "curvcx/errors.hpp"

namespace curvcx {

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

[[noreturn]] void invalid(const std::string& msg) { throw InvalidComplexError(msg); }

Degree saturating_add(Degree a, Degree b) {
  if (a == kInfiniteDegree || b == kInfiniteDegree) return kInfiniteDegree;
  return a + b;
}

}  // namespace

PolygonalComplex build_complex(const RawComplex& raw) {
  if (raw.vertex_count < 0) invalid("negative vertex count");
  if (raw.vertex_count > std::numeric_limits<VertexId>::max()) invalid("vertex count too large");
  const auto n = static_cast<VertexId>(raw.vertex_count);

  PolygonalComplex X;
  X.vertex_edges_.resize(n);
  X.vertex_faces_.resize(n);
  X.edges_ = raw.edges;
  X.faces_ = raw.faces;

  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    auto [a, b] = raw.edges[i];
    if (a < 0 || a >= n || b < 0 || b >= n) {
      invalid("edge " + std::to_string(i) + " references a missing vertex");
    }
    if (a == b) invalid("edge " + std::to_string(i) + " is a loop at vertex " + std::to_string(a));
    auto [it, fresh] = X.edge_index_.emplace(edge_key(a, b), static_cast<EdgeId>(i));
    if (!fresh) {
      invalid("duplicate edge: " + std::to_string(it->second) + " and " + std::to_string(i) + " both join " +
              std::to_string(a) + "-" + std::to_string(b));
    }
    X.vertex_edges_[a].push_back(static_cast<EdgeId>(i));
    X.vertex_edges_[b].push_back(static_cast<EdgeId>(i));
  }

  X.edge_faces_.resize(raw.edges.size());
  X.face_edges_.resize(raw.faces.size());
  for (std::size_t f = 0; f < raw.faces.size(); ++f) {
    const auto& cyc = raw.faces[f];
    const std::string tag = "face " + std::to_string(f);
    if (cyc.size() < 3) invalid(tag + " has a boundary cycle of length " + std::to_string(cyc.size()));
    std::set<VertexId> seen;
    for (VertexId v : cyc) {
      if (v < 0 || v >= n) invalid(tag + " references a missing vertex " + std::to_string(v));
      if (!seen.insert(v).second) invalid(tag + " repeats vertex " + std::to_string(v));
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      VertexId a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      auto it = X.edge_index_.find(edge_key(a, b));
      if (it == X.edge_index_.end()) {
        invalid(tag + " uses " + std::to_string(a) + "-" + std::to_string(b) + ", which is not in the edge list");
      }
      X.face_edges_[f].push_back(it->second);
      X.edge_faces_[it->second].push_back(static_cast<FaceId>(f));
      X.vertex_faces_[a].push_back(static_cast<FaceId>(f));
    }
  }

  // Pairwise intersections of closed faces: nothing, a vertex, or one edge with
  // its two endpoints.
  X.face_neighbors_.resize(raw.faces.size());
  for (std::size_t f = 0; f < raw.faces.size(); ++f) {
    std::map<FaceId, int> shared_vertices;
    for (VertexId v : raw.faces[f]) {
      for (FaceId g : X.vertex_faces_[v]) {
        if (g != static_cast<FaceId>(f)) ++shared_vertices[g];
      }
    }
    std::map<FaceId, int> shared_edges;
    for (EdgeId e : X.face_edges_[f]) {
      for (FaceId g : X.edge_faces_[e]) {
        if (g != static_cast<FaceId>(f)) ++shared_edges[g];
      }
    }
    for (auto [g, sv] : shared_vertices) {
      int se = shared_edges.count(g) ? shared_edges[g] : 0;
      std::string pair = "faces " + std::to_string(f) + " and " + std::to_string(g);
      if (se > 1) invalid(pair + " share more than one edge");
      if (se == 0 && sv > 1) invalid(pair + " share " + std::to_string(sv) + " vertices but no edge");
      if (se == 1 && sv > 2) invalid(pair + " share an edge and a further vertex");
    }
    for (auto [g, se] : shared_edges) X.face_neighbors_[f].push_back(g);
  }

  if (raw.truncation) {
    const Truncation& t = *raw.truncation;
    X.truncation_ = t;
    X.face_trusted_.assign(raw.faces.size(), 0);
    X.vertex_closed_.assign(n, 0);
    X.edge_closed_.assign(raw.edges.size(), 0);
    for (FaceId f : t.trusted_faces) {
      if (f < 0 || static_cast<std::size_t>(f) >= raw.faces.size()) {
        invalid("trusted face " + std::to_string(f) + " does not exist");
      }
      X.face_trusted_[f] = 1;
      for (VertexId v : raw.faces[f]) X.vertex_closed_[v] = 1;
      for (EdgeId e : X.face_edges_[f]) X.edge_closed_[e] = 1;
    }
    auto check_range = [](const auto& m, std::size_t size, const char* what) {
      for (auto [id, d] : m) {
        if (id < 0 || static_cast<std::size_t>(id) >= size) {
          invalid(std::string("degree override for missing ") + what + " " + std::to_string(id));
        }
        if (d < 0) invalid(std::string("negative degree override on ") + what + " " + std::to_string(id));
      }
    };
    check_range(t.true_degrees.vertex, static_cast<std::size_t>(n), "vertex");
    check_range(t.true_degrees.edge, raw.edges.size(), "edge");
    check_range(t.true_degrees.face, raw.faces.size(), "face");
  }

  // Overrides on complete cells must agree with what was built.
  for (auto [v, d] : X.truncation_ ? X.truncation_->true_degrees.vertex : std::map<VertexId, Degree>{}) {
    if (X.vertex_complete(v) && d != static_cast<Degree>(X.vertex_edges_[v].size())) {
      invalid("vertex " + std::to_string(v) + " is complete but its degree override disagrees");
    }
  }
  for (auto [e, d] : X.truncation_ ? X.truncation_->true_degrees.edge : std::map<EdgeId, Degree>{}) {
    if (X.edge_complete(e) && d != static_cast<Degree>(X.edge_faces_[e].size())) {
      invalid("edge " + std::to_string(e) + " is complete but its degree override disagrees");
    }
  }
  for (auto [f, d] : X.truncation_ ? X.truncation_->true_degrees.face : std::map<FaceId, Degree>{}) {
    bool edges_known = std::all_of(X.face_edges_[f].begin(), X.face_edges_[f].end(),
                                   [&](EdgeId e) { return X.has_edge_degree(e); });
    if (!edges_known) continue;
    Degree sum = 0;
    for (EdgeId e : X.face_edges_[f]) sum = saturating_add(sum, X.edge_degree(e) == kInfiniteDegree ? kInfiniteDegree : X.edge_degree(e) - 1);
    if (sum != d) invalid("face " + std::to_string(f) + " violates |f| = sum(|e|-1)");
  }
  return X;
}

std::optional<EdgeId> PolygonalComplex::find_edge(VertexId a, VertexId b) const {
  auto it = edge_index_.find(edge_key(a, b));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> PolygonalComplex::common_edge(FaceId f, FaceId g) const {
  for (EdgeId e : face_edges_.at(f)) {
    for (FaceId h : edge_faces_[e]) {
      if (h == g) return e;
    }
  }
  return std::nullopt;
}

bool PolygonalComplex::face_complete(FaceId f) const {
  if (!truncation_) return true;
  return face_trusted_.at(f) != 0;
}

bool PolygonalComplex::vertex_complete(VertexId v) const {
  if (!truncation_) return true;
  return vertex_closed_.at(v) != 0;
}

bool PolygonalComplex::edge_complete(EdgeId e) const {
  if (!truncation_) return true;
  return edge_closed_.at(e) != 0;
}

bool PolygonalComplex::has_vertex_degree(VertexId v) const {
  return vertex_complete(v) || truncation_->true_degrees.vertex.count(v);
}

bool PolygonalComplex::has_edge_degree(EdgeId e) const {
  return edge_complete(e) || truncation_->true_degrees.edge.count(e);
}

bool PolygonalComplex::has_face_degree(FaceId f) const {
  if (face_complete(f) || truncation_->true_degrees.face.count(f)) return true;
  return std::all_of(face_edges_.at(f).begin(), face_edges_.at(f).end(),
                     [&](EdgeId e) { return has_edge_degree(e); });
}

Degree PolygonalComplex::vertex_degree(VertexId v) const {
  if (truncation_) {
    auto it = truncation_->true_degrees.vertex.find(v);
    if (it != truncation_->true_degrees.vertex.end()) return it->second;
  }
  if (!vertex_complete(v)) throw IncompleteCellError("vertex " + std::to_string(v) + " is not complete");
  return static_cast<Degree>(vertex_edges_[v].size());
}

Degree PolygonalComplex::edge_degree(EdgeId e) const {
  if (truncation_) {
    auto it = truncation_->true_degrees.edge.find(e);
    if (it != truncation_->true_degrees.edge.end()) return it->second;
  }
  if (!edge_complete(e)) throw IncompleteCellError("edge " + std::to_string(e) + " is not complete");
  return static_cast<Degree>(edge_faces_[e].size());
}

Degree PolygonalComplex::face_degree(FaceId f) const {
  if (truncation_) {
    auto it = truncation_->true_degrees.face.find(f);
    if (it != truncation_->true_degrees.face.end()) return it->second;
  }
  Degree sum = 0;
  for (EdgeId e : face_edges_.at(f)) {
    if (!has_edge_degree(e)) throw IncompleteCellError("face " + std::to_string(f) + " is not complete");
    Degree d = edge_degree(e);
    sum = saturating_add(sum, d == kInfiniteDegree ? d : d - 1);
  }
  return sum;
}

Degree PolygonalComplex::min_edge_degree(FaceId f) const {
  Degree best = kInfiniteDegree;
  for (EdgeId e : face_edges_.at(f)) {
    Degree d = edge_degree(e);
    best = std::min(best, d == kInfiniteDegree ? d : d - 1);
  }
  return best;
}

Degree PolygonalComplex::max_edge_degree(FaceId f) const {
  Degree best = 0;
  for (EdgeId e : face_edges_.at(f)) {
    Degree d = edge_degree(e);
    best = std::max(best, d == kInfiniteDegree ? d : d - 1);
  }
  return best;
}

Degree PolygonalComplex::unbuilt_neighbors(FaceId f) const {
  Degree d = face_degree(f);
  if (d == kInfiniteDegree) return d;
  return d - static_cast<Degree>(face_neighbors_.at(f).size());
}

RawComplex PolygonalComplex::to_raw() const {
  RawComplex raw;
  raw.vertex_count = static_cast<std::int64_t>(num_vertices());
  raw.edges = edges_;
  raw.faces = faces_;
  raw.truncation = truncation_;
  return raw;
}

Apartment::Apartment(std::shared_ptr<const PolygonalComplex> parent, std::vector<FaceId> faces)
    : parent_(std::move(parent)), faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  for (FaceId f : faces_) {
    if (f < 0 || static_cast<std::size_t>(f) >= parent_->num_faces()) {
      throw InvalidComplexError("apartment references missing face " + std::to_string(f));
    }
    auto vs = parent_->face_vertices(f);
    auto es = parent_->face_edges(f);
    vertices_.insert(vertices_.end(), vs.begin(), vs.end());
    edges_.insert(edges_.end(), es.begin(), es.end());
  }
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Apartment::contains_face(FaceId f) const { return std::binary_search(faces_.begin(), faces_.end(), f); }
bool Apartment::contains_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}
bool Apartment::contains_edge(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

int Apartment::vertex_degree(VertexId v) const {
  int d = 0;
  for (EdgeId e : parent_->vertex_edges(v)) d += contains_edge(e) ? 1 : 0;
  return d;
}

int Apartment::edge_degree(EdgeId e) const {
  int d = 0;
  for (FaceId f : parent_->edge_faces(e)) d += contains_face(f) ? 1 : 0;
  return d;
}

namespace {

/// Faces of `in_region` around v, viewed as edges between the two boundary
/// edges at v; true when they form one cycle covering every region edge at v.
template <class InRegion>
bool link_is_single_cycle(const PolygonalComplex& X, VertexId v, InRegion in_region) {
  std::map<EdgeId, std::vector<EdgeId>> adj;
  std::size_t arcs = 0;
  for (FaceId f : X.vertex_faces(v)) {
    if (!in_region(f)) continue;
    auto cyc = X.face_vertices(f);
    auto es = X.face_edges(f);
    std::size_t k = cyc.size();
    std::size_t i = std::find(cyc.begin(), cyc.end(), v) - cyc.begin();
    EdgeId out = es[i], in = es[(i + k - 1) % k];
    adj[out].push_back(in);
    adj[in].push_back(out);
    ++arcs;
  }
  if (adj.size() < 3 || arcs != adj.size()) return false;
  for (auto& [e, nb] : adj) {
    if (nb.size() != 2) return false;
  }
  // Walk the cycle from any node and count.
  EdgeId start = adj.begin()->first, prev = -1, cur = start;
  std::size_t steps = 0;
  do {
    const auto& nb = adj[cur];
    EdgeId next = nb[0] != prev ? nb[0] : nb[1];
    prev = cur;
    cur = next;
    ++steps;
  } while (cur != start && steps <= adj.size());
  return steps == adj.size();
}

}  // namespace

bool Apartment::vertex_complete(VertexId v) const {
  if (!contains_vertex(v) || !parent_->vertex_complete(v)) return false;
  return link_is_single_cycle(*parent_, v, [&](FaceId f) { return contains_face(f); });
}

Structure make_structure(const RawComplex& raw) {
  Structure s;
  s.complex = std::make_shared<const PolygonalComplex>(build_complex(raw));
  for (const auto& a : raw.apartments) s.apartments.emplace_back(s.complex, a);
  if (raw.center && (*raw.center < 0 || static_cast<std::size_t>(*raw.center) >= s.complex->num_faces())) {
    throw InvalidComplexError("center face " + std::to_string(*raw.center) + " does not exist");
  }
  s.center = raw.center;
  s.trusted_radius = raw.trusted_radius;
  s.family = raw.family;
  return s;
}

RawComplex to_raw(const Structure& s) {
  RawComplex raw = s.complex->to_raw();
  for (const auto& a : s.apartments) raw.apartments.emplace_back(a.faces().begin(), a.faces().end());
  raw.center = s.center;
  raw.trusted_radius = s.trusted_radius;
  raw.family = s.family;
  return raw;
}

DegreeProfile degree_profile(const PolygonalComplex& X) {
  DegreeProfile p;
  p.vertex_degree.resize(X.num_vertices());
  p.edge_degree.resize(X.num_edges());
  p.boundary_length.resize(X.num_faces());
  p.face_degree.resize(X.num_faces());
  p.face_min_edge.resize(X.num_faces());
  p.face_max_edge.resize(X.num_faces());
  bool any_v = false, any_e = false, any_f = false;
  Degree m_e = kInfiniteDegree, big_e = 0, big_v = 0, big_f = 0, m_f = kInfiniteDegree;
  for (std::size_t v = 0; v < X.num_vertices(); ++v) {
    if (!X.has_vertex_degree(static_cast<VertexId>(v))) continue;
    Degree d = X.vertex_degree(static_cast<VertexId>(v));
    p.vertex_degree[v] = {d, true};
    big_v = std::max(big_v, d);
    any_v = true;
  }
  for (std::size_t e = 0; e < X.num_edges(); ++e) {
    if (!X.has_edge_degree(static_cast<EdgeId>(e))) continue;
    Degree d = X.edge_degree(static_cast<EdgeId>(e));
    p.edge_degree[e] = {d, true};
    Degree nb = d == kInfiniteDegree ? d : d - 1;
    m_e = std::min(m_e, nb);
    big_e = std::max(big_e, nb);
    any_e = true;
  }
  for (std::size_t i = 0; i < X.num_faces(); ++i) {
    auto f = static_cast<FaceId>(i);
    p.boundary_length[i] = X.boundary_length(f);
    if (!X.has_face_degree(f)) continue;
    Degree d = X.face_degree(f);
    p.face_degree[i] = {d, true};
    big_f = std::max(big_f, d);
    m_f = std::min(m_f, d);
    any_f = true;
    bool edges_known = true;
    for (EdgeId e : X.face_edges(f)) edges_known = edges_known && X.has_edge_degree(e);
    if (edges_known) {
      p.face_min_edge[i] = {X.min_edge_degree(f), true};
      p.face_max_edge[i] = {X.max_edge_degree(f), true};
    }
  }
  p.min_edge = any_e ? m_e : 0;
  p.max_edge = any_e ? big_e : 0;
  p.max_vertex = any_v ? big_v : 0;
  p.max_face = any_f ? big_f : 0;
  p.min_face = any_f ? m_f : 0;
  return p;
}

bool TessellationCheck::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const ValidationReport& r) { return r.pass; });
}

namespace {

TessellationCheck check_region(const PolygonalComplex& X, const std::vector<char>& in_region, bool whole,
                               std::span<const FaceId> scope_in) {
  std::vector<FaceId> scope(scope_in.begin(), scope_in.end());
  if (scope.empty()) {
    for (std::size_t f = 0; f < X.num_faces(); ++f) {
      if (in_region[f] && X.face_complete(static_cast<FaceId>(f))) scope.push_back(static_cast<FaceId>(f));
    }
  }
  std::vector<char> in_scope(X.num_faces(), 0);
  std::set<EdgeId> scope_edges;
  std::set<VertexId> scope_vertices;
  for (FaceId f : scope) {
    if (!X.face_complete(f)) throw PreconditionError("scope face " + std::to_string(f) + " is not complete");
    if (!in_region[f]) throw PreconditionError("scope face " + std::to_string(f) + " is outside the region");
    in_scope[f] = 1;
    for (EdgeId e : X.face_edges(f)) scope_edges.insert(e);
    for (VertexId v : X.face_vertices(f)) scope_vertices.insert(v);
  }
  std::string note = std::to_string(scope.size()) + " scope faces";
  note += whole ? " of the whole complex" : " of a face region";

  TessellationCheck out;
  ValidationReport t1{"T1", true, {}, note};
  for (EdgeId e : scope_edges) {
    Degree d = 0;
    if (whole) {
      d = X.edge_degree(e);
    } else {
      for (FaceId f : X.edge_faces(e)) d += in_region[f] ? 1 : 0;
    }
    if (d != 2) {
      t1.pass = false;
      t1.offending.push_back({"edge", {e}, "contained in " + (d == kInfiniteDegree ? std::string("infinitely many") : std::to_string(d)) + " chambers"});
    }
  }
  ValidationReport t2{"T2", true, {}, note};
  for (FaceId f : scope) {
    std::map<FaceId, std::set<VertexId>> meets;
    for (VertexId v : X.face_vertices(f)) {
      for (FaceId g : X.vertex_faces(v)) {
        if (g != f && in_region[g]) meets[g].insert(v);
      }
    }
    for (auto& [g, vs] : meets) {
      if (vs.size() == 1) continue;
      bool ok = false;
      if (vs.size() == 2) {
        auto e = X.find_edge(*vs.begin(), *vs.rbegin());
        ok = e && X.common_edge(f, g) == e;
      }
      if (!ok) {
        t2.pass = false;
        t2.offending.push_back({"face-pair", {f, g}, "chambers meet in more than a vertex or a side"});
      }
    }
  }
  ValidationReport t3{"T3", true, {}, note + "; attaching maps are not checkable and are represented by vertex cycles"};
  for (FaceId f : scope) {
    auto cyc = X.face_vertices(f);
    std::set<VertexId> distinct(cyc.begin(), cyc.end());
    bool ok = distinct.size() == cyc.size() && cyc.size() >= 3;
    for (std::size_t i = 0; ok && i < cyc.size(); ++i) {
      ok = X.find_edge(cyc[i], cyc[(i + 1) % cyc.size()]).has_value();
    }
    if (!ok) {
      t3.pass = false;
      t3.offending.push_back({"face", {f}, "boundary is not a closed path without repeated vertices"});
    }
  }
  ValidationReport t4{"T4", true, {}, note};
  for (VertexId v : scope_vertices) {
    Degree d = X.has_vertex_degree(v) ? X.vertex_degree(v) : kInfiniteDegree;
    if (d == kInfiniteDegree) {
      t4.pass = false;
      t4.offending.push_back({"vertex", {v}, "infinitely many neighbours"});
    }
  }
  ValidationReport planar{"planar-proxy", true, {},
                          note + "; vertex links checked to be single cycles and the region connected, no embedding computed"};
  for (VertexId v : scope_vertices) {
    if (!link_is_single_cycle(X, v, [&](FaceId f) { return in_region[f] != 0; })) {
      planar.pass = false;
      planar.offending.push_back({"vertex", {v}, "region faces around the vertex do not form one disk"});
    }
  }
  // Connectivity of the region's dual graph.
  std::vector<FaceId> region_faces;
  for (std::size_t f = 0; f < X.num_faces(); ++f) {
    if (in_region[f]) region_faces.push_back(static_cast<FaceId>(f));
  }
  if (!region_faces.empty()) {
    std::vector<char> seen(X.num_faces(), 0);
    std::queue<FaceId> q;
    q.push(region_faces.front());
    seen[region_faces.front()] = 1;
    std::size_t reached = 0;
    while (!q.empty()) {
      FaceId f = q.front();
      q.pop();
      ++reached;
      for (FaceId g : X.face_neighbors(f)) {
        if (in_region[g] && !seen[g]) {
          seen[g] = 1;
          q.push(g);
        }
      }
    }
    if (reached != region_faces.size()) {
      planar.pass = false;
      for (FaceId f : region_faces) {
        if (!seen[f]) {
          planar.offending.push_back({"face", {f}, "not connected to face " + std::to_string(region_faces.front())});
          break;
        }
      }
    }
  }

  out.reports = {t1, t2, t3, t4, planar};
  if (whole && !X.truncated() && out.all_pass() && scope.size() == X.num_faces() && !region_faces.empty()) {
    std::set<VertexId> used_v;
    std::set<EdgeId> used_e;
    for (FaceId f : region_faces) {
      for (VertexId v : X.face_vertices(f)) used_v.insert(v);
      for (EdgeId e : X.face_edges(f)) used_e.insert(e);
    }
    auto chi = static_cast<std::int64_t>(used_v.size()) - static_cast<std::int64_t>(used_e.size()) +
               static_cast<std::int64_t>(region_faces.size());
    out.spherical = chi == 2;
  }
  return out;
}

}  // namespace

TessellationCheck validate_tessellation(const PolygonalComplex& X, std::span<const FaceId> region,
                                        std::span<const FaceId> scope) {
  std::vector<char> in_region(X.num_faces(), region.empty() ? 1 : 0);
  for (FaceId f : region) in_region.at(f) = 1;
  return check_region(X, in_region, region.empty(), scope);
}

TessellationCheck validate_tessellation(const Apartment& A, std::span<const FaceId> scope) {
  const PolygonalComplex& X = A.parent();
  std::vector<char> in_region(X.num_faces(), 0);
  for (FaceId f : A.faces()) in_region[f] = 1;
  std::vector<FaceId> default_scope;
  if (scope.empty()) {
    for (FaceId f : A.faces()) {
      if (X.face_complete(f)) default_scope.push_back(f);
    }
    scope = default_scope;
    if (scope.empty()) throw PreconditionError("apartment has no complete faces");
  }
  bool whole = A.faces().size() == X.num_faces();
  return check_region(X, in_region, whole, scope);
}

std::size_t LinkGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adjacency) twice += nb.size();
  return twice / 2;
}

LinkGraph link(const PolygonalComplex& X, VertexId v) {
  if (!X.vertex_complete(v)) throw IncompleteCellError("vertex " + std::to_string(v) + " is not complete");
  LinkGraph L;
  L.center = v;
  auto es = X.vertex_edges(v);
  L.nodes.assign(es.begin(), es.end());
  L.adjacency.resize(L.nodes.size());
  auto index_of = [&](EdgeId e) { return static_cast<int>(std::find(L.nodes.begin(), L.nodes.end(), e) - L.nodes.begin()); };
  for (FaceId f : X.vertex_faces(v)) {
    auto cyc = X.face_vertices(f);
    auto fe = X.face_edges(f);
    std::size_t k = cyc.size();
    std::size_t i = std::find(cyc.begin(), cyc.end(), v) - cyc.begin();
    int a = index_of(fe[i]), b = index_of(fe[(i + k - 1) % k]);
    L.adjacency[a].push_back(b);
    L.adjacency[b].push_back(a);
  }
  for (auto& nb : L.adjacency) std::sort(nb.begin(), nb.end());
  return L;
}

LinkClassification classify_link(const LinkGraph& L) {
  const std::size_t n = L.adjacency.size();
  if (n == 0) throw PreconditionError("empty link");
  LinkClassification c;
  std::size_t min_deg = n, max_deg = 0;
  for (const auto& nb : L.adjacency) {
    min_deg = std::min(min_deg, nb.size());
    max_deg = std::max(max_deg, nb.size());
  }
  // Diameter, girth and bipartiteness from a BFS at every node.
  int diameter = 0;
  int girth = std::numeric_limits<int>::max();
  bool connected = true, bipartite = true;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(static_cast<int>(s));
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : L.adjacency[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (parent[u] != w) {
          girth = std::min(girth, dist[u] + dist[w] + 1);
          if (dist[u] == dist[w]) bipartite = false;
        }
      }
    }
    for (int d : dist) {
      if (d < 0) connected = false;
      diameter = std::max(diameter, d);
    }
  }
  if (connected && min_deg == 2 && max_deg == 2) c.cycle_length = static_cast<int>(n);
  if (connected && bipartite && min_deg >= 2 && girth == 2 * diameter) c.generalized_m = diameter;
  return c;
}

std::string describe(const LinkClassification& c) {
  std::ostringstream os;
  if (c.cycle_length) os << "cycle of length " << *c.cycle_length;
  if (c.generalized_m) os << (c.cycle_length ? ", " : "") << "generalized " << *c.generalized_m << "-gon";
  if (c.other()) os << "other";
  return os.str();
}

}  // namespace curvcx
