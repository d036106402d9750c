#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace curvcx {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;
using Degree = std::int64_t;

/// Stored for cells declared to have infinitely many neighbours.
inline constexpr Degree kInfiniteDegree = std::numeric_limits<Degree>::max();

struct TrueDegrees {
  std::map<VertexId, Degree> vertex;
  std::map<EdgeId, Degree> edge;
  std::map<FaceId, Degree> face;
  bool operator==(const TrueDegrees&) const = default;
};

/// Present on finitely built pieces of infinite complexes. A face is complete
/// when it is trusted; a vertex or edge when it lies on a trusted face.
/// Cells outside that closure only have degrees through the overrides.
struct Truncation {
  std::vector<FaceId> trusted_faces;
  TrueDegrees true_degrees;
  bool operator==(const Truncation&) const = default;
};

/// Cell lists exactly as stored in a complex file.
struct RawComplex {
  int version = 1;
  std::int64_t vertex_count = 0;
  std::vector<std::array<VertexId, 2>> edges;
  std::vector<std::vector<VertexId>> faces;
  std::vector<std::vector<FaceId>> apartments;
  std::optional<Truncation> truncation;
  std::optional<FaceId> center;
  std::optional<int> trusted_radius;
  std::string family;
  bool operator==(const RawComplex&) const = default;
};

class PolygonalComplex {
 public:
  std::size_t num_vertices() const { return vertex_edges_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  std::array<VertexId, 2> edge_vertices(EdgeId e) const { return edges_.at(e); }
  /// Boundary cycle as given; face_edges(f)[i] joins cycle[i] and cycle[i+1].
  std::span<const VertexId> face_vertices(FaceId f) const { return faces_.at(f); }
  std::span<const EdgeId> face_edges(FaceId f) const { return face_edges_.at(f); }
  std::span<const FaceId> edge_faces(EdgeId e) const { return edge_faces_.at(e); }
  std::span<const EdgeId> vertex_edges(VertexId v) const { return vertex_edges_.at(v); }
  std::span<const FaceId> vertex_faces(VertexId v) const { return vertex_faces_.at(v); }
  /// Built faces sharing an edge with f, ascending.
  std::span<const FaceId> face_neighbors(FaceId f) const { return face_neighbors_.at(f); }
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  /// The edge shared by two adjacent faces.
  std::optional<EdgeId> common_edge(FaceId f, FaceId g) const;

  bool truncated() const { return truncation_.has_value(); }
  const std::optional<Truncation>& truncation() const { return truncation_; }

  bool face_complete(FaceId f) const;
  bool vertex_complete(VertexId v) const;
  bool edge_complete(EdgeId e) const;

  bool has_vertex_degree(VertexId v) const;
  bool has_edge_degree(EdgeId e) const;
  bool has_face_degree(FaceId f) const;

  /// |v|: number of neighbouring vertices. Overrides win over built counts;
  /// throws IncompleteCellError when neither is available.
  Degree vertex_degree(VertexId v) const;
  /// |e|: number of faces containing e.
  Degree edge_degree(EdgeId e) const;
  /// |f| = sum over boundary edges of (|e| - 1).
  Degree face_degree(FaceId f) const;
  int boundary_length(FaceId f) const { return static_cast<int>(faces_.at(f).size()); }
  Degree min_edge_degree(FaceId f) const;  // m_E(f) = min(|e|-1)
  Degree max_edge_degree(FaceId f) const;  // M_E(f) = max(|e|-1)

  /// Number of neighbours of f that were not built.
  Degree unbuilt_neighbors(FaceId f) const;

  /// Cell lists and truncation as they were given.
  RawComplex to_raw() const;

 private:
  friend PolygonalComplex build_complex(const RawComplex& raw);

  std::vector<std::array<VertexId, 2>> edges_;
  std::vector<std::vector<VertexId>> faces_;
  std::vector<std::vector<EdgeId>> face_edges_;
  std::vector<std::vector<FaceId>> edge_faces_;
  std::vector<std::vector<EdgeId>> vertex_edges_;
  std::vector<std::vector<FaceId>> vertex_faces_;
  std::vector<std::vector<FaceId>> face_neighbors_;
  std::optional<Truncation> truncation_;
  std::vector<char> face_trusted_;
  std::vector<char> vertex_closed_;
  std::vector<char> edge_closed_;
  std::unordered_map<std::uint64_t, EdgeId> edge_index_;
};

/// Checks the structural invariants and computes incidences. Apartments and
/// file metadata in raw are ignored here.
PolygonalComplex build_complex(const RawComplex& raw);

/// A face subset of a parent complex with derived vertex and edge sets.
class Apartment {
 public:
  Apartment(std::shared_ptr<const PolygonalComplex> parent, std::vector<FaceId> faces);

  const PolygonalComplex& parent() const { return *parent_; }
  const std::shared_ptr<const PolygonalComplex>& parent_ptr() const { return parent_; }
  std::span<const FaceId> faces() const { return faces_; }
  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const EdgeId> edges() const { return edges_; }
  bool contains_face(FaceId f) const;
  bool contains_vertex(VertexId v) const;
  bool contains_edge(EdgeId e) const;

  /// |v|_Σ: number of apartment edges at v.
  int vertex_degree(VertexId v) const;
  /// Number of apartment faces containing e.
  int edge_degree(EdgeId e) const;
  /// Complete in the parent, and the apartment faces around v close up into
  /// a single cycle.
  bool vertex_complete(VertexId v) const;

 private:
  std::shared_ptr<const PolygonalComplex> parent_;
  std::vector<FaceId> faces_;
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
};

/// A complex together with its apartment system and generation metadata.
struct Structure {
  std::shared_ptr<const PolygonalComplex> complex;
  std::vector<Apartment> apartments;
  std::optional<FaceId> center;
  std::optional<int> trusted_radius;
  std::string family;
};

Structure make_structure(const RawComplex& raw);
RawComplex to_raw(const Structure& s);

struct DegreeRow {
  Degree value = 0;
  bool known = false;
};

struct DegreeProfile {
  std::vector<DegreeRow> vertex_degree;
  std::vector<DegreeRow> edge_degree;
  std::vector<int> boundary_length;
  std::vector<DegreeRow> face_degree;
  std::vector<DegreeRow> face_min_edge;
  std::vector<DegreeRow> face_max_edge;
  // Extremes over cells with known degrees.
  Degree min_edge = 0;   // m_E
  Degree max_edge = 0;   // M_E
  Degree max_vertex = 0; // M_V
  Degree max_face = 0;   // M_F
  Degree min_face = 0;   // m_F
};

DegreeProfile degree_profile(const PolygonalComplex& X);

struct Offense {
  std::string kind;  // "vertex", "edge", "face" or "face-pair"
  std::vector<std::int64_t> cells;
  std::string detail;
};

struct ValidationReport {
  std::string axiom;
  bool pass = true;
  std::vector<Offense> offending;
  std::string scope;
};

struct TessellationCheck {
  std::vector<ValidationReport> reports;  // T1..T4 then planar-proxy
  bool spherical = false;
  bool all_pass() const;
};

/// Checks (T1)-(T4) and the disk-neighbourhood proxy for planarity on the
/// tessellation formed by `region` (empty: all faces), restricted to the cells
/// of the `scope` faces (empty: all complete faces of the region).
TessellationCheck validate_tessellation(const PolygonalComplex& X, std::span<const FaceId> region = {},
                                        std::span<const FaceId> scope = {});
TessellationCheck validate_tessellation(const Apartment& A, std::span<const FaceId> scope = {});

/// (PCPS1) on all pairs of B_R(o), (PCPS2) by intervals on Σ ∩ B_{R/2}(o),
/// (PCPS3) via validate_tessellation on each apartment's trusted part.
std::vector<ValidationReport> validate_pcps(const PolygonalComplex& X, std::span<const Apartment> apartments,
                                            int R, FaceId o);

struct LinkGraph {
  VertexId center = 0;
  std::vector<EdgeId> nodes;
  std::vector<std::vector<int>> adjacency;  // indices into nodes
  std::size_t edge_count() const;
};

LinkGraph link(const PolygonalComplex& X, VertexId v);

struct LinkClassification {
  std::optional<int> cycle_length;
  std::optional<int> generalized_m;
  bool other() const { return !cycle_length && !generalized_m; }
};

LinkClassification classify_link(const LinkGraph& L);

std::string describe(const LinkClassification& c);

}  // namespace curvcx
