#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvcx/core.hpp"
#include "curvcx/rational.hpp"

namespace curvcx {

/// 1/|v|_Σ - 1/2 + 1/|∂f|.
Rational corner_curvature(const Apartment& A, VertexId v, FaceId f);
/// Sum of the corner curvatures of f in A.
Rational face_curvature(const Apartment& A, FaceId f);
/// Sum of face curvatures over a finite spherical tessellation.
Rational gauss_bonnet_sum(const PolygonalComplex& X);

struct CornerRow {
  int apartment = 0;
  VertexId vertex = 0;
  FaceId face = 0;
  Rational kappa;
};

struct FaceRow {
  int apartment = 0;
  FaceId face = 0;
  Rational kappa;
};

struct CurvatureReport {
  FaceId center = 0;
  int radius = 0;
  std::vector<CornerRow> corners;  // ordered by (apartment, face, vertex position)
  std::vector<FaceRow> faces;
  // Corner extremes and sign flags.
  Rational min_corner, max_corner;
  bool all_nonpositive = true, all_negative = true, all_positive = true;
  Rational min_face, max_face;
  bool faces_nonpositive = true, faces_positive = true;
  /// kappa_inf_proxy[r] = sup of κ(f) over apartment faces in B_R \ B_r,
  /// for r = 0..R-1. A proxy built on balls around the center only.
  std::vector<Rational> kappa_inf_proxy;
};

/// Tables over the corners of apartment faces in B_R(o). B_R(o) must be
/// trusted. Faces with an incomplete corner are left out of the face table.
CurvatureReport curvature_report(const Structure& s, FaceId o, int R);

enum class Geometry { spherical, euclidean, hyperbolic };
std::string to_string(Geometry g);

struct CoxeterClass {
  int arity = 0;
  std::vector<int> m;
  Geometry geometry = Geometry::euclidean;
  std::vector<int> vertex_degrees;  // 2 m_i
  std::vector<Rational> corner;     // 1/(2 m_i) - 1/2 + 1/k
  Rational face;
  std::optional<Rational> regular_constant;  // when all m_i agree
};

CoxeterClass coxeter_classify(const std::vector<int>& m);

enum class MyersVerdict { finite_positive, infinite_nonpositive, no_claim };
std::string to_string(MyersVerdict v);

struct MyersEvidence {
  MyersVerdict verdict = MyersVerdict::no_claim;
  bool finite = false;
  std::vector<std::size_t> sphere_sizes;  // |S_0|..|S_R|
  std::string detail;
};

/// Positive faces on a finite complex, or nonpositive faces with spheres
/// that keep growing up to the report radius.
MyersEvidence myers_evidence(const Structure& s, const CurvatureReport& report);

}  // namespace curvcx
