#include "curvcx/curvature.hpp"

#include <algorithm>
#include <numeric>

#include "curvcx/errors.hpp"
#include "curvcx/metric.hpp"

namespace curvcx {

Rational corner_curvature(const Apartment& A, VertexId v, FaceId f) {
  if (!A.contains_face(f)) throw PreconditionError("face " + std::to_string(f) + " is not in the apartment");
  auto cyc = A.parent().face_vertices(f);
  if (std::find(cyc.begin(), cyc.end(), v) == cyc.end()) {
    throw PreconditionError("vertex " + std::to_string(v) + " is not a corner of face " + std::to_string(f));
  }
  if (!A.vertex_complete(v)) throw IncompleteCellError("vertex " + std::to_string(v) + " is not complete in the apartment");
  return Rational(1, A.vertex_degree(v)) - Rational(1, 2) + Rational(1, static_cast<std::int64_t>(cyc.size()));
}

Rational face_curvature(const Apartment& A, FaceId f) {
  if (!A.contains_face(f)) throw PreconditionError("face " + std::to_string(f) + " is not in the apartment");
  Rational sum = 0;
  for (VertexId v : A.parent().face_vertices(f)) sum += corner_curvature(A, v, f);
  return sum;
}

Rational gauss_bonnet_sum(const PolygonalComplex& X) {
  if (X.truncated()) throw PreconditionError("complex is a truncation of an infinite complex");
  TessellationCheck chk = validate_tessellation(X);
  if (!chk.spherical) throw PreconditionError("complex is not a spherical tessellation");
  std::vector<FaceId> all(X.num_faces());
  std::iota(all.begin(), all.end(), 0);
  auto self = std::shared_ptr<const PolygonalComplex>(&X, [](const PolygonalComplex*) {});
  Apartment A(self, all);
  Rational sum = 0;
  for (FaceId f : all) sum += face_curvature(A, f);
  return sum;
}

CurvatureReport curvature_report(const Structure& s, FaceId o, int R) {
  const PolygonalComplex& X = *s.complex;
  SphereStructure S = spheres(X, o, R);
  std::vector<int> level(X.num_faces(), -1);
  for (std::size_t i = 0; i < S.faces.size(); ++i) level[S.faces[i]] = S.level[i];

  CurvatureReport rep;
  rep.center = o;
  rep.radius = R;
  std::vector<std::optional<Rational>> sup(std::max(R, 0));
  bool any_corner = false, any_face = false;
  for (std::size_t a = 0; a < s.apartments.size(); ++a) {
    const Apartment& A = s.apartments[a];
    for (FaceId f : A.faces()) {
      if (level[f] < 0) continue;
      bool whole = true;
      Rational total = 0;
      for (VertexId v : X.face_vertices(f)) {
        if (!A.vertex_complete(v)) {
          whole = false;
          continue;
        }
        Rational k = corner_curvature(A, v, f);
        rep.corners.push_back({static_cast<int>(a), v, f, k});
        total += k;
        if (!any_corner) rep.min_corner = rep.max_corner = k;
        rep.min_corner = std::min(rep.min_corner, k);
        rep.max_corner = std::max(rep.max_corner, k);
        any_corner = true;
        if (k > 0) rep.all_nonpositive = false;
        if (k >= 0) rep.all_negative = false;
        if (k <= 0) rep.all_positive = false;
      }
      if (!whole) continue;
      rep.faces.push_back({static_cast<int>(a), f, total});
      if (!any_face) rep.min_face = rep.max_face = total;
      rep.min_face = std::min(rep.min_face, total);
      rep.max_face = std::max(rep.max_face, total);
      any_face = true;
      if (total > 0) rep.faces_nonpositive = false;
      if (total <= 0) rep.faces_positive = false;
      for (int r = 0; r < level[f] && r < R; ++r) {
        if (!sup[r] || total > *sup[r]) sup[r] = total;
      }
    }
  }
  if (!any_corner) rep.all_nonpositive = rep.all_negative = rep.all_positive = false;
  if (!any_face) rep.faces_nonpositive = rep.faces_positive = false;
  for (auto& x : sup) {
    if (!x) break;
    rep.kappa_inf_proxy.push_back(*x);
  }
  return rep;
}

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::spherical: return "spherical";
    case Geometry::euclidean: return "euclidean";
    case Geometry::hyperbolic: return "hyperbolic";
  }
  return "?";
}

CoxeterClass coxeter_classify(const std::vector<int>& m) {
  const int k = static_cast<int>(m.size());
  if (k < 3) throw PreconditionError("a polygon needs at least 3 angles");
  for (int mi : m) {
    if (mi < 2) throw PreconditionError("angle denominators must be at least 2");
  }
  CoxeterClass c;
  c.arity = k;
  c.m = m;
  Rational angles = 0;
  for (int mi : m) {
    angles += Rational(1, mi);
    c.vertex_degrees.push_back(2 * mi);
    c.corner.push_back(Rational(1, 2 * mi) - Rational(1, 2) + Rational(1, k));
  }
  Rational excess = Rational(k - 2) - angles;
  c.geometry = excess > 0 ? Geometry::hyperbolic : excess == 0 ? Geometry::euclidean : Geometry::spherical;
  c.face = std::accumulate(c.corner.begin(), c.corner.end(), Rational(0));
  if (std::all_of(m.begin(), m.end(), [&](int x) { return x == m[0]; })) {
    const std::int64_t mm = m[0];
    c.regular_constant = Rational(2 * mm + k - mm * k, 2 * mm * k);
  }
  return c;
}

std::string to_string(MyersVerdict v) {
  switch (v) {
    case MyersVerdict::finite_positive: return "finite-positive";
    case MyersVerdict::infinite_nonpositive: return "infinite-nonpositive";
    case MyersVerdict::no_claim: return "no-claim";
  }
  return "?";
}

MyersEvidence myers_evidence(const Structure& s, const CurvatureReport& report) {
  MyersEvidence ev;
  const PolygonalComplex& X = *s.complex;
  ev.finite = !X.truncated();
  SphereStructure S = spheres(X, report.center, report.radius);
  for (auto& sp : S.spheres) ev.sphere_sizes.push_back(sp.size());
  if (report.faces.empty()) {
    ev.detail = "no face with all corners complete";
    return ev;
  }
  if (report.faces_positive) {
    if (ev.finite) {
      ev.verdict = MyersVerdict::finite_positive;
      ev.detail = std::to_string(X.num_faces()) + " faces, all face curvatures positive";
    } else {
      ev.detail = "positive face curvature on a truncation; finiteness unknown";
    }
    return ev;
  }
  if (report.faces_nonpositive) {
    bool growing = true;
    for (std::size_t i = 1; i < ev.sphere_sizes.size(); ++i) growing = growing && ev.sphere_sizes[i] > ev.sphere_sizes[i - 1];
    if (growing && !ev.finite) {
      ev.verdict = MyersVerdict::infinite_nonpositive;
      ev.detail = "face curvatures <= 0 and spheres grow up to radius " + std::to_string(report.radius);
    } else if (!growing) {
      ev.detail = "face curvatures <= 0 but spheres stop growing";
    } else {
      ev.detail = "face curvatures <= 0 on a finite complex";
    }
    return ev;
  }
  ev.detail = "face curvatures of both signs";
  return ev;
}

}  // namespace curvcx
