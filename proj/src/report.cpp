#include "curvcx/report.hpp"

#include <algorithm>
#include <sstream>

#include "curvcx/curvature.hpp"
#include "curvcx/errors.hpp"
#include "curvcx/isoperimetry.hpp"
#include "curvcx/kernels.hpp"
#include "curvcx/metric.hpp"
#include "curvcx/spectral.hpp"

namespace curvcx {

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::verified_at_scale: return "verified-at-scale";
    case RowStatus::hypothesis_not_met: return "hypothesis-not-met";
    case RowStatus::skipped_budget: return "skipped-budget";
    case RowStatus::violated: return "violated";
  }
  return "?";
}

namespace {

void settle(ReportRow& row, bool holds, std::vector<std::int64_t> cells = {}) {
  if (!row.hypothesis_met) {
    row.status = RowStatus::hypothesis_not_met;
  } else if (holds) {
    row.status = RowStatus::verified_at_scale;
  } else {
    row.status = RowStatus::violated;
  }
  row.cells = std::move(cells);
}

int eccentricity(const PolygonalComplex& X, FaceId o) {
  kernels::LocalBfs bfs(X.num_faces());
  bfs.run(X, o, static_cast<int>(X.num_faces()));
  int e = 0;
  for (FaceId f : bfs.order()) e = std::max(e, bfs.dist(f));
  return e;
}

}  // namespace

Dashboard report(const Structure& s, const ReportOptions& opt) {
  const PolygonalComplex& X = *s.complex;
  Dashboard d;
  d.family = s.family;
  d.center = opt.center ? *opt.center : s.center.value_or(0);
  const FaceId o = d.center;
  if (opt.radius) d.radius = *opt.radius;
  else if (X.truncated()) d.radius = std::min(s.trusted_radius.value_or(0), 4);
  else d.radius = eccentricity(X, o);
  const int R = d.radius;

  CurvatureReport curv = curvature_report(s, o, R);
  SphereStructure S = spheres(X, o, R);
  const bool nonpositive = curv.all_nonpositive;
  std::ostringstream oss;
  auto corners = [&] {
    return "corner curvature in [" + to_string(curv.min_corner) + ", " + to_string(curv.max_corner) + "]";
  };

  {
    ReportRow row{"cut locus of the center is empty", corners() + " (needs <= 0)", nonpositive, "", {}, {}};
    auto cut = cut_locus(X, o, R);
    row.conclusion = std::to_string(cut.size()) + " faces of B_" + std::to_string(R - 1) + " without a forward neighbour";
    settle(row, cut.empty(), {cut.begin(), cut.end()});
    d.rows.push_back(row);
  }
  {
    ReportRow row{"every face has at most two backward neighbours", corners() + " (needs <= 0)", nonpositive, "", {}, {}};
    std::vector<std::int64_t> bad;
    int worst = 0;
    for (std::size_t i = 0; i < S.faces.size(); ++i) {
      worst = std::max(worst, S.backward[i]);
      if (S.backward[i] > 2) bad.push_back(S.faces[i]);
    }
    row.conclusion = "largest backward count " + std::to_string(worst);
    settle(row, bad.empty(), bad);
    d.rows.push_back(row);
  }
  {
    ReportRow row{"bigons are 1-thin", corners() + " (needs < 0)", curv.all_negative, "", {}, {}};
    if (S.faces.size() > opt.ball_budget) {
      row.status = RowStatus::skipped_budget;
      row.conclusion = "ball of " + std::to_string(S.faces.size()) + " faces";
    } else {
      FaceMetric M(s.complex);
      auto scan = kernels::bigon_scan_parallel(X, S.faces, M.trusted_radii(), std::min(4, 2 * R));
      row.conclusion = std::to_string(scan.pairs) + " pairs, largest layer " + std::to_string(scan.max_certificate) +
                       ", largest layer spread " + std::to_string(scan.max_spread);
      bool ok = scan.max_certificate <= 2 && scan.max_spread <= 1;
      std::vector<std::int64_t> cells;
      if (scan.max_certificate > 2) cells = {scan.cert_from, scan.cert_to};
      else if (scan.max_spread > 1) cells = {scan.spread_from, scan.spread_to};
      settle(row, ok, cells);
    }
    d.rows.push_back(row);
  }

  CheegerBounds bounds = cheeger_lower_bounds(X, o, R);
  Rational alpha = std::max(bounds.bound1, bounds.bound2);
  {
    ReportRow row{"Cheeger constant bounded below",
                  "bound1 " + to_string(bounds.bound1) + ", bound2 " + to_string(bounds.bound2) + " (needs one > 0)",
                  alpha > 0, "", {}, {}};
    std::vector<FaceId> region(S.faces.begin(), S.faces.begin() + std::min(S.faces.size(), opt.cheeger_region));
    CheegerWitness w = cheeger_bruteforce(X, region, {0, std::max<std::size_t>(22, opt.cheeger_region), true});
    row.conclusion = "smallest ratio on " + std::to_string(region.size()) + " faces around the center " +
                     to_string(w.ratio()) + " (upper bound on the constant)";
    settle(row, w.ratio() >= alpha, {w.faces.begin(), w.faces.end()});
    d.rows.push_back(row);
  }
  {
    ReportRow row{"bottom of the spectrum bounded below", "Cheeger lower bound " + to_string(alpha) + " (needs > 0)",
                  alpha > 0, "", {}, {}};
    if (S.faces.size() > opt.ball_budget) {
      row.status = RowStatus::skipped_budget;
      row.conclusion = "ball of " + std::to_string(S.faces.size()) + " faces";
    } else {
      Degree mF = std::numeric_limits<Degree>::max();
      for (FaceId f = 0; f < static_cast<FaceId>(X.num_faces()); ++f) {
        if (X.face_complete(f)) mF = std::min(mF, X.face_degree(f));
      }
      SpectralReport sp = spectrum(X, o, R, {SpectrumOperator::delta, opt.ball_budget});
      double a = std::clamp(to_double(alpha), 0.0, 1.0);
      double bound = lambda0_bound(static_cast<double>(mF), a);
      oss.str("");
      oss << "lambda0 of the ball " << sp.delta.front() << ", bound " << bound;
      row.conclusion = oss.str();
      settle(row, sp.delta.front() >= bound - 1e-9);
    }
    d.rows.push_back(row);
  }
  {
    MyersEvidence ev = myers_evidence(s, curv);
    ReportRow row{"positive face curvature forces a finite complex",
                  "face curvature in [" + to_string(curv.min_face) + ", " + to_string(curv.max_face) + "] (needs > 0)",
                  curv.faces_positive, "", {}, {}};
    bool finite = !X.truncated();
    row.conclusion = finite ? std::to_string(X.num_faces()) + " faces" : "truncation of an infinite complex";
    if (finite && curv.faces_positive) {
      try {
        row.conclusion += ", face curvature sum " + to_string(gauss_bonnet_sum(X));
      } catch (const PreconditionError&) {
      }
    }
    settle(row, finite);
    d.rows.push_back(row);

    ReportRow row2{"nonpositive face curvature forces infinitely many faces",
                   "face curvature in [" + to_string(curv.min_face) + ", " + to_string(curv.max_face) + "] (needs <= 0)",
                   curv.faces_nonpositive, "", {}, {}};
    oss.str("");
    oss << "sphere sizes";
    for (auto n : ev.sphere_sizes) oss << ' ' << n;
    row2.conclusion = oss.str();
    settle(row2, ev.verdict == MyersVerdict::infinite_nonpositive);
    d.rows.push_back(row2);
  }
  {
    ReportRow row{"no finitely supported eigenfunctions", corners() + " (needs <= 0)", nonpositive, "", {}, {}};
    if (S.faces.size() > opt.ball_budget) {
      row.status = RowStatus::skipped_budget;
      row.conclusion = "ball of " + std::to_string(S.faces.size()) + " faces";
    } else {
      auto found = finite_support_eigenfunctions(X, o, R);
      oss.str("");
      oss << found.size() << " eigenfunctions supported in B_" << R;
      std::vector<std::int64_t> cells;
      for (const auto& c : found) {
        if (!c.exact_lambda) continue;
        oss << ", exact one with eigenvalue " << to_string(*c.exact_lambda) << " on " << c.support.size() << " faces";
        cells.assign(c.support.begin(), c.support.end());
        break;
      }
      row.conclusion = oss.str();
      if (cells.empty() && !found.empty()) cells.assign(found.front().support.begin(), found.front().support.end());
      settle(row, found.empty(), cells);
    }
    d.rows.push_back(row);
  }
  return d;
}

}  // namespace curvcx
