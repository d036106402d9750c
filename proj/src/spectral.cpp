#include "curvcx/spectral.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "curvcx/errors.hpp"
#include "curvcx/isoperimetry.hpp"
#include "curvcx/kernels.hpp"
#include "curvcx/metric.hpp"

namespace curvcx {

BallMatrix laplacian_matrix(const PolygonalComplex& X, FaceId o, int R) {
  SphereStructure S = spheres(X, o, R);
  BallMatrix B;
  B.faces = S.faces;
  B.level = S.level;
  B.matrix = kernels::laplacian_parallel(X, B.faces);
  return B;
}

NearestNeighborOperator::NearestNeighborOperator(const PolygonalComplex& X, std::vector<FaceId> faces,
                                                 std::map<std::pair<FaceId, FaceId>, double> coefficients)
    : faces_(std::move(faces)), a_(std::move(coefficients)) {
  std::set<FaceId> in(faces_.begin(), faces_.end());
  if (in.size() != faces_.size()) throw PreconditionError("operator face list repeats a face");
  auto adjacent = [&](FaceId f, FaceId g) {
    auto nb = X.face_neighbors(f);
    return std::binary_search(nb.begin(), nb.end(), g);
  };
  for (auto& [key, value] : a_) {
    auto [f, g] = key;
    if (!in.count(f) || !in.count(g)) {
      throw PreconditionError("coefficient (" + std::to_string(f) + "," + std::to_string(g) + ") outside the face set");
    }
    if (f != g && value != 0 && !adjacent(f, g)) {
      throw PreconditionError("nonzero coefficient on non-adjacent faces " + std::to_string(f) + "," + std::to_string(g));
    }
  }
  for (FaceId f : faces_) {
    for (FaceId g : X.face_neighbors(f)) {
      if (in.count(g) && coefficient(f, g) == 0) {
        throw PreconditionError("zero coefficient on adjacent faces " + std::to_string(f) + "," + std::to_string(g));
      }
    }
  }
}

NearestNeighborOperator NearestNeighborOperator::laplacian(const PolygonalComplex& X, std::vector<FaceId> faces) {
  std::set<FaceId> in(faces.begin(), faces.end());
  std::map<std::pair<FaceId, FaceId>, double> a;
  for (FaceId f : faces) {
    a[{f, f}] = static_cast<double>(X.face_degree(f));
    for (FaceId g : X.face_neighbors(f)) {
      if (in.count(g)) a[{f, g}] = -1;
    }
  }
  return NearestNeighborOperator(X, std::move(faces), std::move(a));
}

double NearestNeighborOperator::coefficient(FaceId f, FaceId g) const {
  auto it = a_.find({f, g});
  return it == a_.end() ? 0.0 : it->second;
}

Eigen::MatrixXd NearestNeighborOperator::dense() const {
  std::unordered_map<FaceId, int> idx;
  for (std::size_t i = 0; i < faces_.size(); ++i) idx[faces_[i]] = static_cast<int>(i);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(faces_.size(), faces_.size());
  for (auto& [key, value] : a_) M(idx.at(key.first), idx.at(key.second)) = value;
  return M;
}

bool NearestNeighborOperator::symmetric() const {
  for (auto& [key, value] : a_) {
    if (coefficient(key.second, key.first) != value) return false;
  }
  return true;
}

double lambda0_bound(double m_F, double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw PreconditionError("alpha must lie in [0,1]");
  return m_F * (1 - std::sqrt(1 - alpha * alpha));
}

namespace {

void check_budget(std::size_t n, std::size_t budget) {
  if (n > budget) {
    throw BudgetExceededError("matrix of size " + std::to_string(n) + " exceeds the dense budget " + std::to_string(budget));
  }
}

double max_residual(const Eigen::MatrixXd& M, const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
  double r = 0;
  for (Eigen::Index k = 0; k < M.rows(); ++k) {
    auto v = es.eigenvectors().col(k);
    r = std::max(r, (M * v - es.eigenvalues()(k) * v).norm());
  }
  return r;
}

}  // namespace

SpectralReport spectrum(const PolygonalComplex& X, FaceId o, int R, const SpectrumOptions& opt) {
  SphereStructure S = spheres(X, o, R);
  check_budget(S.faces.size(), opt.budget);
  SpectralReport rep;
  rep.center = o;
  rep.radius = R;
  rep.size = S.faces.size();
  std::vector<double> deg;
  for (FaceId f : S.faces) deg.push_back(static_cast<double>(X.face_degree(f)));
  rep.m_F = static_cast<Degree>(*std::min_element(deg.begin(), deg.end()));

  if (opt.op != SpectrumOperator::degree) {
    Eigen::MatrixXd L = kernels::laplacian_parallel(X, S.faces);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");
    rep.delta.assign(es.eigenvalues().data(), es.eigenvalues().data() + L.rows());
    rep.max_residual = max_residual(L, es);
  }
  if (opt.op != SpectrumOperator::delta) {
    rep.degree = deg;
    std::sort(rep.degree.begin(), rep.degree.end());
  }

  CheegerBounds b = cheeger_lower_bounds(X);
  Rational a = std::max(b.bound1, b.bound2);
  if (a > 0) {
    rep.alpha = std::min(1.0, to_double(a));
    rep.lambda0_lower = lambda0_bound(static_cast<double>(rep.m_F), *rep.alpha);
  }
  if (R >= 1) {
    auto seq = cheeger_at_infinity(X, o, R);
    if (!seq.empty() && seq.back() > 0) rep.alpha_infinity = std::min(1.0, to_double(seq.back()));
  }
  if (rep.alpha_infinity) {
    double s = std::sqrt(1 - *rep.alpha_infinity * *rep.alpha_infinity);
    rep.window = {1 - s, 1 + s};
  }
  if (!rep.delta.empty() && !rep.degree.empty()) {
    std::size_t inside = 0;
    for (std::size_t k = 0; k < rep.delta.size(); ++k) {
      RatioRow row{k, rep.delta[k], rep.degree[k], rep.delta[k] / rep.degree[k], false};
      if (rep.window) row.in_window = row.ratio >= rep.window->first && row.ratio <= rep.window->second;
      inside += row.in_window;
      rep.ratios.push_back(row);
    }
    rep.fraction_in_window = static_cast<double>(inside) / static_cast<double>(rep.ratios.size());
  }
  return rep;
}

std::vector<double> spectrum(const NearestNeighborOperator& A, std::size_t budget) {
  check_budget(A.faces().size(), budget);
  if (!A.symmetric()) throw PreconditionError("operator is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.dense(), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

EigenCheck verify_eigenfunction(const PolygonalComplex& X, const std::map<FaceId, Rational>& phi, Rational lambda) {
  EigenCheck chk;
  for (auto& [f, v] : phi) {
    if (v != 0) chk.support.push_back(f);
  }
  if (chk.support.empty()) throw PreconditionError("the zero function is not an eigenfunction");
  auto value = [&](FaceId f) {
    auto it = phi.find(f);
    return it == phi.end() ? Rational(0) : it->second;
  };
  std::set<FaceId> halo;
  for (FaceId f : chk.support) {
    if (!X.face_complete(f)) throw IncompleteCellError("support face " + std::to_string(f) + " is not trusted");
    if (X.unbuilt_neighbors(f) != 0) throw IncompleteCellError("support face " + std::to_string(f) + " has unbuilt neighbours");
    for (FaceId g : X.face_neighbors(f)) {
      if (value(g) == 0) halo.insert(g);
    }
  }
  chk.halo.assign(halo.begin(), halo.end());
  auto check = [&](FaceId f) {
    Rational d = Rational(X.face_degree(f)) * value(f);
    for (FaceId g : X.face_neighbors(f)) d -= value(g);
    d -= lambda * value(f);
    if (d != 0) chk.residuals.emplace_back(f, d);
  };
  for (FaceId f : chk.support) check(f);
  for (FaceId g : chk.halo) check(g);
  std::sort(chk.residuals.begin(), chk.residuals.end(), [](auto& a, auto& b) { return a.first < b.first; });
  chk.pass = chk.residuals.empty();
  return chk;
}

namespace {

// Best rational with denominator at most max_den, if within tol of x.
std::optional<Rational> rationalize(double x, std::int64_t max_den, double tol) {
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) return Rational(h1, k1);
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1 / frac;
  }
  return std::nullopt;
}

// Rows of the reduced row echelon form of B^T, pivots scaled to 1.
Eigen::MatrixXd rref_rows(Eigen::MatrixXd M, double tol) {
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < M.cols() && row < M.rows(); ++col) {
    Eigen::Index piv;
    double best = M.col(col).segment(row, M.rows() - row).cwiseAbs().maxCoeff(&piv);
    if (best < tol) continue;
    piv += row;
    M.row(row).swap(M.row(piv));
    M.row(row) /= M(row, col);
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      if (r != row) M.row(r) -= M(r, col) * M.row(row);
    }
    ++row;
  }
  return M.topRows(row);
}

}  // namespace

std::vector<EigenfunctionCertificate> finite_support_eigenfunctions(const PolygonalComplex& X, FaceId o, int R) {
  if (R < 1) throw PreconditionError("radius must be at least 1");
  SphereStructure S = spheres(X, o, R);
  std::vector<FaceId> inner = S.faces, halo;
  std::set<FaceId> ball(inner.begin(), inner.end()), outside;
  for (FaceId f : inner) {
    if (X.unbuilt_neighbors(f) != 0) throw IncompleteCellError("face " + std::to_string(f) + " has unbuilt neighbours");
    for (FaceId g : X.face_neighbors(f)) {
      if (!ball.count(g)) outside.insert(g);
    }
  }
  halo.assign(outside.begin(), outside.end());
  std::unordered_map<FaceId, int> at;
  for (std::size_t i = 0; i < inner.size(); ++i) at[inner[i]] = static_cast<int>(i);
  const auto n = static_cast<Eigen::Index>(inner.size());
  check_budget(inner.size(), 4000);

  Eigen::MatrixXd L = kernels::laplacian_parallel(X, inner);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(halo.size()), n);
  for (std::size_t h = 0; h < halo.size(); ++h) {
    for (FaceId g : X.face_neighbors(halo[h])) {
      auto it = at.find(g);
      if (it != at.end()) H(static_cast<Eigen::Index>(h), it->second) = 1;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  const auto& lam = es.eigenvalues();
  const double tol = 1e-8;

  std::vector<EigenfunctionCertificate> out;
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && lam(end) - lam(end - 1) <= tol * (1 + std::abs(lam(end)))) ++end;
    Eigen::MatrixXd V = es.eigenvectors().middleCols(start, end - start);
    double lambda = lam.segment(start, end - start).mean();
    start = end;

    Eigen::MatrixXd W;
    if (H.rows() == 0) {
      W = V;
    } else {
      Eigen::MatrixXd HV = H * V;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(HV, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      Eigen::Index rank = 0;
      for (Eigen::Index k = 0; k < sv.size(); ++k) rank += sv(k) > tol;
      Eigen::Index nullity = V.cols() - rank;
      if (nullity == 0) continue;
      W = V * svd.matrixV().rightCols(nullity);
    }
    Eigen::MatrixXd rows = rref_rows(W.transpose(), 1e-9);
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      EigenfunctionCertificate c;
      c.lambda = lambda;
      std::map<FaceId, Rational> exact;
      bool rational = true;
      for (Eigen::Index i = 0; i < n; ++i) {
        double v = rows(r, i);
        if (std::abs(v) < 1e-9) continue;
        c.support.push_back(inner[i]);
        c.values.push_back(v);
        auto q = rationalize(v, 10000, 1e-9);
        if (q) exact[inner[i]] = *q;
        else rational = false;
      }
      // Support is listed in sphere order; sort it together with the values.
      std::vector<std::size_t> perm(c.support.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return c.support[a] < c.support[b]; });
      std::vector<FaceId> sup;
      std::vector<double> val;
      for (auto i : perm) sup.push_back(c.support[i]), val.push_back(c.values[i]);
      c.support = std::move(sup);
      c.values = std::move(val);
      std::set<FaceId> hal;
      for (FaceId f : c.support) {
        for (FaceId g : X.face_neighbors(f)) {
          if (!std::binary_search(c.support.begin(), c.support.end(), g)) hal.insert(g);
        }
      }
      c.halo.assign(hal.begin(), hal.end());
      // Floating residual of Δφ - λφ on support and halo.
      auto val_of = [&](FaceId f) {
        auto it = std::lower_bound(c.support.begin(), c.support.end(), f);
        return it != c.support.end() && *it == f ? c.values[it - c.support.begin()] : 0.0;
      };
      double res = 0;
      for (auto* set : {&c.support, &c.halo}) {
        for (FaceId f : *set) {
          double d = static_cast<double>(X.face_degree(f)) * val_of(f) - lambda * val_of(f);
          for (FaceId g : X.face_neighbors(f)) d -= val_of(g);
          res += d * d;
        }
      }
      c.residual = std::sqrt(res);
      double lr = std::round(lambda);
      if (rational && std::abs(lambda - lr) < 1e-8) {
        Rational ql(static_cast<std::int64_t>(lr));
        if (verify_eigenfunction(X, exact, ql).pass) {
          c.exact_lambda = ql;
          std::vector<Rational> ev;
          for (FaceId f : c.support) ev.push_back(exact.at(f));
          c.exact_values = std::move(ev);
        }
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

DirichletSolution solve_dirichlet(const PolygonalComplex& X, FaceId o, int R, const std::map<FaceId, double>& boundary,
                                  double tolerance) {
  SphereStructure S = spheres(X, o, R);
  DirichletSolution sol;
  sol.faces = S.faces;
  const std::size_t n = S.faces.size();
  std::unordered_map<FaceId, int> at;
  for (std::size_t i = 0; i < n; ++i) at[S.faces[i]] = static_cast<int>(i);
  sol.interior.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) sol.interior[i] = S.level[i] < R && X.unbuilt_neighbors(S.faces[i]) == 0;
  for (auto& [f, v] : boundary) {
    auto it = at.find(f);
    if (it == at.end() || sol.interior[it->second]) {
      throw PreconditionError("boundary value given for face " + std::to_string(f) + " outside the ball boundary");
    }
  }
  sol.values.assign(n, 0);
  std::vector<int> unknown(n, -1);
  int m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.interior[i]) {
      unknown[i] = m++;
      continue;
    }
    auto it = boundary.find(S.faces[i]);
    if (it == boundary.end()) throw PreconditionError("no boundary value for face " + std::to_string(S.faces[i]));
    sol.values[i] = it->second;
  }
  if (m == 0) return sol;

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (unknown[i] < 0) continue;
    auto nb = X.face_neighbors(S.faces[i]);
    trip.emplace_back(unknown[i], unknown[i], static_cast<double>(nb.size()));
    for (FaceId g : nb) {
      int j = at.at(g);
      if (unknown[j] >= 0) trip.emplace_back(unknown[i], unknown[j], -1.0);
      else rhs(unknown[i]) += sol.values[j];
    }
  }
  Eigen::SparseMatrix<double> A(m, m);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw Error("singular Dirichlet system");
  Eigen::VectorXd u = ldlt.solve(rhs);
  for (std::size_t i = 0; i < n; ++i) {
    if (unknown[i] >= 0) sol.values[i] = u(unknown[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!sol.interior[i]) continue;
    auto nb = X.face_neighbors(S.faces[i]);
    double avg = 0;
    for (FaceId g : nb) avg += sol.values[at.at(g)];
    avg /= static_cast<double>(nb.size());
    sol.residual = std::max(sol.residual, std::abs(avg - sol.values[i]));
  }
  if (sol.residual > tolerance) {
    throw Error("Dirichlet residual " + std::to_string(sol.residual) + " above tolerance");
  }
  return sol;
}

}  // namespace curvcx
