#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curvcx/core.hpp"
#include "curvcx/rational.hpp"

namespace curvcx {

/// B_R(o) listed sphere by sphere, and the Dirichlet Laplacian on it:
/// true |f| on the diagonal, -1 for each adjacency inside the ball.
struct BallMatrix {
  std::vector<FaceId> faces;
  std::vector<int> level;
  Eigen::MatrixXd matrix;
};

BallMatrix laplacian_matrix(const PolygonalComplex& X, FaceId o, int R);

/// Coefficients a(f,g) on a finite face set. Off the diagonal a(f,g) must be
/// nonzero exactly for adjacent faces; the diagonal is a free potential.
class NearestNeighborOperator {
 public:
  NearestNeighborOperator(const PolygonalComplex& X, std::vector<FaceId> faces,
                          std::map<std::pair<FaceId, FaceId>, double> coefficients);
  static NearestNeighborOperator laplacian(const PolygonalComplex& X, std::vector<FaceId> faces);

  std::span<const FaceId> faces() const { return faces_; }
  double coefficient(FaceId f, FaceId g) const;
  Eigen::MatrixXd dense() const;
  bool symmetric() const;

 private:
  std::vector<FaceId> faces_;
  std::map<std::pair<FaceId, FaceId>, double> a_;
};

/// m_F (1 - sqrt(1 - α²)).
double lambda0_bound(double m_F, double alpha);

enum class SpectrumOperator { delta, degree, both };

struct SpectrumOptions {
  SpectrumOperator op = SpectrumOperator::both;
  std::size_t budget = 4000;
};

struct RatioRow {
  std::size_t index = 0;
  double delta = 0, degree = 0, ratio = 0;
  bool in_window = false;
};

struct SpectralReport {
  FaceId center = 0;
  int radius = 0;
  std::size_t size = 0;
  std::vector<double> delta;   // ascending, with multiplicity
  std::vector<double> degree;
  double max_residual = 0;     // over the computed eigenpairs
  Degree m_F = 0;
  std::optional<double> alpha;          // positive lower bound on α from the trusted faces
  std::optional<double> lambda0_lower;  // lambda0_bound(m_F, alpha)
  std::optional<double> alpha_infinity; // last entry of cheeger_at_infinity, when positive
  std::optional<std::pair<double, double>> window;
  std::vector<RatioRow> ratios;
  double fraction_in_window = 0;
};

SpectralReport spectrum(const PolygonalComplex& X, FaceId o, int R, const SpectrumOptions& opt = {});
/// Eigenvalues of a symmetric custom operator.
std::vector<double> spectrum(const NearestNeighborOperator& A, std::size_t budget = 4000);

struct EigenCheck {
  bool pass = false;
  std::vector<FaceId> support, halo;
  /// Faces of support ∪ halo where Δφ - λφ is nonzero, with the value.
  std::vector<std::pair<FaceId, Rational>> residuals;
};

/// Exact check of Δφ = λφ on the support and its halo. Support faces must be
/// trusted with all neighbours built; halo faces only need to be built.
EigenCheck verify_eigenfunction(const PolygonalComplex& X, const std::map<FaceId, Rational>& phi, Rational lambda);

struct EigenfunctionCertificate {
  double lambda = 0;
  std::vector<FaceId> support;
  std::vector<double> values;                  // on support
  std::optional<Rational> exact_lambda;
  std::optional<std::vector<Rational>> exact_values;  // present when the exact check passed
  std::vector<FaceId> halo;
  double residual = 0;
};

/// Eigenfunctions supported in B_R(o), checked on B_R and on the faces one
/// step outside. One certificate per basis vector of each eigenspace.
std::vector<EigenfunctionCertificate> finite_support_eigenfunctions(const PolygonalComplex& X, FaceId o, int R);

struct DirichletSolution {
  std::vector<FaceId> faces;  // B_R(o) in sphere order
  std::vector<double> values;
  std::vector<char> interior;
  double residual = 0;        // max |Pu - u| on the interior
};

/// Harmonic extension of boundary data. Interior faces are those of B_{R-1}
/// with every neighbour built; every other ball face needs a value in
/// `boundary`.
DirichletSolution solve_dirichlet(const PolygonalComplex& X, FaceId o, int R,
                                  const std::map<FaceId, double>& boundary, double tolerance = 1e-10);

}  // namespace curvcx
