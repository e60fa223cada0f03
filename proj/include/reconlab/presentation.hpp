#pragma once

// Presentations of positive semidefinite matrices (vectors whose Gram matrix
// is the input), good position, the origin projection u0 onto the affine
// hull, translation along u0 (the J-perturbation), lambda0 and t(lambda).

#include "reconlab/matrix_core.hpp"

#include <optional>

namespace reconlab {

inline constexpr double kPosMargin = 1e-12;

// psdTol = pdTol = 1e-10 * max(1, ||A||_inf).
double psd_tolerance(const SymmetricMatrix& a);

/// An ordered set of vectors u_0..u_{n-1}, stored as the columns of an
/// m x n matrix (m = n for everything factor_presentation produces).
class Presentation {
 public:
  explicit Presentation(Matrix columns);

  int n() const noexcept { return static_cast<int>(columns_.cols()); }
  int ambient_dim() const noexcept { return static_cast<int>(columns_.rows()); }
  const Matrix& columns() const noexcept { return columns_; }
  Vector column(int i) const { return columns_.col(i); }

  // U^t U, exactly symmetric.
  SymmetricMatrix gram() const;

 private:
  Matrix columns_;
};

// U = Lambda^{1/2} Q^t from A = Q Lambda Q^t; eigenvalues in [-psdTol, 0)
// are clipped to zero.
Presentation factor_presentation(const SymmetricMatrix& a);

enum class GoodPositionReason { RankNotNMinus1, KernelSignMixed, Good };

struct GoodPositionReport {
  int rank = 0;
  // Unit 1-norm kernel vector with positive sum; only when rank == n-1.
  std::optional<Vector> kernel_vector;
  bool is_good = false;
  GoodPositionReason reason = GoodPositionReason::RankNotNMinus1;
};

// rank(A) == n-1 with a strictly positive kernel vector. Singular values
// below 1e-10 * sigma_max count as zero.
GoodPositionReport good_position_report(const SymmetricMatrix& a);

// alpha_i = volume of conv{0, u_j : j != i}, normalized to unit sum.
Vector volume_eigenvector(const Presentation& u);

struct PerturbationPath {
  Vector u0;
  double u0_norm_sq = 0.0;
  double s = 0.0;
  // (s^2 - 2s) * ||u0||^2
  double t = 0.0;
  // |u0 via (U^t)^{-1} 1  -  u0 via U A^{-1} 1|_inf; zero for non-square U.
  double closed_form_gap = 0.0;
};

/// Orthogonal projection u0 of the origin onto aff U:
///   ||u0||^2 = 1 / (1^t A^{-1} 1),   u0 = ||u0||^2 U A^{-1} 1.
/// When U is square the (U^t)^{-1} 1 form is evaluated as well and the gap
/// between the two is recorded.
PerturbationPath project_origin(const Presentation& u);

// Path record at parameter s: same u0, t = (s^2 - 2s) ||u0||^2.
PerturbationPath perturbation_path(const Presentation& u, double s);

// {u_i - s u0}, a presentation of A + (s^2 - 2s) ||u0||^2 J.
Presentation perturb_presentation(const Presentation& u, double s);

// -1 / (1^t (A + lambda I)^{-1} 1).
double t_of_lambda(const SymmetricMatrix& a, double lambda);

// min_i ((A + lambda I)^{-1} 1)_i, or nullopt when A + lambda I is not
// positive definite with margin.
std::optional<double> inverse_ones_min(const SymmetricMatrix& a, double lambda);

/// Some lambda0 with (A + lambda I)^{-1} 1 strictly positive (margin
/// kPosMargin) at lambda0, 2 lambda0, 10 lambda0 and on a geometric grid up
/// to the starting point ||A||_op + 1. Not minimal.
double lambda0_search(const SymmetricMatrix& a);

// Re-runs the positivity conditions lambda0_search certifies.
bool lambda0_certified(const SymmetricMatrix& a, double lambda0);

struct InteriorProjectionReport {
  // u0 has strictly positive barycentric weights over U.
  bool u0_interior = false;
  // A^{-1} 1 is strictly positive.
  bool inverse_ones_positive = false;
  Vector barycentric;
  Vector inverse_ones;
};

// Evaluates both conditions by separate routes: a solve against A, and a
// solve of U w = u0 on a factored presentation.
InteriorProjectionReport interior_projection_report(const SymmetricMatrix& a);

}  // namespace reconlab
