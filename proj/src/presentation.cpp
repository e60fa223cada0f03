#include "reconlab/presentation.hpp"

#include "reconlab/error.hpp"

#include <cmath>
#include <string>

namespace reconlab {

namespace {

constexpr double kRankRelTol = 1e-10;
// lambda0 keeps A + lambda0 I this far (relative to ||A||_op) from
// singularity, so the rank tests downstream stay well separated.
constexpr double kLambda0PdMargin = 1e-6;
constexpr int kLambda0Bisections = 40;

void require_positive_definite(const SymmetricMatrix& a, double min_eig) {
  const double tol = psd_tolerance(a);
  if (!(min_eig > tol)) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "smallest eigenvalue " + std::to_string(min_eig) +
                    " is not above " + std::to_string(tol));
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

// (A + lambda I)^{-1} 1 from a cached eigendecomposition.
struct ShiftedInverse {
  explicit ShiftedInverse(const SymmetricMatrix& a)
      : eig(eigen_sorted(a)),
        projected_ones(eig.vectors.transpose() * ones_vector(a.n())) {}

  double op_norm() const {
    return std::max(std::abs(eig.values[0]), std::abs(eig.lowest()));
  }

  Vector apply(double lambda) const {
    const Vector scaled =
        projected_ones.array() / (eig.values.array() + lambda);
    return eig.vectors * scaled;
  }

  EigenData eig;
  Vector projected_ones;
};

bool lambda0_ok(const ShiftedInverse& inv, double lambda, double start) {
  if (!(lambda > 0.0)) return false;
  const double margin = kLambda0PdMargin * std::max(1.0, inv.op_norm());
  if (inv.eig.lowest() + lambda < margin) return false;
  auto positive = [&](double l) { return inv.apply(l).minCoeff() >= kPosMargin; };
  if (!positive(lambda) || !positive(2.0 * lambda) || !positive(10.0 * lambda)) {
    return false;
  }
  const double top = std::max(start, lambda);
  constexpr int kGrid = 8;
  for (int k = 1; k <= kGrid; ++k) {
    const double l = lambda * std::pow(top / lambda, static_cast<double>(k) / kGrid);
    if (!positive(l)) return false;
  }
  return true;
}

}  // namespace

double psd_tolerance(const SymmetricMatrix& a) {
  return 1e-10 * std::max(1.0, inf_norm(a.entries()));
}

Presentation::Presentation(Matrix columns) : columns_(std::move(columns)) {
  if (columns_.cols() < 1) {
    throw Error(ErrorKind::DegenerateOrder, "presentation needs at least one vector");
  }
  if (!columns_.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "presentation has non-finite entries");
  }
}

SymmetricMatrix Presentation::gram() const {
  Matrix g = columns_.transpose() * columns_;
  // Rounding can leave the product asymmetric in the last bit.
  g = 0.5 * (g + g.transpose()).eval();
  return SymmetricMatrix(std::move(g));
}

Presentation factor_presentation(const SymmetricMatrix& a) {
  const EigenData e = eigen_sorted(a);
  const double tol = psd_tolerance(a);
  if (e.lowest() < -tol) {
    throw Error(ErrorKind::NotPositiveSemidefinite,
                "lowest eigenvalue " + std::to_string(e.lowest()) + " below -" +
                    std::to_string(tol));
  }
  const Vector root = e.values.cwiseMax(0.0).cwiseSqrt();
  return Presentation(root.asDiagonal() * e.vectors.transpose());
}

GoodPositionReport good_position_report(const SymmetricMatrix& a) {
  const EigenData e = eigen_sorted(a);
  const double tol = psd_tolerance(a);
  if (e.lowest() < -tol) {
    throw Error(ErrorKind::NotPositiveSemidefinite,
                "lowest eigenvalue " + std::to_string(e.lowest()) + " below -" +
                    std::to_string(tol));
  }
  const int n = a.n();
  const double sigma_max = e.values.cwiseAbs().maxCoeff();
  GoodPositionReport report;
  for (int k = 0; k < n; ++k) {
    if (std::abs(e.values[k]) > kRankRelTol * sigma_max) ++report.rank;
  }
  if (report.rank != n - 1) {
    report.reason = GoodPositionReason::RankNotNMinus1;
    return report;
  }
  Vector kernel = e.lowest_vector();
  if (kernel.sum() < 0) kernel = -kernel;
  kernel /= kernel.lpNorm<1>();
  report.is_good = kernel.minCoeff() > kPosMargin;
  report.reason = report.is_good ? GoodPositionReason::Good
                                 : GoodPositionReason::KernelSignMixed;
  report.kernel_vector = std::move(kernel);
  return report;
}

Vector volume_eigenvector(const Presentation& u) {
  if (!good_position_report(u.gram()).is_good) {
    throw Error(ErrorKind::BadPosition, "presentation is not in good position");
  }
  const int n = u.n();
  const int d = n - 1;
  Eigen::JacobiSVD<Matrix> svd(u.columns(), Eigen::ComputeThinU);
  // Coordinates of the u_i in an orthonormal basis of span U.
  const Matrix coords = svd.matrixU().leftCols(d).transpose() * u.columns();
  Vector alpha(n);
  Matrix minor(d, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0, c = 0; j < n; ++j) {
      if (j != i) minor.col(c++) = coords.col(j);
    }
    alpha[i] = std::abs(determinant(minor)) / factorial(d);
  }
  return alpha / alpha.sum();
}

PerturbationPath project_origin(const Presentation& u) {
  const SymmetricMatrix a = u.gram();
  require_positive_definite(a, eigen_sorted(a).lowest());
  const Vector ones = ones_vector(u.n());
  const Vector inv_ones = a.entries().llt().solve(ones);
  const double denom = ones.dot(inv_ones);

  PerturbationPath path;
  path.u0_norm_sq = 1.0 / denom;
  path.u0 = path.u0_norm_sq * (u.columns() * inv_ones);
  if (u.ambient_dim() == u.n()) {
    const Vector via_transpose =
        path.u0_norm_sq * u.columns().transpose().fullPivLu().solve(ones);
    path.closed_form_gap = (via_transpose - path.u0).cwiseAbs().maxCoeff();
  }
  return path;
}

PerturbationPath perturbation_path(const Presentation& u, double s) {
  PerturbationPath path = project_origin(u);
  path.s = s;
  path.t = (s * s - 2.0 * s) * path.u0_norm_sq;
  return path;
}

Presentation perturb_presentation(const Presentation& u, double s) {
  const PerturbationPath path = project_origin(u);
  Matrix shifted = u.columns();
  shifted.colwise() -= s * path.u0;
  return Presentation(std::move(shifted));
}

double t_of_lambda(const SymmetricMatrix& a, double lambda) {
  const SymmetricMatrix shifted = a.shifted(-lambda, 0.0);
  require_positive_definite(shifted, eigen_sorted(shifted).lowest());
  const Vector ones = ones_vector(a.n());
  return -1.0 / ones.dot(shifted.entries().llt().solve(ones));
}

std::optional<double> inverse_ones_min(const SymmetricMatrix& a, double lambda) {
  const ShiftedInverse inv(a);
  if (inv.eig.lowest() + lambda <= psd_tolerance(a)) return std::nullopt;
  return inv.apply(lambda).minCoeff();
}

double lambda0_search(const SymmetricMatrix& a) {
  const ShiftedInverse inv(a);
  const double start = inv.op_norm() + 1.0;
  double hi = start;
  // (A + lambda I)^{-1} 1 -> 1/lambda > 0, so doubling terminates.
  for (int guard = 0; !lambda0_ok(inv, hi, start); ++guard) {
    if (guard > 200) {
      throw Error(ErrorKind::InvalidArgument, "lambda0 search did not terminate");
    }
    hi *= 2.0;
  }
  const double margin = kLambda0PdMargin * std::max(1.0, inv.op_norm());
  double lo = std::max(0.0, -inv.eig.lowest() + margin);
  if (lo >= hi) return hi;
  for (int step = 0; step < kLambda0Bisections; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (lambda0_ok(inv, mid, start)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

bool lambda0_certified(const SymmetricMatrix& a, double lambda0) {
  const ShiftedInverse inv(a);
  return lambda0_ok(inv, lambda0, inv.op_norm() + 1.0);
}

InteriorProjectionReport interior_projection_report(const SymmetricMatrix& a) {
  require_positive_definite(a, eigen_sorted(a).lowest());
  InteriorProjectionReport report;
  report.inverse_ones = a.entries().llt().solve(ones_vector(a.n()));
  report.inverse_ones_positive = report.inverse_ones.minCoeff() > 0.0;

  const Presentation u = factor_presentation(a);
  const PerturbationPath path = project_origin(u);
  report.barycentric = u.columns().fullPivLu().solve(path.u0);
  report.u0_interior = report.barycentric.minCoeff() > 0.0;
  return report;
}

}  // namespace reconlab
