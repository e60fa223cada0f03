#pragma once

// End-to-end numerical checks on hypomorphic pairs: constancy of the
// determinant difference in lambda, the shifted-determinant identity, equal
// kernels in good position, agreement of t(lambda), and equal lowest
// eigenspaces on an interval of J-shifts.
//
// Every verifier first re-runs verify_hypomorphism; `force` skips that gate
// so negative controls can be evaluated.

#include "reconlab/hypomorphism.hpp"
#include "reconlab/matrix_core.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace reconlab {

struct VerifyOptions {
  double hypomorphism_tol = kExactTol;
  double det_tol = 1e-8;      // lambda-constancy and the determinant identity
  double t_tol = 1e-10;       // t(lambda) agreement
  double eig_tol = 1e-9;      // lowest eigenvalue agreement, times scale
  double gap_tol = 1e-8;      // eigengap floor, times scale
  double align_tol = 1e-9;    // 1 - |cos|
  bool force = false;
};

// 9 evenly spaced points over [-4, 4].
std::vector<double> default_grid();
std::vector<double> linspace(double lo, double hi, int count);

struct GridPoint {
  double lambda = 0.0;
  double t = 0.0;
  double det_a = 0.0;
  double det_b = 0.0;
  double residual = 0.0;
};

struct ConstancyReport {
  std::vector<GridPoint> points;  // residual = |f(lambda,t) - f(0,t)|
  double max_residual = 0.0;
  double scale = 1.0;
  bool pass = false;
};

// f(lambda, t) = det(A - lambda I + tJ) - det(B - lambda I + tJ) is constant
// in lambda at each fixed t.
ConstancyReport verify_lambda_constancy(const SymmetricMatrix& a, const SymmetricMatrix& b,
                     const Hypomorphism& sigma, const std::vector<double>& lambda_grid,
                     const std::vector<double>& t_grid, const VerifyOptions& opts = {});

struct TutteReport {
  std::vector<GridPoint> grid;  // residual = |det_a - det_b|
  double max_abs_diff = 0.0;
  double scale = 1.0;  // max(1, max |det|)
  bool pass = false;
};

TutteReport verify_tutte_identity(const SymmetricMatrix& a, const SymmetricMatrix& b,
                         const Hypomorphism& sigma, const std::vector<double>& lambda_grid,
                         const std::vector<double>& t_grid, const VerifyOptions& opts = {});

struct KernelReport {
  Vector kernel_a;
  Vector kernel_b;
  double alignment = 0.0;          // |cos(kernel_a, kernel_b)|
  double volume_alignment = 0.0;   // |cos(kernel_a, volume_eigenvector)|
  bool pass = false;
};

// Both matrices in good position; their one-dimensional kernels coincide.
KernelReport verify_equal_kernels(const SymmetricMatrix& a, const SymmetricMatrix& b,
                         const Hypomorphism& sigma, const VerifyOptions& opts = {});

struct TAgreementReport {
  double lambda = 0.0;
  double lambda0_a = 0.0;
  double lambda0_b = 0.0;
  double t_a = 0.0;
  double t_b = 0.0;
  double diff = 0.0;
  bool pass = false;
};

// t(lambda) computed separately for A and B agree; lambda must not be below
// either lambda0.
TAgreementReport verify_t_agreement(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                     const Hypomorphism& sigma, double lambda,
                                     const VerifyOptions& opts = {});

struct EigenspaceSample {
  double t = 0.0;
  double lambda_n_a = 0.0;
  double lambda_n_b = 0.0;
  double eigengap_a = 0.0;
  double eigengap_b = 0.0;
  double eigvec_alignment = 0.0;
  double scale = 1.0;
  bool pass = false;
};

struct CoherenceSample {
  double lambda = 0.0;
  double t = 0.0;
  // Lowest eigenvalue of A + lambda I + t(lambda) J.
  double lowest_a = 0.0;
  double lowest_b = 0.0;
  bool good_a = false;
  bool good_b = false;
  bool pass = false;
};

struct EigenspaceReport {
  double lambda0 = 0.0;
  std::vector<double> lambda_grid;
  std::vector<double> t_of_lambda_values;
  std::pair<double, double> t_interval{0.0, 0.0};
  bool interval_collapsed = false;
  std::vector<EigenspaceSample> samples;
  std::vector<CoherenceSample> coherence;
  bool coherence_pass = false;
  bool pass = false;
};

/// Maps a 16-point geometric lambda grid on [lambda0, 4 lambda0 + 1] through
/// t(lambda), then at n_t_samples interior points of the image interval
/// checks: equal lowest eigenvalues of A + tJ and B + tJ, a simple lowest
/// eigenvalue on both sides, and colinear lowest eigenvectors.
EigenspaceReport verify_lowest_eigenspaces(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                      const Hypomorphism& sigma, int n_t_samples = 10,
                                      const VerifyOptions& opts = {});

// Experimental: the same check for the highest eigenspaces, run on -A, -B.
EigenspaceReport verify_highest_eigenspaces(const SymmetricMatrix& a,
                                              const SymmetricMatrix& b,
                                              const Hypomorphism& sigma,
                                              int n_t_samples = 10,
                                              const VerifyOptions& opts = {});

// Throws NotHypomorphic unless opts.force or the certificate is valid.
HypomorphyCertificate gate(const SymmetricMatrix& a, const SymmetricMatrix& b,
                           const Hypomorphism& sigma, const VerifyOptions& opts);

// |cos| between two vectors.
double abs_cosine(const Vector& x, const Vector& y);

}  // namespace reconlab
