#include "reconlab/verifiers.hpp"

#include "reconlab/error.hpp"
#include "reconlab/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace reconlab {

namespace {

constexpr int kLambdaGridPoints = 16;
constexpr int kWidenAttempts = 8;
constexpr double kCollapsedWidth = 1e-12;

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0.0)) return linspace(lo, hi, count);
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1)));
  }
  return out;
}

EigenspaceSample eigenspace_sample(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                   double t, const VerifyOptions& opts) {
  const EigenData ea = eigen_sorted(a.shifted(0.0, t));
  const EigenData eb = eigen_sorted(b.shifted(0.0, t));
  const int n = a.n();
  EigenspaceSample s;
  s.t = t;
  s.lambda_n_a = ea.lowest();
  s.lambda_n_b = eb.lowest();
  s.eigengap_a = ea.values[n - 2] - ea.lowest();
  s.eigengap_b = eb.values[n - 2] - eb.lowest();
  s.eigvec_alignment = abs_cosine(ea.lowest_vector(), eb.lowest_vector());
  s.scale = std::max({1.0, ea.values.cwiseAbs().maxCoeff(), eb.values.cwiseAbs().maxCoeff()});
  s.pass = std::abs(s.lambda_n_a - s.lambda_n_b) <= opts.eig_tol * s.scale &&
           s.eigengap_a > opts.gap_tol * s.scale && s.eigengap_b > opts.gap_tol * s.scale &&
           s.eigvec_alignment >= 1.0 - opts.align_tol;
  return s;
}

CoherenceSample coherence_sample(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                 double lambda, double t, const VerifyOptions& opts) {
  const SymmetricMatrix ma = a.shifted(-lambda, t);
  const SymmetricMatrix mb = b.shifted(-lambda, t);
  CoherenceSample c;
  c.lambda = lambda;
  c.t = t;
  c.lowest_a = eigen_sorted(ma).lowest();
  c.lowest_b = eigen_sorted(mb).lowest();
  c.good_a = good_position_report(ma).is_good;
  c.good_b = good_position_report(mb).is_good;
  const double scale = std::max(ma.scale(), mb.scale());
  c.pass = std::abs(c.lowest_a) <= opts.eig_tol * scale &&
           std::abs(c.lowest_b) <= opts.eig_tol * scale && c.good_a && c.good_b;
  return c;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  if (count == 1) return {lo};
  for (int k = 0; k < count; ++k) {
    out.push_back(lo + (hi - lo) * static_cast<double>(k) / (count - 1));
  }
  return out;
}

std::vector<double> default_grid() { return linspace(-4.0, 4.0, 9); }

double abs_cosine(const Vector& x, const Vector& y) {
  const double denom = x.norm() * y.norm();
  return denom == 0.0 ? 0.0 : std::abs(x.dot(y)) / denom;
}

HypomorphyCertificate gate(const SymmetricMatrix& a, const SymmetricMatrix& b,
                           const Hypomorphism& sigma, const VerifyOptions& opts) {
  HypomorphyCertificate cert = verify_hypomorphism(a, b, sigma, opts.hypomorphism_tol);
  if (!cert.valid && !opts.force) {
    throw Error(ErrorKind::NotHypomorphic,
                "sigma fails at deck index " + std::to_string(cert.failing_index.value_or(-1)) +
                    " (residual " + std::to_string(cert.worst_residual) + ")");
  }
  return cert;
}

ConstancyReport verify_lambda_constancy(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                        const Hypomorphism& sigma,
                                        const std::vector<double>& lambda_grid,
                                        const std::vector<double>& t_grid,
                                        const VerifyOptions& opts) {
  gate(a, b, sigma, opts);
  ConstancyReport r;
  double scale = 1.0;
  for (double t : t_grid) {
    const double da0 = shifted_det(a, 0.0, t);
    const double db0 = shifted_det(b, 0.0, t);
    scale = std::max({scale, std::abs(da0), std::abs(db0)});
    for (double lambda : lambda_grid) {
      GridPoint p{lambda, t, shifted_det(a, lambda, t), shifted_det(b, lambda, t), 0.0};
      p.residual = std::abs((p.det_a - p.det_b) - (da0 - db0));
      scale = std::max({scale, std::abs(p.det_a), std::abs(p.det_b)});
      r.max_residual = std::max(r.max_residual, p.residual);
      r.points.push_back(p);
    }
  }
  r.scale = scale;
  r.pass = r.max_residual <= opts.det_tol * r.scale;
  return r;
}

TutteReport verify_tutte_identity(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                  const Hypomorphism& sigma,
                                  const std::vector<double>& lambda_grid,
                                  const std::vector<double>& t_grid,
                                  const VerifyOptions& opts) {
  gate(a, b, sigma, opts);
  TutteReport r;
  for (double lambda : lambda_grid) {
    for (double t : t_grid) {
      GridPoint p{lambda, t, shifted_det(a, lambda, t), shifted_det(b, lambda, t), 0.0};
      p.residual = std::abs(p.det_a - p.det_b);
      r.scale = std::max({r.scale, std::abs(p.det_a), std::abs(p.det_b)});
      r.max_abs_diff = std::max(r.max_abs_diff, p.residual);
      r.grid.push_back(p);
    }
  }
  r.pass = r.max_abs_diff <= opts.det_tol * r.scale;
  return r;
}

KernelReport verify_equal_kernels(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                  const Hypomorphism& sigma, const VerifyOptions& opts) {
  gate(a, b, sigma, opts);
  const GoodPositionReport ga = good_position_report(a);
  const GoodPositionReport gb = good_position_report(b);
  if (!ga.is_good || !gb.is_good) {
    throw Error(ErrorKind::BadPosition,
                std::string(ga.is_good ? "B" : "A") + " has no presentation in good position");
  }
  KernelReport r;
  r.kernel_a = *ga.kernel_vector;
  r.kernel_b = *gb.kernel_vector;
  r.alignment = abs_cosine(r.kernel_a, r.kernel_b);
  r.volume_alignment = abs_cosine(r.kernel_a, volume_eigenvector(factor_presentation(a)));
  r.pass = r.alignment >= 1.0 - opts.align_tol && r.volume_alignment >= 1.0 - opts.align_tol;
  return r;
}

TAgreementReport verify_t_agreement(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                    const Hypomorphism& sigma, double lambda,
                                    const VerifyOptions& opts) {
  gate(a, b, sigma, opts);
  TAgreementReport r;
  r.lambda = lambda;
  r.lambda0_a = lambda0_search(a);
  r.lambda0_b = lambda0_search(b);
  if (lambda < r.lambda0_a || lambda < r.lambda0_b) {
    throw Error(ErrorKind::LambdaTooSmall,
                "lambda " + std::to_string(lambda) + " below lambda0 " +
                    std::to_string(std::max(r.lambda0_a, r.lambda0_b)));
  }
  r.t_a = t_of_lambda(a, lambda);
  r.t_b = t_of_lambda(b, lambda);
  r.diff = std::abs(r.t_a - r.t_b);
  r.pass = r.diff <= opts.t_tol * std::max(1.0, std::abs(r.t_a));
  return r;
}

EigenspaceReport verify_lowest_eigenspaces(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                           const Hypomorphism& sigma, int n_t_samples,
                                           const VerifyOptions& opts) {
  if (n_t_samples < 1) {
    throw Error(ErrorKind::InvalidArgument, "need at least one t sample");
  }
  gate(a, b, sigma, opts);
  EigenspaceReport r;
  r.lambda0 = std::max(lambda0_search(a), lambda0_search(b));
  double hi = 4.0 * r.lambda0 + 1.0;
  for (int attempt = 0;; ++attempt) {
    r.lambda_grid = geometric_grid(r.lambda0, hi, kLambdaGridPoints);
    r.t_of_lambda_values.clear();
    for (double l : r.lambda_grid) r.t_of_lambda_values.push_back(t_of_lambda(a, l));
    const auto [lo_it, hi_it] =
        std::minmax_element(r.t_of_lambda_values.begin(), r.t_of_lambda_values.end());
    r.t_interval = {*lo_it, *hi_it};
    const double width = r.t_interval.second - r.t_interval.first;
    if (width >= kCollapsedWidth * std::max(1.0, std::abs(r.t_interval.first))) break;
    if (attempt == kWidenAttempts) {
      r.interval_collapsed = true;
      return r;
    }
    hi *= 4.0;
  }

  // Interior points of the open interval.
  const auto [t_lo, t_hi] = r.t_interval;
  for (int k = 0; k < n_t_samples; ++k) {
    const double t = t_lo + (t_hi - t_lo) * (k + 0.5) / n_t_samples;
    r.samples.push_back(eigenspace_sample(a, b, t, opts));
  }
  r.pass = std::all_of(r.samples.begin(), r.samples.end(),
                       [](const EigenspaceSample& s) { return s.pass; });

  for (std::size_t k = 0; k < r.lambda_grid.size(); ++k) {
    r.coherence.push_back(
        coherence_sample(a, b, r.lambda_grid[k], r.t_of_lambda_values[k], opts));
  }
  r.coherence_pass = std::all_of(r.coherence.begin(), r.coherence.end(),
                                 [](const CoherenceSample& c) { return c.pass; });
  return r;
}

EigenspaceReport verify_highest_eigenspaces(const SymmetricMatrix& a,
                                            const SymmetricMatrix& b,
                                            const Hypomorphism& sigma, int n_t_samples,
                                            const VerifyOptions& opts) {
  // -B_i = sigma_i (-A_i) sigma_i^t, and the lowest eigenpairs of -M are the
  // highest of M.
  return verify_lowest_eigenspaces(-a, -b, sigma, n_t_samples, opts);
}

}  // namespace reconlab
