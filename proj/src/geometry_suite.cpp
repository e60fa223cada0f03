#include "reconlab/geometry_suite.hpp"

#include "reconlab/error.hpp"
#include "reconlab/solid_angle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace reconlab {

namespace {

using Rng = std::mt19937_64;

Matrix gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = normal(rng);
  }
  return m;
}

SymmetricMatrix random_pd(Rng& rng, int n) {
  const Matrix w = gaussian(rng, n, n);
  return Presentation(w).gram().shifted(-0.1, 0.0);
}

// PSD of rank n-1 with kernel spanned by alpha.
SymmetricMatrix with_kernel(Rng& rng, const Vector& alpha) {
  const int n = static_cast<int>(alpha.size());
  const Matrix proj =
      Matrix::Identity(n, n) - alpha * alpha.transpose() / alpha.squaredNorm();
  return Presentation(gaussian(rng, n, n) * proj).gram();
}

double scale_of(const SymmetricMatrix& a) { return std::max(1.0, a.scale()); }

class Tally {
 public:
  explicit Tally(std::vector<InvariantTally>& out) : out_(out) {}

  void record(const std::string& name, int instance, bool ok) {
    auto it = std::find_if(out_.begin(), out_.end(),
                           [&](const InvariantTally& t) { return t.name == name; });
    if (it == out_.end()) {
      out_.push_back({name, 0, 0, -1});
      it = out_.end() - 1;
    }
    if (ok) {
      ++it->passed;
    } else {
      ++it->failed;
      if (it->first_failure < 0) it->first_failure = instance;
    }
  }

 private:
  std::vector<InvariantTally>& out_;
};

void run_instance(Rng& rng, int k, const GeometrySuiteOptions& opts, Tally& tally) {
  const int n = std::uniform_int_distribution<int>(3, 8)(rng);
  std::uniform_real_distribution<double> weight(0.05, 1.0);

  // Rank n-1 with a chosen kernel; every third instance gets a sign flip.
  Vector alpha(n);
  for (int i = 0; i < n; ++i) alpha[i] = weight(rng);
  const bool expect_good = k % 3 != 2;
  if (!expect_good) alpha[k % n] = -alpha[k % n];
  const SymmetricMatrix singular = with_kernel(rng, alpha);
  const GoodPositionReport gp = good_position_report(singular);
  const Presentation sp = factor_presentation(singular);
  tally.record("good_position_equivalence", k,
               gp.is_good == geometric_good_position(sp) && gp.is_good == expect_good);
  if (gp.is_good) {
    const Vector v = volume_eigenvector(sp);
    const double res = (singular.entries() * v).cwiseAbs().maxCoeff();
    tally.record("volume_eigenvector_in_kernel", k,
                 res <= opts.residual_tol * scale_of(singular) && v.minCoeff() > 0.0);
  }

  const SymmetricMatrix a = random_pd(rng, n);
  const double scale = scale_of(a);
  const Presentation u = factor_presentation(a);
  const PerturbationPath path = project_origin(u);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(path.u0.dot(u.column(i) - path.u0)));
  }
  tally.record("u0_orthogonal_residual", k, worst <= opts.residual_tol * scale);

  bool gram_ok = true;
  for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
    const Matrix expected = a.shifted(0.0, (s * s - 2.0 * s) * path.u0_norm_sq).entries();
    const double diff =
        (perturb_presentation(u, s).gram().entries() - expected).cwiseAbs().maxCoeff();
    gram_ok = gram_ok && diff <= opts.residual_tol * scale;
  }
  tally.record("perturbation_gram_law", k, gram_ok);

  const double r2 = path.u0_norm_sq;
  const double above = eigen_sorted(a.shifted(0.0, -r2 + 1e-4 * r2)).lowest();
  const double at = eigen_sorted(a.shifted(0.0, -r2)).lowest();
  tally.record("definiteness_boundary", k, above > 0.0 && std::abs(at) <= opts.eig_tol * scale);

  bool monotone = true;
  double prev = t_of_lambda(a, 0.0);
  for (double lambda = 0.125; lambda <= 16.0; lambda *= 2.0) {
    const double t = t_of_lambda(a, lambda);
    monotone = monotone && t < prev && t < 0.0;
    prev = t;
  }
  tally.record("t_of_lambda_monotone", k, monotone);

  const InteriorProjectionReport ip = interior_projection_report(a);
  tally.record("interior_projection_equivalence", k,
               ip.u0_interior == ip.inverse_ones_positive);

  const Matrix m0 = gaussian(rng, n, n);
  const SymmetricMatrix indefinite(0.5 * (m0 + m0.transpose()));
  tally.record("lambda0_certified", k, lambda0_certified(indefinite, lambda0_search(indefinite)));

  // Solid-angle invariants use the closed forms so they are exact per instance.
  const int d = 2 + k % 2;
  Matrix g = gaussian(rng, d, d);
  g += 1.5 * Matrix::Ones(d, d);
  const SolidAngleEstimate e = angle_fraction(Cone{Vector::Zero(d), g, std::nullopt}, 1);
  tally.record("simplicial_fraction_below_half", k, e.fraction > 0.0 && e.fraction < 0.5);

  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, d, d));
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const SolidAngleEstimate rotated = angle_fraction(Cone{Vector::Zero(d), q * g, std::nullopt}, 1);
  tally.record("congruence_invariance", k,
               std::abs(rotated.fraction - e.fraction) <= opts.residual_tol);

  const int parts = 3 + k % 2;
  Vector beta(parts);
  for (int i = 0; i < parts; ++i) beta[i] = weight(rng);
  Matrix w = gaussian(rng, parts - 1, parts);
  const Vector centre = w * beta / beta.sum();
  w.colwise() -= centre;
  const PartitionResult part = partition_check(Presentation(w), 1);
  tally.record("partition_sums_to_one", k,
               std::abs(part.sum_fraction - 1.0) <= opts.residual_tol);
}

}  // namespace

bool geometric_good_position(const Presentation& u) {
  const int n = u.n();
  Eigen::JacobiSVD<Matrix> svd(u.columns(), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return false;
  // Singular values are square roots of Gram eigenvalues, so a zero Gram
  // eigenvalue carrying 1e-16 roundoff reads as 1e-8 here.
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) rank += sv[k] > 1e-6 * sv[0] ? 1 : 0;
  if (rank != n - 1) return false;
  Matrix system(n, n);
  system << svd.matrixU().leftCols(rank).transpose() * u.columns(), Matrix::Ones(1, n);
  Vector rhs = Vector::Zero(n);
  rhs[n - 1] = 1.0;
  Eigen::FullPivLU<Matrix> lu(system);
  if (!lu.isInvertible()) return false;
  return lu.solve(rhs).minCoeff() > kPosMargin;
}

GeometrySuiteReport run_geometry_suite(std::uint64_t seed, int count,
                                       const GeometrySuiteOptions& opts) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1");
  GeometrySuiteReport r;
  r.seed = seed;
  r.count = count;
  Tally tally(r.invariants);
  for (int k = 0; k < count; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    Rng rng(seq);
    run_instance(rng, k, opts, tally);
  }
  r.pass = std::all_of(r.invariants.begin(), r.invariants.end(),
                       [](const InvariantTally& t) { return t.failed == 0; });
  return r;
}

}  // namespace reconlab
