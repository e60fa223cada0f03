#include "doctest.h"
#include "oracles.hpp"

#include "reconlab/error.hpp"
#include "reconlab/presentation.hpp"

#include <cmath>

using namespace reconlab;
using reconlab::testing::random_matrix;
using reconlab::testing::random_pd;

namespace {

double inf_diff(const Matrix& x, const Matrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

SymmetricMatrix equilateral() {
  return SymmetricMatrix::from_rows({{1, -0.5, -0.5}, {-0.5, 1, -0.5}, {-0.5, -0.5, 1}});
}

// Three planar vectors in R^3 with 1(2,0) + 2(0,1) + 2(-1,-1) = 0.
Presentation planar_triangle() {
  return Presentation(Matrix{{2, 0, -1}, {0, 1, -1}, {0, 0, 0}});
}

// Random PSD matrix of rank n-1 whose kernel is spanned by `alpha`.
SymmetricMatrix with_kernel(std::mt19937_64& rng, const Vector& alpha) {
  const int n = static_cast<int>(alpha.size());
  const Matrix proj = Matrix::Identity(n, n) - alpha * alpha.transpose() / alpha.squaredNorm();
  const Matrix u = random_matrix(rng, n, n) * proj;
  return Presentation(u).gram();
}

// Def-level check on U itself: span dimension n-1 and the origin has unique,
// strictly positive affine weights over the u_i.
bool geometric_good_position(const Presentation& p) {
  const int n = p.n();
  Eigen::JacobiSVD<Matrix> svd(p.columns(), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  // Singular values are square roots of Gram eigenvalues, so roundoff in a
  // zero eigenvalue shows up near 1e-8 here.
  for (int k = 0; k < sv.size(); ++k) rank += sv[k] > 1e-6 * sv[0] ? 1 : 0;
  if (rank != n - 1) return false;
  // Coordinates in the span, then affine weights of the origin.
  Matrix system(n, n);
  system << svd.matrixU().leftCols(rank).transpose() * p.columns(), Matrix::Ones(1, n);
  Vector rhs = Vector::Zero(n);
  rhs[n - 1] = 1.0;
  const Vector w = system.fullPivLu().solve(rhs);
  return w.minCoeff() > 1e-9;
}

}  // namespace

TEST_CASE("factor_presentation") {
  const auto u = factor_presentation(SymmetricMatrix::identity(3));
  CHECK(inf_diff(u.columns().transpose() * u.columns(), Matrix::Identity(3, 3)) <= 1e-12);

  const auto j = factor_presentation(SymmetricMatrix::ones(3));
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) CHECK(j.column(a).dot(j.column(b)) == doctest::Approx(1.0));
  }

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7;
    const Matrix w = random_matrix(rng, n - trial % 2, n);
    const SymmetricMatrix a = Presentation(w).gram();
    const auto p = factor_presentation(a);
    CHECK(inf_diff(p.gram().entries(), a.entries()) <= 1e-9 * a.scale());
  }

  CHECK_THROWS_AS(factor_presentation(SymmetricMatrix::from_rows({{1, 2}, {2, 1}})), Error);
}

TEST_CASE("good_position_report") {
  auto r = good_position_report(equilateral());
  CHECK(r.is_good);
  CHECK(r.rank == 2);
  REQUIRE(r.kernel_vector);
  for (int k = 0; k < 3; ++k) CHECK((*r.kernel_vector)[k] == doctest::Approx(1.0 / 3));

  r = good_position_report(SymmetricMatrix::identity(3));
  CHECK_FALSE(r.is_good);
  CHECK(r.reason == GoodPositionReason::RankNotNMinus1);
  CHECK(r.rank == 3);

  r = good_position_report(planar_triangle().gram());
  CHECK(r.is_good);
  REQUIRE(r.kernel_vector);
  CHECK((*r.kernel_vector)[0] == doctest::Approx(0.2));
  CHECK((*r.kernel_vector)[1] == doctest::Approx(0.4));
  CHECK((*r.kernel_vector)[2] == doctest::Approx(0.4));

  // Kernel (1, 1, -1): the origin lies on the affine hull but outside conv U.
  std::mt19937_64 rng(42);
  r = good_position_report(with_kernel(rng, Vector{{1.0, 1.0, -1.0}}));
  CHECK(r.rank == 2);
  CHECK(r.reason == GoodPositionReason::KernelSignMixed);
  CHECK_FALSE(r.is_good);

  CHECK_THROWS_AS(good_position_report(SymmetricMatrix::from_rows({{1, 2}, {2, 1}})), Error);
}

TEST_CASE("good position agrees with the geometric definition") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  int good = 0, bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 6;
    Vector alpha(n);
    for (int k = 0; k < n; ++k) alpha[k] = weight(rng);
    if (trial % 3 == 2) alpha[trial % n] = -alpha[trial % n];
    const SymmetricMatrix a = with_kernel(rng, alpha);
    const bool report = good_position_report(a).is_good;
    CHECK(report == geometric_good_position(factor_presentation(a)));
    CHECK(report == (trial % 3 != 2));
    (report ? good : bad)++;
  }
  CHECK(good > 100);
  CHECK(bad > 50);
}

TEST_CASE("volume_eigenvector") {
  const Vector eq = volume_eigenvector(factor_presentation(equilateral()));
  for (int k = 0; k < 3; ++k) CHECK(eq[k] == doctest::Approx(1.0 / 3));

  // Triangle areas 1/2 |det|: (1/2, 1, 1).
  const Vector tri = volume_eigenvector(planar_triangle());
  CHECK(tri[0] == doctest::Approx(0.2));
  CHECK(tri[1] == doctest::Approx(0.4));
  CHECK(tri[2] == doctest::Approx(0.4));

  CHECK_THROWS_AS(volume_eigenvector(Presentation(Matrix::Identity(3, 3))), Error);

  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 6;
    Vector alpha(n);
    for (int k = 0; k < n; ++k) alpha[k] = weight(rng);
    const SymmetricMatrix a = with_kernel(rng, alpha);
    const Vector v = volume_eigenvector(factor_presentation(a));
    CHECK(v.minCoeff() > 0);
    CHECK((a.entries() * v).cwiseAbs().maxCoeff() <= 1e-9 * a.scale());
    CHECK((v - alpha / alpha.sum()).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("project_origin") {
  auto path = project_origin(Presentation(Matrix::Identity(3, 3)));
  CHECK(path.u0_norm_sq == doctest::Approx(1.0 / 3));
  for (int k = 0; k < 3; ++k) CHECK(path.u0[k] == doctest::Approx(1.0 / 3));

  // Distance from the origin to the line through (1,0) and (0,2), by least
  // squares over the line's parametrization.
  const Matrix u{{1, 0}, {0, 2}};
  path = project_origin(Presentation(u));
  const Vector p0 = u.col(0), dir = u.col(1) - u.col(0);
  const double s = -p0.dot(dir) / dir.squaredNorm();
  CHECK(path.u0_norm_sq == doctest::Approx((p0 + s * dir).squaredNorm()));
  CHECK(path.u0_norm_sq == doctest::Approx(0.8));

  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const auto p = factor_presentation(random_pd(rng, n));
    const auto pp = project_origin(p);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(pp.u0.dot(p.column(i) - pp.u0)) <= 1e-9 * std::max(1.0, p.gram().scale()));
    }
    CHECK(pp.closed_form_gap <= 1e-10 * std::max(1.0, pp.u0.cwiseAbs().maxCoeff()));
  }

  CHECK_THROWS_AS(project_origin(Presentation(Matrix{{1, 1}, {0, 0}})), Error);
}

TEST_CASE("perturb_presentation") {
  std::mt19937_64 rng(46);
  const SymmetricMatrix a = random_pd(rng, 4);
  const Presentation u = factor_presentation(a);
  CHECK(perturb_presentation(u, 0.0).columns() == u.columns());

  const auto reflected = perturb_presentation(u, 2.0);
  CHECK(inf_diff(reflected.gram().entries(), a.entries()) <= 1e-9 * a.scale());
  CHECK(inf_diff(reflected.columns(), u.columns()) > 1e-3);

  // I - J/3 has spectrum (1, 1, 0).
  const auto flat = perturb_presentation(Presentation(Matrix::Identity(3, 3)), 1.0);
  const Vector ev = eigen_sorted(flat.gram()).values;
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(std::abs(ev[2]) <= 1e-12);
  CHECK(inf_diff(flat.gram().entries(), Matrix::Identity(3, 3) - Matrix::Ones(3, 3) / 3) <= 1e-12);
}

TEST_CASE("perturbation Gram law and the definiteness boundary") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 6;
    const SymmetricMatrix a = random_pd(rng, n);
    const Presentation u = factor_presentation(a);
    const double r2 = project_origin(u).u0_norm_sq;
    for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      const auto path = perturbation_path(u, s);
      CHECK(path.t >= -r2 * (1 + 1e-12));
      const SymmetricMatrix expected = a.shifted(0.0, path.t);
      CHECK(inf_diff(perturb_presentation(u, s).gram().entries(), expected.entries()) <=
            1e-9 * a.scale());
    }
    const double eps = 1e-4 * r2;
    CHECK(eigen_sorted(a.shifted(0.0, -r2 + eps)).lowest() > 0.0);
    CHECK(std::abs(eigen_sorted(a.shifted(0.0, -r2)).lowest()) <= 1e-8 * a.scale());
    CHECK(perturbation_path(u, 1.0).t == doctest::Approx(-r2));
  }
}

TEST_CASE("t_of_lambda") {
  CHECK(t_of_lambda(SymmetricMatrix::zero(3), 3.0) == doctest::Approx(-1.0));
  CHECK(t_of_lambda(SymmetricMatrix::identity(3), 0.0) == doctest::Approx(-1.0 / 3));
  CHECK_THROWS_AS(t_of_lambda(SymmetricMatrix::identity(3), -1.0), Error);
  CHECK_THROWS_AS(t_of_lambda(SymmetricMatrix::identity(3), -2.0), Error);

  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 7;
    const SymmetricMatrix a = random_pd(rng, n);
    const double lambda = 0.5 * (trial % 4);
    const double via_u0 = -project_origin(factor_presentation(a.shifted(-lambda, 0.0))).u0_norm_sq;
    CHECK(std::abs(t_of_lambda(a, lambda) - via_u0) <= 1e-10 * std::max(1.0, std::abs(via_u0)));
  }
}

TEST_CASE("t_of_lambda increases on lambda grids for PSD matrices") {
  std::mt19937_64 rng(49);
  for (int trial = 0; trial < 20; ++trial) {
    const SymmetricMatrix a = random_pd(rng, 3 + trial % 5);
    double prev = t_of_lambda(a, 0.0);
    for (double lambda = 0.25; lambda <= 8.0; lambda *= 1.5) {
      const double t = t_of_lambda(a, lambda);
      CHECK(t < 0.0);
      // Moves away from zero as lambda grows.
      CHECK(t < prev);
      prev = t;
    }
  }
}

TEST_CASE("lambda0_search") {
  const double l_id = lambda0_search(SymmetricMatrix::identity(3));
  CHECK(l_id >= 0.0);
  CHECK(lambda0_certified(SymmetricMatrix::identity(3), l_id));

  // (A + lambda I)^{-1} 1 = (lambda - 1)^{-1} 1 for this A.
  const auto anti = SymmetricMatrix::from_rows({{0, -1}, {-1, 0}});
  const double l_anti = lambda0_search(anti);
  CHECK(l_anti >= 1.0);
  CHECK(l_anti <= 1.01);

  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = reconlab::testing::random_symmetric(rng, 3 + trial % 6);
    const double l0 = lambda0_search(a);
    CHECK(lambda0_certified(a, l0));
    for (double l : {l0, 2 * l0, 10 * l0}) {
      const Vector x = a.shifted(-l, 0.0).entries().llt().solve(Vector::Ones(a.n()));
      CHECK(x.minCoeff() >= kPosMargin);
    }
  }
}

TEST_CASE("interior projection conditions agree") {
  auto r = interior_projection_report(SymmetricMatrix::identity(3));
  CHECK(r.u0_interior);
  CHECK(r.inverse_ones_positive);

  const auto d = SymmetricMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 100}});
  r = interior_projection_report(d);
  CHECK(r.u0_interior);
  CHECK(r.inverse_ones_positive);
  CHECK(r.inverse_ones[2] == doctest::Approx(0.01));

  // inverse [[5,-2],[-2,1]] sends 1 to (3, -1).
  r = interior_projection_report(SymmetricMatrix::from_rows({{1, 2}, {2, 5}}));
  CHECK_FALSE(r.u0_interior);
  CHECK_FALSE(r.inverse_ones_positive);

  std::mt19937_64 rng(51);
  int mixed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_pd(rng, 2 + trial % 6);
    r = interior_projection_report(a);
    CHECK(r.u0_interior == r.inverse_ones_positive);
    CHECK(r.barycentric.sum() == doctest::Approx(1.0));
    mixed += r.inverse_ones_positive ? 0 : 1;
  }
  CHECK(mixed > 0);

  CHECK_THROWS_AS(interior_projection_report(SymmetricMatrix::ones(3)), Error);
}
