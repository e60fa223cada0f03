#include "doctest.h"
#include "oracles.hpp"

#include "reconlab/error.hpp"
#include "reconlab/presentation.hpp"
#include "reconlab/solid_angle.hpp"

#include <cmath>
#include <numbers>

using namespace reconlab;
using reconlab::testing::random_matrix;
using reconlab::testing::random_orthogonal;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kSamples = 400000;

Cone origin_cone(const Matrix& gens, std::optional<int> d = std::nullopt) {
  return Cone{Vector::Zero(gens.rows()), gens, d};
}

// Hit rate of Gaussian directions, sampled here with a separate generator and
// a separate membership test (explicit inverse, not the library's path).
double sampled_fraction(const Matrix& square_gens, std::int64_t samples, std::uint64_t seed) {
  const Matrix inv = square_gens.inverse();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::int64_t hits = 0;
  Vector z(square_gens.rows());
  for (std::int64_t s = 0; s < samples; ++s) {
    for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = normal(rng);
    hits += (inv * z).minCoeff() >= 0.0 ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

bool within_sigmas(const SolidAngleEstimate& e, double expected, double k = 5.0) {
  const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(e.samples));
  return std::abs(e.fraction - expected) <= k * sigma;
}

// Generators of a random simplicial cone that is not too thin.
Matrix random_cone(std::mt19937_64& rng, int d) {
  Matrix g = random_matrix(rng, d, d);
  g += 1.5 * Matrix::Ones(d, d);
  return g;
}

}  // namespace

TEST_CASE("closed forms") {
  auto e = angle_fraction(origin_cone(Matrix::Identity(2, 2)), kSamples);
  CHECK(e.method == AngleMethod::Exact2D);
  CHECK(e.fraction == doctest::Approx(0.25));
  CHECK(e.abs_norm == doctest::Approx(kPi / 4));
  CHECK(e.samples == 0);

  e = angle_fraction(origin_cone(Matrix::Identity(3, 3)), kSamples);
  CHECK(e.method == AngleMethod::Exact3D);
  CHECK(e.fraction == doctest::Approx(0.125));
  CHECK(e.abs_norm == doctest::Approx(kPi / 6));

  e = angle_fraction(origin_cone(Matrix{{1, 1}, {0, 1}}), kSamples);
  CHECK(e.fraction == doctest::Approx(0.125));

  e = angle_fraction(origin_cone(Matrix{{3}}), kSamples);
  CHECK(e.method == AngleMethod::Exact1D);
  CHECK(e.fraction == 0.5);
  CHECK(e.abs_norm == doctest::Approx(1.0));

  // Obtuse planar angle.
  e = angle_fraction(origin_cone(Matrix{{1, -1}, {0, 0.001}}), kSamples);
  CHECK(e.fraction == doctest::Approx(std::atan2(0.001, -1.0) / (2 * kPi)));
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
  CHECK(unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0));
}

TEST_CASE("measure-zero law") {
  // Two generators in R^3 measured in R^3.
  const Matrix g{{1, 0}, {0, 1}, {0, 0}};
  auto e = angle_fraction(origin_cone(g, 3), kSamples);
  CHECK(e.method == AngleMethod::ZeroMeasure);
  CHECK(e.fraction == 0.0);
  // Same cone measured in its span.
  e = angle_fraction(origin_cone(g), kSamples);
  CHECK(e.fraction == doctest::Approx(0.25));
  CHECK(e.ambient_dim == 2);

  CHECK_THROWS_AS(angle_fraction(origin_cone(g, 1), kSamples), Error);
  CHECK_THROWS_AS(angle_fraction(origin_cone(Matrix{{1, 2}, {1, 2}}), kSamples), Error);
  CHECK_THROWS_AS(angle_fraction(origin_cone(Matrix::Identity(2, 2)), 0), Error);
}

TEST_CASE("Van Oosterom-Strackee against independent sampling") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix g = random_cone(rng, 3);
    const auto exact = angle_fraction(origin_cone(g), kSamples);
    REQUIRE(exact.method == AngleMethod::Exact3D);
    const double sampled = sampled_fraction(g, 200000, 100 + trial);
    const double sigma = std::sqrt(exact.fraction * (1 - exact.fraction) / 200000.0);
    CHECK(std::abs(sampled - exact.fraction) <= 5 * sigma);
  }
}

TEST_CASE("Monte Carlo on cones with known norm") {
  for (int d : {4, 5, 6}) {
    const auto e = angle_fraction(origin_cone(Matrix::Identity(d, d)), kSamples, 7);
    CHECK(e.method == AngleMethod::MonteCarlo);
    CHECK(e.samples == kSamples);
    CHECK(within_sigmas(e, std::ldexp(1.0, -d)));
    CHECK(e.std_error > 0.0);
  }
  // Orthogonal product of a quadrant and a 60 degree planar angle.
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = g(1, 1) = 1;
  g(2, 2) = 1;
  g(2, 3) = 0.5;
  g(3, 3) = std::sqrt(3.0) / 2;
  const auto e = angle_fraction(origin_cone(g), kSamples, 8);
  CHECK(within_sigmas(e, 0.25 / 6));

  std::mt19937_64 rng(62);
  const Matrix r = random_cone(rng, 5);
  const auto lib = angle_fraction(origin_cone(r), kSamples, 9);
  const double oracle = sampled_fraction(r, kSamples, 10);
  CHECK(std::abs(lib.fraction - oracle) <= 5 * std::sqrt(2.0) * lib.std_error + 1e-12);
}

TEST_CASE("sampling is deterministic in the seed") {
  const Matrix g = Matrix::Identity(5, 5) + 0.3 * Matrix::Ones(5, 5);
  const auto a = angle_fraction(origin_cone(g), 300000, 11);
  const auto b = angle_fraction(origin_cone(g), 300000, 11);
  CHECK(a.fraction == b.fraction);
  CHECK(a.seed == 11);
  const auto c = angle_fraction(origin_cone(g), 300000, 12);
  CHECK(c.fraction != a.fraction);
  // A shorter run reuses the leading chunks of the longer one.
  const auto whole = angle_fraction(origin_cone(g), 1 << 17, 11);
  const auto half = angle_fraction(origin_cone(g), 1 << 16, 11);
  const auto first = angle_fraction(origin_cone(g), 1 << 16, 11);
  CHECK(half.fraction == first.fraction);
  CHECK(whole.fraction * (1 << 17) >= half.fraction * (1 << 16));
}

TEST_CASE("congruence invariance") {
  std::mt19937_64 rng(63);
  for (int d : {2, 3, 4}) {
    const Matrix g = random_cone(rng, d);
    const Matrix q = random_orthogonal(rng, d);
    const auto a = angle_fraction(origin_cone(g), kSamples, 13);
    const auto b = angle_fraction(origin_cone(q * g), kSamples, 14);
    CHECK(std::abs(a.fraction - b.fraction) <= 5 * combined_error(a, b) + 1e-12);
    // Translating the apex with the points changes nothing.
    const Vector shift = random_matrix(rng, d, 1);
    Matrix points = g;
    points.colwise() += shift;
    const auto c = angle_fraction(Cone::at(shift, points), kSamples, 13);
    CHECK(std::abs(a.fraction - c.fraction) <= 1e-12 + 5 * combined_error(a, c));
  }
}

TEST_CASE("cone_contains") {
  const Cone quadrant = origin_cone(Matrix::Identity(2, 2));
  CHECK(cone_contains(quadrant, Vector{{1.0, 2.0}}));
  CHECK(cone_contains(quadrant, Vector{{1.0, 0.0}}));
  CHECK_FALSE(cone_contains(quadrant, Vector{{-0.1, 2.0}}));

  const Cone flat = origin_cone(Matrix{{1, 0}, {0, 1}, {0, 0}});
  CHECK(cone_contains(flat, Vector{{1.0, 1.0, 0.0}}));
  CHECK_FALSE(cone_contains(flat, Vector{{1.0, 1.0, 1e-3}}));

  CHECK_THROWS_AS(cone_contains(quadrant, Vector{{1.0, 1.0, 1.0}}), Error);
  CHECK_THROWS_AS(cone_contains(origin_cone(Matrix{{1, 2}, {1, 2}}), Vector{{1.0, 1.0}}), Error);
}

TEST_CASE("monotonicity_check") {
  const Cone outer = origin_cone(Matrix::Identity(3, 3));
  const Cone inner = origin_cone(Matrix{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}});
  CHECK(monotonicity_check(inner, outer, kSamples));

  // Lower-dimensional inner cone measured in the outer dimension.
  const Cone face = origin_cone(Matrix{{1, 0}, {0, 1}, {0, 0}});
  CHECK(monotonicity_check(face, outer, kSamples));

  CHECK_THROWS_AS(monotonicity_check(outer, inner, kSamples), Error);
  Cone moved = inner;
  moved.apex = Vector::Ones(3);
  CHECK_THROWS_AS(monotonicity_check(moved, outer, kSamples), Error);

  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 3 + trial % 3;
    const Matrix g = random_cone(rng, d);
    // Nonnegative mixtures of the outer generators stay inside.
    Matrix mix = (random_matrix(rng, d, d).cwiseAbs() + 0.1 * Matrix::Ones(d, d));
    const Cone cv = origin_cone(g);
    const Cone cu = origin_cone(g * mix);
    CHECK(monotonicity_check(cu, cv, kSamples, 20 + trial));
  }
}

TEST_CASE("comparison_check on a planar example") {
  // Apex moves from (0,-1) to the origin: 90 degrees to arccos(-0.6).
  const Matrix points{{-2, 2}, {1, 1}};
  const auto r = comparison_check(Vector{{0.0, -1.0}}, points, Vector::Zero(2), kSamples);
  CHECK(r.lhs.fraction == doctest::Approx(0.25));
  CHECK(r.rhs.fraction == doctest::Approx(std::acos(-0.6) / (2 * kPi)));
  CHECK(r.strict);
  CHECK(r.verdict == Verdict::Strict);

  // Outside the triangle.
  CHECK_THROWS_AS(comparison_check(Vector{{0.0, -1.0}}, points, Vector{{0.0, 2.0}}, kSamples),
                  Error);
  // On its boundary.
  CHECK_THROWS_AS(comparison_check(Vector{{0.0, -1.0}}, points, Vector{{-2.0, 1.0}}, kSamples),
                  Error);
}

TEST_CASE("comparison_check on random simplices") {
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 2 + trial % 3;
    const Matrix points = random_matrix(rng, d, d);
    const Vector u = random_matrix(rng, d, 1);
    Vector w(d + 1);
    for (int k = 0; k <= d; ++k) w[k] = unit(rng);
    w /= w.sum();
    const Vector v = w[d] * u + points * w.head(d);
    const auto r = comparison_check(u, points, v, kSamples, 30 + trial);
    CHECK(r.verdict != Verdict::Violated);
    if (d <= 3) CHECK(r.strict);
  }
}

TEST_CASE("displacement_check on a worked example") {
  // Right angle at the origin; lifting the apex by sqrt(2) gives 60 degrees.
  const Matrix points{{1, -1}, {1, 1}, {0, 0}};
  const auto r = displacement_check(Vector::Zero(3), points, Vector{{0.0, 0.0, std::sqrt(2.0)}},
                                    kSamples);
  CHECK(r.at_u.fraction == doctest::Approx(0.25));
  CHECK(r.at_v.fraction == doctest::Approx(1.0 / 6));
  CHECK(r.at_v_prime.fraction == doctest::Approx(r.at_v.fraction));
  CHECK(r.v_prime[0] == doctest::Approx(0.0));
  CHECK(r.v_prime[1] == doctest::Approx(1.0 - std::sqrt(3.0)));
  CHECK(r.strict);

  CHECK_THROWS_AS(displacement_check(Vector::Zero(3), points, Vector{{0.0, 0.1, 1.0}}, kSamples),
                  Error);
  CHECK_THROWS_AS(displacement_check(Vector::Zero(3), points, Vector::Zero(3), kSamples), Error);
  // Projection onto the line y = 1 falls outside the segment.
  const Matrix skew{{1, 2}, {1, 1}, {0, 0}};
  CHECK_THROWS_AS(displacement_check(Vector::Zero(3), skew, Vector{{0.0, 0.0, 1.0}}, kSamples),
                  Error);
}

TEST_CASE("displaced angle shrinks with the displacement") {
  const Matrix points{{1, -1}, {1, 1}, {0, 0}};
  double prev = 0.25;
  for (double h : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto r = displacement_check(Vector::Zero(3), points, Vector{{0.0, 0.0, h}}, kSamples);
    // Planar oracle: cos = h^2 / (2 + h^2).
    CHECK(r.at_v.fraction == doctest::Approx(std::acos(h * h / (2 + h * h)) / (2 * kPi)));
    CHECK(r.at_v.fraction < prev);
    prev = r.at_v.fraction;
  }
}

TEST_CASE("displacement_check in higher dimension") {
  std::mt19937_64 rng(66);
  int checked = 0;
  for (int trial = 0; trial < 20 && checked < 6; ++trial) {
    const int n = 2 + trial % 3;
    const int m = n + 1;
    Matrix points = Matrix::Zero(m, n);
    points.topRows(n) = random_matrix(rng, n, n);
    const Vector u = Vector::Zero(m);
    Vector v = Vector::Zero(m);
    v[m - 1] = 0.7;
    // Skip configurations whose projection lands outside conv U.
    const Matrix gram = points.transpose() * points;
    const Vector inv_ones = gram.llt().solve(Vector::Ones(n));
    if ((inv_ones / inv_ones.sum()).minCoeff() <= 0.0) continue;
    const auto r = displacement_check(u, points, v, kSamples, 40 + trial);
    CHECK(r.verdict != Verdict::Violated);
    CHECK(std::abs(r.at_v.fraction - r.at_v_prime.fraction) <=
          5 * combined_error(r.at_v, r.at_v_prime) + 1e-12);
    ++checked;
  }
  CHECK(checked >= 3);
}

TEST_CASE("partition_check") {
  const auto tri = factor_presentation(
      SymmetricMatrix::from_rows({{1, -0.5, -0.5}, {-0.5, 1, -0.5}, {-0.5, -0.5, 1}}));
  auto r = partition_check(tri, kSamples);
  CHECK(r.ok);
  CHECK(r.sum_fraction == doctest::Approx(1.0));
  for (const auto& part : r.parts) CHECK(part.fraction == doctest::Approx(1.0 / 3));

  // Regular tetrahedron directions: four parts of 1/4.
  const auto tet = factor_presentation(SymmetricMatrix(
      (Matrix::Identity(4, 4) * 4.0 / 3.0 - Matrix::Ones(4, 4) / 3.0).eval()));
  r = partition_check(tet, kSamples);
  CHECK(r.ok);
  for (const auto& part : r.parts) CHECK(part.fraction == doctest::Approx(0.25));

  CHECK_THROWS_AS(partition_check(Presentation(Matrix::Identity(3, 3)), kSamples), Error);

  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial % 4;
    Vector alpha(n);
    for (int k = 0; k < n; ++k) alpha[k] = weight(rng);
    // Columns u_i = w_i - (sum_j alpha_j w_j) / (sum alpha) satisfy sum alpha_i u_i = 0.
    Matrix w = random_matrix(rng, n - 1, n);
    const Vector centre = w * alpha / alpha.sum();
    w.colwise() -= centre;
    r = partition_check(Presentation(w), kSamples, 50 + trial);
    CHECK(r.ok);
    for (const auto& part : r.parts) CHECK(part.fraction > 0.0);
  }
}
