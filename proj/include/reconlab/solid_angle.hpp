#pragma once

// Angles as simplicial cones and their norms: the volume of the cone
// intersected with the unit ball, reported as a fraction of the ball.
//
// The norm is measured in a declared ambient dimension d, by default the
// dimension of the span of the generators. A cone whose generators span
// fewer than d dimensions has measure zero.

#include "reconlab/matrix_core.hpp"
#include "reconlab/presentation.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace reconlab {

inline constexpr double kCoefTol = 1e-12;
inline constexpr double kSpanRelTol = 1e-10;
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// The region { sum_i a_i g_i : a_i >= 0 } attached at `apex`; the generators
/// g_i are the columns of `generators` (already the differences u_i - u).
struct Cone {
  Vector apex;
  Matrix generators;
  std::optional<int> ambient_dim;

  // The angle at u spanned by the points U (columns), i.e. generators u_i - u.
  static Cone at(const Vector& u, const Matrix& points,
                 std::optional<int> ambient_dim = std::nullopt);

  int dim() const noexcept { return static_cast<int>(generators.rows()); }
  int size() const noexcept { return static_cast<int>(generators.cols()); }
};

// dim span of the columns, singular values below 1e-10 sigma_max dropped.
int span_rank(const Matrix& columns);

enum class AngleMethod { ZeroMeasure, Exact1D, Exact2D, Exact3D, MonteCarlo };

std::string_view to_string(AngleMethod method);

struct SolidAngleEstimate {
  double fraction = 0.0;
  // fraction * Vol(B_d).
  double abs_norm = 0.0;
  // Of `fraction`; zero for closed forms.
  double std_error = 0.0;
  std::int64_t samples = 0;
  AngleMethod method = AngleMethod::MonteCarlo;
  int ambient_dim = 0;
  std::uint64_t seed = 0;
};

// pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(int d);

// Membership of x (a direction, relative to the apex). Throws
// NonSimplicialCone when the generators are dependent.
bool cone_contains(const Cone& c, const Vector& x);

/// Exact for d <= 3 (planar angle / 2 pi, Van Oosterom-Strackee / 4 pi),
/// otherwise the hit rate of uniform directions in the span. Sampling is
/// split into fixed chunks with per-chunk streams derived from (seed, chunk),
/// so the result does not depend on the worker count.
SolidAngleEstimate angle_fraction(const Cone& c, std::int64_t samples,
                                  std::uint64_t seed = kDefaultSeed);

// Always samples, even where a closed form exists; for cross-checks.
SolidAngleEstimate monte_carlo_fraction(const Cone& c, std::int64_t samples,
                                        std::uint64_t seed = kDefaultSeed);

// sqrt(a.std_error^2 + b.std_error^2)
double combined_error(const SolidAngleEstimate& a, const SolidAngleEstimate& b);

enum class Verdict { Strict, Inconclusive, Violated };

std::string_view to_string(Verdict verdict);

// Compares `smaller` < `larger` with a 4 sigma margin.
Verdict strict_less(const SolidAngleEstimate& smaller, const SolidAngleEstimate& larger);

// |angle(cU)| <= |angle(cV)| given angle(cU) is inside angle(cV). Both are
// measured in the ambient dimension of cV.
bool monotonicity_check(const Cone& cu, const Cone& cv, std::int64_t samples,
                        std::uint64_t seed = kDefaultSeed);

struct ComparisonResult {
  SolidAngleEstimate lhs;  // at u
  SolidAngleEstimate rhs;  // at v
  bool strict = false;
  Verdict verdict = Verdict::Inconclusive;
};

/// Moving the apex from u to a point v interior to conv({u} + U) enlarges the
/// angle. Points of U are columns.
ComparisonResult comparison_check(const Vector& u, const Matrix& points,
                                  const Vector& v, std::int64_t samples,
                                  std::uint64_t seed = kDefaultSeed);

struct DisplacementResult {
  SolidAngleEstimate at_u;
  SolidAngleEstimate at_v;
  // The congruent angle at v' = (1 - sqrt(|v-u|^2/|u0|^2 + 1)) u0 (apex
  // translated to the origin), inside span U.
  SolidAngleEstimate at_v_prime;
  Vector v_prime;
  bool strict = false;
  Verdict verdict = Verdict::Inconclusive;
};

/// Displacing the apex orthogonally to every u - u_i shrinks the angle when
/// the projection of u onto aff U is interior to conv U. Each angle is
/// measured in the dimension of its own span.
DisplacementResult displacement_check(const Vector& u, const Matrix& points,
                                      const Vector& v, std::int64_t samples,
                                      std::uint64_t seed = kDefaultSeed);

struct PartitionResult {
  std::vector<SolidAngleEstimate> parts;
  double sum_fraction = 0.0;
  double std_error = 0.0;
  bool ok = false;
};

// Sum over i of |angle(0, U \ u_i)| for U in good position; the cones tile
// span U so the fractions sum to one.
PartitionResult partition_check(const Presentation& u, std::int64_t samples,
                                std::uint64_t seed = kDefaultSeed);

}  // namespace reconlab
