#include "reconlab/solid_angle.hpp"

#include "reconlab/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>

namespace reconlab {

namespace {

constexpr std::int64_t kChunk = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Orthonormal basis of the column span (m x rank).
Matrix span_basis(const Matrix& columns, int rank) {
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

void require_simplicial(const Cone& c, int rank) {
  if (c.size() < 1) {
    throw Error(ErrorKind::NonSimplicialCone, "cone has no generators");
  }
  if (rank < c.size()) {
    throw Error(ErrorKind::NonSimplicialCone,
                std::to_string(c.size()) + " generators span only " +
                    std::to_string(rank) + " dimensions");
  }
}

SolidAngleEstimate closed_form(AngleMethod method, double fraction, int d,
                               std::uint64_t seed) {
  SolidAngleEstimate e;
  e.fraction = fraction;
  e.abs_norm = fraction * unit_ball_volume(d);
  e.method = method;
  e.ambient_dim = d;
  e.seed = seed;
  return e;
}

std::int64_t count_hits(const Matrix& inverse_coords, std::int64_t samples,
                        std::uint64_t seed) {
  const int d = static_cast<int>(inverse_coords.rows());
  // Row-major copy for the inner loop.
  std::vector<double> inv(static_cast<std::size_t>(d * d));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) inv[static_cast<std::size_t>(r * d + c)] = inverse_coords(r, c);
  }
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
  std::atomic<std::int64_t> next{0};

  auto worker = [&] {
    std::vector<double> z(static_cast<std::size_t>(d));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::int64_t chunk = next++; chunk < chunks; chunk = next++) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(chunk))));
      normal.reset();
      const std::int64_t count = std::min(kChunk, samples - chunk * kChunk);
      std::int64_t local = 0;
      for (std::int64_t s = 0; s < count; ++s) {
        // The cone is radial, so the Gaussian direction need not be normalized.
        for (auto& x : z) x = normal(rng);
        bool inside = true;
        for (int r = 0; r < d && inside; ++r) {
          double coef = 0.0;
          for (int c = 0; c < d; ++c) coef += inv[static_cast<std::size_t>(r * d + c)] * z[static_cast<std::size_t>(c)];
          inside = coef >= 0.0;
        }
        local += inside ? 1 : 0;
      }
      hits[static_cast<std::size_t>(chunk)] = local;
    }
  };

  const auto workers = static_cast<std::int64_t>(
      std::max(1u, std::thread::hardware_concurrency()));
  const std::int64_t nthreads = std::min(workers, chunks);
  std::vector<std::thread> pool;
  for (std::int64_t k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::int64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

}  // namespace

Cone Cone::at(const Vector& u, const Matrix& points, std::optional<int> ambient_dim) {
  if (points.rows() != u.size()) {
    throw Error(ErrorKind::DimensionMismatch, "apex and points live in different spaces");
  }
  Matrix g = points;
  g.colwise() -= u;
  return Cone{u, std::move(g), ambient_dim};
}

int span_rank(const Matrix& columns) {
  if (columns.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(columns);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > kSpanRelTol * sv[0]) ++rank;
  }
  return rank;
}

std::string_view to_string(AngleMethod method) {
  switch (method) {
    case AngleMethod::ZeroMeasure: return "ZeroMeasure";
    case AngleMethod::Exact1D: return "Exact1D";
    case AngleMethod::Exact2D: return "Exact2D";
    case AngleMethod::Exact3D: return "Exact3D";
    case AngleMethod::MonteCarlo: return "MonteCarlo";
  }
  return "Unknown";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Strict: return "strict";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Violated: return "violated";
  }
  return "unknown";
}

double unit_ball_volume(int d) {
  const double half = 0.5 * d;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

bool cone_contains(const Cone& c, const Vector& x) {
  if (x.size() != c.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "point and cone live in different spaces");
  }
  require_simplicial(c, span_rank(c.generators));
  const Vector coef = c.generators.colPivHouseholderQr().solve(x);
  const double residual = (c.generators * coef - x).norm();
  if (residual > kSpanRelTol * x.norm()) return false;
  return (coef.array() >= -kCoefTol).all();
}

namespace {

struct SpanCoords {
  int rank = 0;
  int d = 0;
  Matrix coords;  // d x size, only when rank == d
};

SpanCoords span_coords(const Cone& c, std::int64_t samples) {
  if (samples < 1) {
    throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  }
  SpanCoords s;
  s.rank = span_rank(c.generators);
  require_simplicial(c, s.rank);
  s.d = c.ambient_dim.value_or(s.rank);
  if (s.d < s.rank || s.d > c.dim()) {
    throw Error(ErrorKind::InvalidArgument,
                "ambient dimension " + std::to_string(s.d) + " outside [" +
                    std::to_string(s.rank) + ", " + std::to_string(c.dim()) + "]");
  }
  if (s.rank == s.d) s.coords = span_basis(c.generators, s.d).transpose() * c.generators;
  return s;
}

SolidAngleEstimate sampled(const Matrix& coords, std::int64_t samples, std::uint64_t seed) {
  const int d = static_cast<int>(coords.rows());
  const std::int64_t hits = count_hits(coords.fullPivLu().inverse(), samples, seed);
  SolidAngleEstimate e;
  e.fraction = static_cast<double>(hits) / static_cast<double>(samples);
  e.abs_norm = e.fraction * unit_ball_volume(d);
  e.std_error = std::sqrt(e.fraction * (1.0 - e.fraction) / static_cast<double>(samples));
  e.samples = samples;
  e.method = AngleMethod::MonteCarlo;
  e.ambient_dim = d;
  e.seed = seed;
  return e;
}

}  // namespace

SolidAngleEstimate angle_fraction(const Cone& c, std::int64_t samples,
                                  std::uint64_t seed) {
  const SpanCoords s = span_coords(c, samples);
  const int d = s.d;
  if (s.rank < d) return closed_form(AngleMethod::ZeroMeasure, 0.0, d, seed);
  const Matrix& coords = s.coords;
  if (d == 1) return closed_form(AngleMethod::Exact1D, 0.5, d, seed);
  if (d == 2) {
    const double angle = std::atan2(std::abs(coords.determinant()),
                                    coords.col(0).dot(coords.col(1)));
    return closed_form(AngleMethod::Exact2D, angle / (2.0 * std::numbers::pi), d, seed);
  }
  if (d == 3) {
    Matrix unit = coords;
    unit.colwise().normalize();
    const Vector g1 = unit.col(0), g2 = unit.col(1), g3 = unit.col(2);
    const double omega =
        2.0 * std::atan2(std::abs(unit.determinant()),
                         1.0 + g1.dot(g2) + g2.dot(g3) + g3.dot(g1));
    return closed_form(AngleMethod::Exact3D, omega / (4.0 * std::numbers::pi), d, seed);
  }
  return sampled(coords, samples, seed);
}

SolidAngleEstimate monte_carlo_fraction(const Cone& c, std::int64_t samples,
                                        std::uint64_t seed) {
  const SpanCoords s = span_coords(c, samples);
  if (s.rank < s.d) return closed_form(AngleMethod::ZeroMeasure, 0.0, s.d, seed);
  return sampled(s.coords, samples, seed);
}

double combined_error(const SolidAngleEstimate& a, const SolidAngleEstimate& b) {
  return std::hypot(a.std_error, b.std_error);
}

Verdict strict_less(const SolidAngleEstimate& smaller, const SolidAngleEstimate& larger) {
  // Closed forms still carry rounding, hence the floor.
  const double margin = std::max(4.0 * combined_error(smaller, larger), 1e-12);
  const double diff = larger.fraction - smaller.fraction;
  if (diff > margin) return Verdict::Strict;
  if (diff < -margin) return Verdict::Violated;
  return Verdict::Inconclusive;
}

bool monotonicity_check(const Cone& cu, const Cone& cv, std::int64_t samples,
                        std::uint64_t seed) {
  if (cu.apex.size() != cv.apex.size() ||
      (cu.apex - cv.apex).cwiseAbs().maxCoeff() >
          1e-12 * std::max(1.0, cv.apex.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::PreconditionViolated, "cones do not share an apex");
  }
  for (int k = 0; k < cu.size(); ++k) {
    if (!cone_contains(cv, cu.generators.col(k))) {
      throw Error(ErrorKind::NotNested,
                  "generator " + std::to_string(k) + " lies outside the outer cone");
    }
  }
  const int d = cv.ambient_dim.value_or(span_rank(cv.generators));
  Cone inner = cu;
  inner.ambient_dim = d;
  Cone outer = cv;
  outer.ambient_dim = d;
  const auto fu = angle_fraction(inner, samples, seed);
  const auto fv = angle_fraction(outer, samples, seed + 1);
  return fu.fraction <= fv.fraction + std::max(4.0 * combined_error(fu, fv), 1e-12);
}

ComparisonResult comparison_check(const Vector& u, const Matrix& points,
                                  const Vector& v, std::int64_t samples,
                                  std::uint64_t seed) {
  const Cone at_u = Cone::at(u, points);
  if (v.size() != u.size()) {
    throw Error(ErrorKind::DimensionMismatch, "v and u live in different spaces");
  }
  if (span_rank(at_u.generators) < at_u.size()) {
    throw Error(ErrorKind::PreconditionViolated, "angle at u has zero norm");
  }
  const Vector offset = v - u;
  const Vector coef = at_u.generators.colPivHouseholderQr().solve(offset);
  const double residual = (at_u.generators * coef - offset).norm();
  const bool interior = residual <= kSpanRelTol * std::max(1.0, offset.norm()) &&
                        coef.minCoeff() > 0.0 && coef.sum() < 1.0;
  if (!interior) {
    throw Error(ErrorKind::PreconditionViolated,
                "v is not interior to the convex hull of {u} and U");
  }
  ComparisonResult r;
  r.lhs = angle_fraction(at_u, samples, seed);
  r.rhs = angle_fraction(Cone::at(v, points), samples, seed + 1);
  r.verdict = strict_less(r.lhs, r.rhs);
  r.strict = r.verdict == Verdict::Strict;
  return r;
}

DisplacementResult displacement_check(const Vector& u, const Matrix& points,
                                      const Vector& v, std::int64_t samples,
                                      std::uint64_t seed) {
  const Cone at_u = Cone::at(u, points);
  const Matrix& g = at_u.generators;
  if (v.size() != u.size()) {
    throw Error(ErrorKind::DimensionMismatch, "v and u live in different spaces");
  }
  if (span_rank(g) < at_u.size()) {
    throw Error(ErrorKind::PreconditionViolated, "angle at u has zero norm");
  }
  const Vector w = v - u;
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (w.norm() <= 1e-12 * scale) {
    throw Error(ErrorKind::PreconditionViolated, "v coincides with u");
  }
  for (int i = 0; i < g.cols(); ++i) {
    const double ip = w.dot(g.col(i));
    if (std::abs(ip) > 1e-9 * std::max(1.0, w.norm() * g.col(i).norm())) {
      throw Error(ErrorKind::PreconditionViolated,
                  "(u - v, u - u_" + std::to_string(i) + ") = " + std::to_string(ip));
    }
  }
  // Projection p of u onto aff U, in coordinates relative to u.
  const Matrix gram = g.transpose() * g;
  const Vector inv_ones = gram.llt().solve(Vector::Ones(g.cols()));
  const Vector weights = inv_ones / inv_ones.sum();
  if (!(weights.minCoeff() > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated,
                "projection of u onto aff U is not interior to conv U");
  }
  const Vector p = g * weights;

  DisplacementResult r;
  r.v_prime = (1.0 - std::sqrt(w.squaredNorm() / p.squaredNorm() + 1.0)) * p;
  r.at_u = angle_fraction(at_u, samples, seed);
  r.at_v = angle_fraction(Cone::at(v, points), samples, seed + 1);
  r.at_v_prime = angle_fraction(Cone::at(r.v_prime, g), samples, seed + 2);
  r.v_prime += u;
  r.verdict = strict_less(r.at_v, r.at_u);
  r.strict = r.verdict == Verdict::Strict;
  return r;
}

PartitionResult partition_check(const Presentation& u, std::int64_t samples,
                                std::uint64_t seed) {
  if (!good_position_report(u.gram()).is_good) {
    throw Error(ErrorKind::BadPosition, "presentation is not in good position");
  }
  const int n = u.n();
  const int d = n - 1;
  const Matrix coords = span_basis(u.columns(), d).transpose() * u.columns();
  PartitionResult r;
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    Matrix gens(d, d);
    for (int j = 0, c = 0; j < n; ++j) {
      if (j != i) gens.col(c++) = coords.col(j);
    }
    auto part = angle_fraction(Cone{Vector::Zero(d), std::move(gens), d}, samples,
                               seed + static_cast<std::uint64_t>(i));
    r.sum_fraction += part.fraction;
    var += part.std_error * part.std_error;
    r.parts.push_back(part);
  }
  r.std_error = std::sqrt(var);
  r.ok = std::abs(r.sum_fraction - 1.0) <= std::max(4.0 * r.std_error, 1e-9);
  return r;
}

}  // namespace reconlab
