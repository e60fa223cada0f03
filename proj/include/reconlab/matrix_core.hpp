#pragma once

// Dense symmetric-matrix primitives: decks, shifted determinants, sorted
// eigensystems, permutation similarity and principal-minor multisets.
//
// All indices are 0-based.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace reconlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest absolute entry, the scale used by the relative tolerances.
double max_abs_entry(const Matrix& m);

// Induced infinity norm (maximum absolute row sum).
double inf_norm(const Matrix& m);

/// A dense real symmetric matrix of order n >= 1.
///
/// Construction rejects inputs whose asymmetry exceeds
/// 1e-10 * max(1, max|a_ij|); nothing is symmetrized behind the caller's back.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Matrix entries);

  static SymmetricMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);
  static SymmetricMatrix zero(int n);
  static SymmetricMatrix identity(int n);
  // J = 1^t 1, the all-ones matrix.
  static SymmetricMatrix ones(int n);

  int n() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const noexcept { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  double scale() const { return std::max(1.0, max_abs_entry(entries_)); }

  // A - lambda I + t J.
  SymmetricMatrix shifted(double lambda, double t) const;

  SymmetricMatrix operator-() const;

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Matrix entries_;
};

// The all-ones column vector of length n.
Vector ones_vector(int n);

/// Eigenpairs sorted by descending eigenvalue. Column k of `vectors` belongs
/// to values[k]. Each vector is oriented so that its first entry of largest
/// magnitude is positive.
struct EigenData {
  Vector values;
  Matrix vectors;

  double lowest() const { return values[values.size() - 1]; }
  Vector lowest_vector() const { return vectors.col(vectors.cols() - 1); }
};

/// A bijection k -> image[k] on {0, ..., degree-1}.
class Permutation {
 public:
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int degree);
  // k -> k + shift (mod degree).
  static Permutation rotation(int degree, int shift = 1);
  // k -> degree - 1 - k.
  static Permutation reflection(int degree);
  static Permutation transposition(int degree, int a, int b);

  int degree() const noexcept { return static_cast<int>(image_.size()); }
  int operator()(int k) const { return image_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& image() const noexcept { return image_; }

  Permutation inverse() const;
  // (this * other)(k) = this(other(k)).
  Permutation compose(const Permutation& other) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

// Element i is A with row i and column i removed.
std::vector<SymmetricMatrix> deck(const SymmetricMatrix& a);

// Principal submatrix with row/column `i` removed.
SymmetricMatrix delete_index(const SymmetricMatrix& a, int i);

// det(A - lambda I + t J) by full-pivot LU. Exactly singular input gives 0.
double shifted_det(const SymmetricMatrix& a, double lambda, double t);

double determinant(const Matrix& m);

EigenData eigen_sorted(const SymmetricMatrix& a);

// B with B[tau(i)][tau(j)] = A[i][j], i.e. B = P A P^t for the permutation
// matrix P of tau.
SymmetricMatrix perm_similarity(const SymmetricMatrix& a,
                                const Permutation& tau);

// Determinants of the deck, sorted ascending.
std::vector<double> majors_multiset(const SymmetricMatrix& a);

// max_ij |a_ij - b_ij|; throws DimensionMismatch when orders differ.
double max_abs_diff(const SymmetricMatrix& a, const SymmetricMatrix& b);

}  // namespace reconlab
