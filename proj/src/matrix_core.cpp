#include "reconlab/matrix_core.hpp"

#include "reconlab/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace reconlab {

double max_abs_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double inf_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

SymmetricMatrix::SymmetricMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "symmetric matrix must be square with order >= 1, got " +
                    std::to_string(entries_.rows()) + "x" +
                    std::to_string(entries_.cols()));
  }
  if (!entries_.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  }
  const double tol = 1e-10 * std::max(1.0, max_abs_entry(entries_));
  const double asym = max_abs_entry(entries_ - entries_.transpose());
  if (asym > tol) {
    throw Error(ErrorKind::NotSymmetric,
                "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
}

SymmetricMatrix SymmetricMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    }
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return SymmetricMatrix(std::move(m));
}

SymmetricMatrix SymmetricMatrix::zero(int n) {
  return SymmetricMatrix(Matrix::Zero(n, n));
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
  return SymmetricMatrix(Matrix::Identity(n, n));
}

SymmetricMatrix SymmetricMatrix::ones(int n) {
  return SymmetricMatrix(Matrix::Ones(n, n));
}

SymmetricMatrix SymmetricMatrix::shifted(double lambda, double t) const {
  Matrix m = entries_.array() + t;
  m.diagonal().array() -= lambda;
  return SymmetricMatrix(std::move(m));
}

SymmetricMatrix SymmetricMatrix::operator-() const {
  return SymmetricMatrix(-entries_);
}

Vector ones_vector(int n) { return Vector::Ones(n); }

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) ||
        seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorKind::InvalidPermutation,
                  "image is not a bijection on {0.." +
                      std::to_string(image_.size()) + "-1}");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::rotation(int degree, int shift) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) {
    img[static_cast<std::size_t>(k)] = ((k + shift) % degree + degree) % degree;
  }
  return Permutation(std::move(img));
}

Permutation Permutation::reflection(int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) img[static_cast<std::size_t>(k)] = degree - 1 - k;
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int degree, int a, int b) {
  std::vector<int> img = identity(degree).image();
  std::swap(img.at(static_cast<std::size_t>(a)), img.at(static_cast<std::size_t>(b)));
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) {
    inv[static_cast<std::size_t>(image_[k])] = static_cast<int>(k);
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.degree() != degree()) {
    throw Error(ErrorKind::DimensionMismatch, "composing permutations of different degree");
  }
  std::vector<int> img(image_.size());
  for (int k = 0; k < degree(); ++k) img[static_cast<std::size_t>(k)] = (*this)(other(k));
  return Permutation(std::move(img));
}

SymmetricMatrix delete_index(const SymmetricMatrix& a, int i) {
  const int n = a.n();
  if (i < 0 || i >= n) {
    throw Error(ErrorKind::InvalidArgument, "deleted index out of range");
  }
  Matrix m(n - 1, n - 1);
  for (int r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (int c = 0, cc = 0; c < n; ++c) {
      if (c == i) continue;
      m(rr, cc++) = a(r, c);
    }
    ++rr;
  }
  return SymmetricMatrix(std::move(m));
}

std::vector<SymmetricMatrix> deck(const SymmetricMatrix& a) {
  if (a.n() < 2) {
    throw Error(ErrorKind::DegenerateOrder, "deck needs order >= 2");
  }
  std::vector<SymmetricMatrix> cards;
  cards.reserve(static_cast<std::size_t>(a.n()));
  for (int i = 0; i < a.n(); ++i) cards.push_back(delete_index(a, i));
  return cards;
}

double determinant(const Matrix& m) {
  if (m.rows() == 0) return 1.0;
  Eigen::FullPivLU<Matrix> lu(m);
  // FullPivLU stops at an exactly zero pivot; the product then contains it.
  return lu.determinant();
}

double shifted_det(const SymmetricMatrix& a, double lambda, double t) {
  return determinant(a.shifted(lambda, t).entries());
}

EigenData eigen_sorted(const SymmetricMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "eigensolver did not converge");
  }
  const Eigen::Index n = a.n();
  EigenData out{Vector(n), Matrix(n, n)};
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()[n - 1 - k];
    Vector v = solver.eigenvectors().col(n - 1 - k);
    Eigen::Index lead = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(v[r]) > best) {
        best = std::abs(v[r]);
        lead = r;
      }
    }
    if (v[lead] < 0) v = -v;
    out.vectors.col(k) = v;
  }
  return out;
}

SymmetricMatrix perm_similarity(const SymmetricMatrix& a, const Permutation& tau) {
  if (tau.degree() != a.n()) {
    throw Error(ErrorKind::DimensionMismatch,
                "permutation degree " + std::to_string(tau.degree()) +
                    " does not match order " + std::to_string(a.n()));
  }
  const int n = a.n();
  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(tau(i), tau(j)) = a(i, j);
  }
  return SymmetricMatrix(std::move(b));
}

std::vector<double> majors_multiset(const SymmetricMatrix& a) {
  std::vector<double> out;
  for (const auto& card : deck(a)) out.push_back(determinant(card.entries()));
  std::sort(out.begin(), out.end());
  return out;
}

double max_abs_diff(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.n() != b.n()) {
    throw Error(ErrorKind::DimensionMismatch, "matrices of different order");
  }
  return max_abs_entry(a.entries() - b.entries());
}

}  // namespace reconlab
