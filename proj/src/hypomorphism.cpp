#include "reconlab/hypomorphism.hpp"

#include "reconlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace reconlab {

namespace {

void require_pair_order(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.n() != b.n()) {
    throw Error(ErrorKind::DimensionMismatch,
                "orders differ: " + std::to_string(a.n()) + " vs " +
                    std::to_string(b.n()));
  }
  if (a.n() < 3) {
    throw Error(ErrorKind::DegenerateOrder, "hypomorphisms need order >= 3");
  }
}

bool sorted_close(std::vector<double> x, std::vector<double> y, double tol) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::abs(x[k] - y[k]) > tol) return false;
  }
  return true;
}

std::vector<double> row_sums(const SymmetricMatrix& m) {
  std::vector<double> out(static_cast<std::size_t>(m.n()));
  for (int i = 0; i < m.n(); ++i) out[static_cast<std::size_t>(i)] = m.entries().row(i).sum();
  return out;
}

std::vector<double> spectrum(const SymmetricMatrix& m) {
  const Vector v = eigen_sorted(m).values;
  return {v.data(), v.data() + v.size()};
}

class CardSearch {
 public:
  CardSearch(const SymmetricMatrix& a, const SymmetricMatrix& b, double tol,
             double invariant_tol)
      : a_(a), b_(b), tol_(tol), invariant_tol_(invariant_tol),
        m_(a.n()), image_(static_cast<std::size_t>(m_), -1),
        used_(static_cast<std::size_t>(m_), 0),
        sums_a_(row_sums(a)), sums_b_(row_sums(b)) {}

  std::optional<Permutation> run() {
    if (assign(0)) return Permutation(image_);
    return std::nullopt;
  }

 private:
  bool compatible(int k, int target) const {
    if (std::abs(a_(k, k) - b_(target, target)) > tol_) return false;
    if (std::abs(sums_a_[static_cast<std::size_t>(k)] -
                 sums_b_[static_cast<std::size_t>(target)]) > invariant_tol_) {
      return false;
    }
    for (int l = 0; l < k; ++l) {
      if (std::abs(a_(k, l) - b_(target, image_[static_cast<std::size_t>(l)])) > tol_) {
        return false;
      }
    }
    return true;
  }

  bool assign(int k) {
    if (k == m_) return true;
    for (int target = 0; target < m_; ++target) {
      if (used_[static_cast<std::size_t>(target)] || !compatible(k, target)) continue;
      image_[static_cast<std::size_t>(k)] = target;
      used_[static_cast<std::size_t>(target)] = 1;
      if (assign(k + 1)) return true;
      used_[static_cast<std::size_t>(target)] = 0;
    }
    image_[static_cast<std::size_t>(k)] = -1;
    return false;
  }

  const SymmetricMatrix& a_;
  const SymmetricMatrix& b_;
  double tol_;
  double invariant_tol_;
  int m_;
  std::vector<int> image_;
  std::vector<char> used_;
  std::vector<double> sums_a_;
  std::vector<double> sums_b_;
};

}  // namespace

Hypomorphism Hypomorphism::identity(int n) {
  return Hypomorphism{std::vector<Permutation>(static_cast<std::size_t>(n),
                                               Permutation::identity(n - 1))};
}

HypomorphyCertificate verify_hypomorphism(const SymmetricMatrix& a,
                                          const SymmetricMatrix& b,
                                          const Hypomorphism& sigma, double tol) {
  require_pair_order(a, b);
  const int n = a.n();
  if (sigma.n() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "hypomorphism has " + std::to_string(sigma.n()) +
                    " permutations for order " + std::to_string(n));
  }
  HypomorphyCertificate cert;
  for (int i = 0; i < n; ++i) {
    const auto& s = sigma.sigmas[static_cast<std::size_t>(i)];
    if (s.degree() != n - 1) {
      throw Error(ErrorKind::DimensionMismatch,
                  "sigma_" + std::to_string(i) + " has degree " +
                      std::to_string(s.degree()));
    }
    const double r = max_abs_diff(delete_index(b, i), perm_similarity(delete_index(a, i), s));
    cert.worst_residual = std::max(cert.worst_residual, r);
    if (r > tol && !cert.failing_index) cert.failing_index = i;
  }
  cert.valid = cert.worst_residual <= tol;
  return cert;
}

std::optional<Permutation> find_card_similarity(const SymmetricMatrix& card_a,
                                                const SymmetricMatrix& card_b,
                                                double tol) {
  if (card_a.n() != card_b.n()) {
    throw Error(ErrorKind::DimensionMismatch, "cards of different order");
  }
  const double m = card_a.n();
  const double scale = std::max(card_a.scale(), card_b.scale());
  // Row sums and eigenvalues move by at most m*tol under entrywise
  // perturbations of size tol; the floor absorbs summation-order rounding.
  const double sum_tol = m * tol + 1e-12 * m * scale;
  const double eig_tol = m * tol + 1e-9 * m * scale;
  if (!sorted_close(row_sums(card_a), row_sums(card_b), sum_tol)) return std::nullopt;
  if (!sorted_close(spectrum(card_a), spectrum(card_b), eig_tol)) return std::nullopt;
  return CardSearch(card_a, card_b, tol, sum_tol).run();
}

std::optional<Hypomorphism> find_hypomorphism(const SymmetricMatrix& a,
                                              const SymmetricMatrix& b,
                                              double tol, int search_cap) {
  require_pair_order(a, b);
  if (a.n() > search_cap) {
    throw Error(ErrorKind::SearchTooLarge,
                "order " + std::to_string(a.n()) + " exceeds search cap " +
                    std::to_string(search_cap));
  }
  Hypomorphism out;
  for (int i = 0; i < a.n(); ++i) {
    auto s = find_card_similarity(delete_index(a, i), delete_index(b, i), tol);
    if (!s) return std::nullopt;
    out.sigmas.push_back(std::move(*s));
  }
  return out;
}

GeneratedPair gen_pair(const Graph6Record& graph, const Permutation& tau) {
  if (tau.degree() != graph.n) {
    throw Error(ErrorKind::DimensionMismatch, "relabeling degree does not match vertex count");
  }
  SymmetricMatrix a = graph.adjacency;
  SymmetricMatrix b = perm_similarity(a, tau);
  auto sigma = find_hypomorphism(a, b);
  return GeneratedPair{std::move(a), std::move(b), std::move(sigma)};
}

}  // namespace reconlab
