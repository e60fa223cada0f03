#pragma once

// Hypomorphisms between symmetric matrices: B_i = sigma_i A_i sigma_i^t for
// every deck index i, with each sigma_i of degree n-1.

#include "reconlab/graph6.hpp"
#include "reconlab/matrix_core.hpp"

#include <optional>
#include <vector>

namespace reconlab {

inline constexpr double kExactTol = 1e-12;
inline constexpr int kDefaultSearchCap = 9;

struct Hypomorphism {
  std::vector<Permutation> sigmas;

  int n() const noexcept { return static_cast<int>(sigmas.size()); }

  // All sigmas of degree n-1 are the identity.
  static Hypomorphism identity(int n);
};

struct HypomorphyCertificate {
  bool valid = false;
  // Max over all deck indices of max|B_i - sigma_i A_i sigma_i^t|.
  double worst_residual = 0.0;
  // First deck index whose residual exceeds the tolerance.
  std::optional<int> failing_index;
};

HypomorphyCertificate verify_hypomorphism(const SymmetricMatrix& a,
                                          const SymmetricMatrix& b,
                                          const Hypomorphism& sigma,
                                          double tol = kExactTol);

/// Searches each sigma_i independently by backtracking over vertex
/// assignments of A_i onto B_i. The returned sigma_i is the first one found
/// in lexicographic order of images. Decks whose sorted row sums or sorted
/// spectra disagree are rejected before any search.
///
/// Returns nullopt as soon as one index admits no sigma_i.
std::optional<Hypomorphism> find_hypomorphism(const SymmetricMatrix& a,
                                              const SymmetricMatrix& b,
                                              double tol = kExactTol,
                                              int search_cap = kDefaultSearchCap);

// Single deck card search: some sigma with perm_similarity(card_a, sigma) ==
// card_b within tol, lexicographically first.
std::optional<Permutation> find_card_similarity(const SymmetricMatrix& card_a,
                                                const SymmetricMatrix& card_b,
                                                double tol = kExactTol);

struct GeneratedPair {
  SymmetricMatrix a;
  SymmetricMatrix b;
  std::optional<Hypomorphism> sigma;

  bool hypomorphic() const noexcept { return sigma.has_value(); }
};

// A = adjacency(graph), B = perm_similarity(A, tau), sigma from the search.
GeneratedPair gen_pair(const Graph6Record& graph, const Permutation& tau);

}  // namespace reconlab
