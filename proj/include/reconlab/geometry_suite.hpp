#pragma once

// Seeded batch run of the presentation and solid-angle invariants over random
// instances with n in [3, 8]. Instance k draws from its own stream derived
// from (seed, k), so any single instance can be replayed.

#include "reconlab/presentation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace reconlab {

struct GeometrySuiteOptions {
  double residual_tol = 1e-9;  // scale-relative residuals
  double eig_tol = 1e-8;       // lowest eigenvalue at the definiteness boundary
};

struct InvariantTally {
  std::string name;
  int passed = 0;
  int failed = 0;
  // First failing instance, or -1.
  int first_failure = -1;
};

struct GeometrySuiteReport {
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<InvariantTally> invariants;
  bool pass = false;
};

// Origin has unique, strictly positive affine weights over the columns and
// they span n-1 dimensions. Works on U directly, without the Gram matrix.
bool geometric_good_position(const Presentation& u);

GeometrySuiteReport run_geometry_suite(std::uint64_t seed, int count,
                                       const GeometrySuiteOptions& opts = {});

}  // namespace reconlab
