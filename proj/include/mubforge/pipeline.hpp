#pragma once

#include <cstdint>

#include "mubforge/intertwiner.hpp"
#include "mubforge/mub.hpp"

namespace mubforge {

struct GenerateOptions {
  int r = 1;
  std::uint64_t seed = 42;
  // Reserved determinism switch.  The pipeline always reduces in a fixed
  // chunk order, so results are bitwise reproducible with or without it;
  // the flag is accepted for interface stability.
  bool reproducible = false;
  int threads = 0;    // 0 = automatic, capped by MUBFORGE_THREADS
  bool certify = true;  // cross-seed uniqueness certification (three extra runs)
};

struct GenerateOutcome {
  HadamardFamily family;
  Eigen::MatrixXd intertwiner;           // canonical orthogonal intertwiner
  EigenBasis basis;                      // common eigenbasis of the base-line subgroup
  std::vector<Eigen::MatrixXd> powers;   // conjugated powers, k = 1..q+1
  Report report;                         // every verdict, in pipeline order
};

// End-to-end construction for GF(q^2), q = 2^r:
//
//   field -> hermitian space -> group -> induced representation
//         -> averaged intertwiner -> normalization -> eigenbasis
//         -> conjugated powers -> exact integer family,
//
// verifying at each stage (structure counts, intertwining and order
// residuals, orthogonality, cross-seed uniqueness, rank-one projectors,
// entry quantization, trivial fixed space, the trace criterion for every
// power, and the exact integer invariants of the final family).  Throws
// IntegrityError on the first failed verification; the outcome's report
// and the family's stored checks list every verdict that was reached.
GenerateOutcome generate_family(const GenerateOptions& options);

}  // namespace mubforge
