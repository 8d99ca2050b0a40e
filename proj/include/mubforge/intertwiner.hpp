#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mubforge/errors.hpp"
#include "mubforge/repn.hpp"

namespace mubforge {

// Effective worker count: `requested` when positive, hardware concurrency
// otherwise, in both cases capped by the MUBFORGE_THREADS environment
// variable when it holds a positive integer.
int resolve_thread_count(int requested);

struct AveragingOptions {
  int max_retries = 8;  // extra seeds tried when the averaged matrix is singular
  int threads = 0;      // 0 = automatic, see resolve_thread_count
};

// Group-averaged intertwiner candidate
//
//   D0 = sum over v in V of  X(s.(v,0)) * A * X((v,0))^-1,
//
// A a seed-matrix with entries uniform in [-1, 1) drawn row by row from
// Xorshift64Star(seed).  By construction D0 X(g) = X(s.g) D0 for every g;
// since the representation is irreducible, the intertwiner space is one
// dimensional and D0 is a scalar multiple of the canonical intertwiner
// whenever it is nonsingular.  A singular draw (smallest singular value
// below 1e-6 of the largest) moves to seed+1, up to max_retries times.
//
// The terms are accumulated over a fixed partition of V into chunks and
// the chunk sums are reduced in index order, so the result is bitwise
// independent of the worker count.
//
// Postcondition, verified on 100 pseudorandom group elements: the
// intertwining residual is at most 1e-9 * max|D0|.  Throws IntegrityError
// ("intertwiner_singular" / "intertwining") on failure and
// std::invalid_argument when s is not an isometry.
Eigen::MatrixXd average_intertwiner(const InducedRep& rep, const Isometry& s,
                                    std::uint64_t seed, const AveragingOptions& opts = {});

// Rescales an intertwiner candidate to the canonical orthogonal
// representative of order q + 1:
//
//   * d0^(q+1) must be scalar (off-diagonal at most 1e-8 of the scalar);
//   * the scalar's real (q+1)-st root exists because q + 1 is odd;
//   * after rescaling, the orthogonality defect must be at most 1e-10,
//     applying one polar correction D <- D (D^T D)^(-1/2) if needed.
//
// Throws IntegrityError ("scalar_power" / "orthogonality") on failure.
Eigen::MatrixXd normalize_intertwiner(const Eigen::MatrixXd& d0, int q);

// Re-runs the averaging for each seed and reports the max-norm deviation
// of the re-normalized result from `d`; a row passes when the deviation is
// at most 1e-8.  Agreement across independent seeds certifies that the
// intertwiner space is one dimensional and d is its canonical element.
Report certify_uniqueness(const InducedRep& rep, const Isometry& s, const Eigen::MatrixXd& d,
                          const std::vector<std::uint64_t>& seeds = {1, 2, 3},
                          const AveragingOptions& opts = {});

}  // namespace mubforge
