#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mubforge/errors.hpp"
#include "mubforge/repn.hpp"

namespace mubforge {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Arithmetic data needed to reproduce a family from scratch.
struct FieldDescriptor {
  int r = 0;
  std::uint32_t modulus_bits = 0;
  std::uint32_t generator_bits = 0;
};

struct FamilyManifest {
  FieldDescriptor field;
  std::uint64_t seed = 0;
  std::uint32_t base_c1 = 0;  // base line representative, coordinate encodings
  std::uint32_t base_c2 = 0;
};

// q sign matrices M_1..M_q of size d = q^2 with
//
//   M_k M_k^T = q^2 I,   M_1 M_{k-1} = q M_k,   M_1 M_q = q^2 I,
//
// every diagonal entry -1, pairwise distinct.  The rows of I, M_1/q, ...,
// M_q/q then form q + 1 mutually unbiased bases of R^d.
struct HadamardFamily {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  FamilyManifest manifest;
  std::vector<std::pair<std::string, bool>> checks;  // verification verdicts, in order
  std::vector<IntMatrix> matrices;
};

void set_check(HadamardFamily& family, const std::string& name, bool passed);

// Common eigenbasis of the commuting involutions X(x), x in the base-line
// subgroup.  Column k is the (unique up to sign) unit vector on which every
// X(x) acts by the k-th character of the subgroup; columns are ordered by
// the character's index, the field encoding of its defining coefficient.
struct EigenBasis {
  Eigen::MatrixXd vectors;               // d x d orthogonal
  std::vector<std::uint32_t> char_bits;  // column -> character index
};

// Builds the eigenbasis by rank-one character projectors.  Throws
// IntegrityError ("eigenbasis_rank" / "eigenbasis_orthonormal") when a
// projector is not rank one within 1e-8 or the basis drifts from
// orthonormality beyond 1e-10.
EigenBasis eigenbasis(const InducedRep& rep);

// Conjugated powers Z^T D^k Z for k = 1..q+1.  The first q entries must
// have every entry within 1e-6 of +-1/q and the last must be the identity
// within 1e-8; IntegrityError ("power_entries" / "order") otherwise.
std::vector<Eigen::MatrixXd> power_basis(const Eigen::MatrixXd& d_matrix,
                                         const EigenBasis& basis, int q);

// Rounds q * P_k to integer matrices for the first q conjugated powers and
// re-verifies every family invariant exactly (see verify_family_checks).
// Throws IntegrityError when rounding is ambiguous or an exact check fails.
HadamardFamily exactify(const std::vector<Eigen::MatrixXd>& powers,
                        const FamilyManifest& manifest);

// Exact integer re-verification of a family:
//
//   field_spec   manifest field data is a valid spec
//   shape        q matrices of size q^2, q a power of two matching r
//   entries      all entries +-1
//   gram         M_k M_k^T = q^2 I
//   diagonal     every diagonal entry is -1
//   power_law    M_1 M_{k-1} = q M_k
//   order        M_1 M_q = q^2 I
//   transpose    M_k^T = M_{q+1-k}
//   distinct     the matrices are pairwise distinct
//   unbiased     M_i^T M_j = q M_{j-i} for i < j
Report verify_family_checks(const HadamardFamily& family);

struct UnbiasedViolation {
  int first_basis = 0, second_basis = 0;
  int row = 0, col = 0;
  double value = 0.0;  // squared inner product
};

struct UnbiasedReport {
  bool all_unbiased = true;
  std::vector<UnbiasedViolation> violations;  // capped at 256 entries
};

// Checks |<b_i, c_j>|^2 = 1/d within entry_tol for all pairs of bases
// (columns of the given matrices).  Every input must be orthonormal within
// orth_tol; std::invalid_argument otherwise.
UnbiasedReport check_unbiased(const std::vector<Eigen::MatrixXd>& bases,
                              double entry_tol = 1e-6, double orth_tol = 1e-8);

struct TracePairViolation {
  int first_index = 0, second_index = 0;  // positions in the two closures
  double trace = 0.0;
};

// Outcome of the trace criterion on a pair of matrix groups.
struct TraceConditionReport {
  bool holds = true;
  std::vector<TracePairViolation> violations;  // capped at 256 entries
  bool bases_extracted = false;
  Eigen::MatrixXd first_basis, second_basis;
  UnbiasedReport unbiased;  // meaningful when bases_extracted
};

// The unbiasedness criterion in its group form: two elementary abelian
// 2-groups of orthogonal d x d matrices, each of order exactly d, have
// mutually unbiased eigenbases precisely when tr(x y) = 0 for every pair
// except x = y = I.  Inputs are generator lists; the closures are formed
// here.  Generator sets violating the preconditions (not involutions, not
// pairwise commuting, not orthogonal, closure order != d) raise
// std::invalid_argument.  A failing trace pair is reported, not thrown.
// With extract_bases set and the condition holding, the common eigenbases
// are recovered from rank-one character projectors and their unbiasedness
// is verified directly.
TraceConditionReport check_trace_condition(const std::vector<SignedPermMatrix>& first_gens,
                                           const std::vector<SignedPermMatrix>& second_gens,
                                           bool extract_bases = true);
TraceConditionReport check_trace_condition(const std::vector<Eigen::MatrixXd>& first_gens,
                                           const std::vector<Eigen::MatrixXd>& second_gens,
                                           bool extract_bases = true, double tol = 1e-8);

// Dimension of the joint fixed space of the cyclic group generated by the
// conjugated intertwiner, from the traces of its q nontrivial powers:
//
//   dim = (q^2 + sum_k tr(P_k)) / (q + 1).
//
// Validates |tr(P_k)| <= q (within 1e-6), integrality of the quotient, and
// the range 0 <= dim <= 2q - 2; IntegrityError otherwise.
int fixed_space_dimension(const std::vector<Eigen::MatrixXd>& nontrivial_powers);

}  // namespace mubforge
