#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mubforge/errors.hpp"
#include "mubforge/group.hpp"

namespace mubforge {

// Degree-one character of the line-with-center subgroup M: on an element
// (t * u0, a) its value is
//
//   (-1) ^ ( abs_trace(line_coeff * t) + abs_trace(central_coeff * a) ).
//
// central_coeff must lie outside the subfield; that is exactly the condition
// for the character to be nontrivial on the derived subgroup, which makes
// the induced representation irreducible.
struct LinearCharacter {
  FieldElement line_coeff;
  FieldElement central_coeff;
};

// The distinguished character: line_coeff = 0, central_coeff the least
// element outside the subfield.
LinearCharacter choose_character(const FieldSpec& F);

// Matrix with exactly one nonzero entry per row and column, that entry
// being +1 or -1.  Stored as a column map: column j has sign(j) in row
// row(j).  Closed under products and transposition; the transpose is the
// inverse.
class SignedPermMatrix {
public:
  SignedPermMatrix(std::vector<std::int32_t> rows, std::vector<std::int8_t> signs);

  static SignedPermMatrix identity(int dim);

  int dim() const { return static_cast<int>(row_.size()); }
  int row(int col) const { return row_[col]; }
  int sign(int col) const { return sign_[col]; }

  SignedPermMatrix operator*(const SignedPermMatrix& other) const;
  SignedPermMatrix transpose() const;
  std::int64_t trace() const;
  bool is_identity() const;

  bool operator==(const SignedPermMatrix& other) const {
    return row_ == other.row_ && sign_ == other.sign_;
  }

  Eigen::MatrixXd dense() const;

  // acc += w * (*this), without materializing the dense form.
  void accumulate(Eigen::MatrixXd& acc, double w) const;

private:
  std::vector<std::int32_t> row_;
  std::vector<std::int8_t> sign_;
};

// The monomial representation of the group induced from a linear character
// of the line-with-center subgroup M attached to a chosen isotropic line.
// Degree q^2; matrices are signed permutations.
//
// Coset bookkeeping: with u0 the line representative and w0 the least
// vector off the line, every v in V splits uniquely as v = t*u0 + s*w0,
// and s indexes the coset of M.  The transversal element for coset j is
// (element(j) * w0, 0), so column j of the matrix of g is found by
// multiplying g into the j-th transversal element, reading off the target
// coset i from the w0-coordinate, and evaluating the character on the
// leftover element of M.
class InducedRep {
public:
  InducedRep(FieldPtr F, const IsotropicLine& base, const LinearCharacter& chi);

  // Least isotropic line, distinguished character.
  static InducedRep standard(FieldPtr F);

  const FieldSpec& field() const { return *F_; }
  FieldPtr field_ptr() const { return F_; }
  int dim() const { return d_; }
  const IsotropicLine& base_line() const { return base_; }
  const LinearCharacter& character_data() const { return chi_; }
  const Vec2& base_vector() const { return u0_; }
  const Vec2& complement_vector() const { return w0_; }
  const std::vector<GroupElement>& transversal() const { return transversal_; }

  // Coordinates (t, s) of v in the basis (u0, w0).
  std::pair<FieldElement, FieldElement> coordinates(const Vec2& v) const;

  // Character value, +1 or -1, on an element of M.  Throws
  // std::invalid_argument when the element is outside M.
  int chi_sign(const GroupElement& m) const;

  SignedPermMatrix matrix(const GroupElement& g) const;

  // Trace of matrix(g): +-q^2 on the center, 0 elsewhere.
  std::int64_t character(const GroupElement& g) const;

private:
  FieldPtr F_;
  IsotropicLine base_;
  LinearCharacter chi_;
  int d_;
  Vec2 u0_, w0_;
  FieldElement inv_det_;
  std::vector<GroupElement> transversal_;
};

// Character-theoretic consistency checks tying the representation to the
// group's class structure:
//
//   class_count          number of conjugacy classes is q^5 + q^2 - q
//                        (census runs for q <= 4 only)
//   square_roots         number of involutions-with-identity is
//                        q^5 + q^4 - q^3
//   involution_identity  sum of all irreducible degrees equals the
//                        square-root count (all indicators are +1)
//   degree_sum_squares   sum of squared degrees equals the group order
//   irreducibility       the induced character has unit norm, computed on
//                        the center where it is supported
//   character_support    the character vanishes off the center
//                        (exhaustive for q <= 4, sampled for q = 8)
Report run_counting_checks(const InducedRep& rep);

// Throws IntegrityError on the first failing row of run_counting_checks.
void verify_counting_suite(const InducedRep& rep);

}  // namespace mubforge
