#pragma once

#include <vector>

#include "mubforge/field.hpp"

namespace mubforge {

// Vector in the 2-dimensional space V over GF(q^2), coordinates in the
// distinguished basis.  The form below is hermitian with respect to the
// conjugation x -> x^q.
struct Vec2 {
  FieldElement c1, c2;
};

inline bool operator==(const Vec2& a, const Vec2& b) { return a.c1 == b.c1 && a.c2 == b.c2; }

inline Vec2 vadd(const Vec2& a, const Vec2& b) { return {a.c1 + b.c1, a.c2 + b.c2}; }

inline Vec2 scale(const FieldElement& t, const Vec2& v) { return {t * v.c1, t * v.c2}; }

// <u, v> = u1 * conj(v1) + u2 * conj(v2).  Linear in u, conjugate-linear
// in v, and <v, u> = conj(<u, v>).
inline FieldElement herm(const Vec2& u, const Vec2& v) {
  return u.c1 * frobenius(v.c1) + u.c2 * frobenius(v.c2);
}

inline bool is_isotropic(const Vec2& v) { return is_zero(herm(v, v)); }

// Integer rank of a vector in enumeration order: c1 major, c2 minor.
inline std::uint64_t vec_rank(const FieldSpec& F, const Vec2& v) {
  return static_cast<std::uint64_t>(v.c1.bits) * F.order() + v.c2.bits;
}

Vec2 vec_at(const FieldSpec& F, std::uint64_t rank);

// All q^4 vectors in enumeration order.
std::vector<Vec2> all_vectors(const FieldSpec& F);

// The q^3 + q^2 - q isotropic vectors (zero included), enumeration order.
std::vector<Vec2> isotropic_vectors(const FieldSpec& F);

// A line of isotropic vectors, identified by its representative: the
// enumeration-least nonzero vector on the line.
struct IsotropicLine {
  Vec2 rep;
};

inline bool operator==(const IsotropicLine& a, const IsotropicLine& b) { return a.rep == b.rep; }

// The q + 1 isotropic lines, ordered by representative.
std::vector<IsotropicLine> isotropic_lines(const FieldSpec& F);

bool line_contains(const FieldSpec& F, const IsotropicLine& line, const Vec2& v);

// The q^2 points {t * rep : t in GF(q^2)}, ordered by the scalar t.
std::vector<Vec2> line_points(const FieldSpec& F, const IsotropicLine& line);

// 2x2 matrix [[a, b], [c, d]] acting on V by left multiplication.
struct Isometry {
  FieldElement a, b, c, d;

  Vec2 apply(const Vec2& v) const {
    return {a * v.c1 + b * v.c2, c * v.c1 + d * v.c2};
  }
};

Isometry identity_isometry(const FieldSpec& F);

Isometry compose(const Isometry& s, const Isometry& t);  // apply t, then s

// True when the matrix is invertible and preserves the hermitian form.
// Checking the three basis pairs suffices by sesquilinearity.
bool is_isometry(const Isometry& s);

// diag(lambda, 1) with lambda the norm-one generator.  An isometry of
// multiplicative order q + 1 whose powers permute the isotropic lines in
// a single cycle.
Isometry cyclic_isometry(const FieldSpec& F);

}  // namespace mubforge
