#pragma once

#include <cstdint>
#include <vector>

#include "mubforge/hermitian.hpp"

namespace mubforge {

// Element (u, a) of the extraspecial-type group attached to the hermitian
// space: u in V, a in GF(q^2), with
//
//   (u, a)(v, b) = (u + v, <u, v> + a + b).
//
// The center is {(0, a)}, commutators land in {(0, t) : t in the subfield},
// and every square is central, so the group has class 2 and order q^6.
struct GroupElement {
  Vec2 u;
  FieldElement a;
};

inline bool operator==(const GroupElement& x, const GroupElement& y) {
  return x.u == y.u && x.a == y.a;
}

GroupElement group_identity(const FieldSpec& F);

inline GroupElement gmul(const GroupElement& x, const GroupElement& y) {
  return {vadd(x.u, y.u), herm(x.u, y.u) + x.a + y.a};
}

// (u, a)^-1 = (u, <u, u> + a) in characteristic 2.
inline GroupElement ginv(const GroupElement& x) { return {x.u, herm(x.u, x.u) + x.a}; }

// x^-1 y^-1 x y = (0, <u, v> + <v, u>); always central with subfield twist.
GroupElement commutator(const GroupElement& x, const GroupElement& y);

inline bool commutes(const GroupElement& x, const GroupElement& y) {
  return is_zero(herm(x.u, y.u) + herm(y.u, x.u));
}

inline bool is_central(const GroupElement& x) {
  return is_zero(x.u.c1) && is_zero(x.u.c2);
}

inline std::uint64_t group_order(const FieldSpec& F) {
  const std::uint64_t n = F.order();
  return n * n * n;
}

// Enumeration rank: (u.c1, u.c2, a) as a base-q^2 integer.  Defines the
// canonical element ordering used for subgroup listings.
inline std::uint64_t element_rank(const FieldSpec& F, const GroupElement& x) {
  return (vec_rank(F, x.u)) * F.order() + x.a.bits;
}

GroupElement element_at(const FieldSpec& F, std::uint64_t rank);

// Number of solutions of x^2 = 1.  Brute force for q <= 4; for larger q,
// counted as q^2 central coordinates per isotropic vector (a square is
// (0, <u, u>), so x^2 = 1 iff u is isotropic, for every a).
std::uint64_t square_root_count(const FieldSpec& F);

// Order of the centralizer of x in the whole group.
std::uint64_t centralizer_order(const FieldSpec& F, const GroupElement& x);

// Order of the centralizer of x inside an explicitly listed subgroup.
std::uint64_t centralizer_order_in(const std::vector<GroupElement>& ambient,
                                   const GroupElement& x);

// Number of conjugacy classes, by orbit marking.  Quadratic in the group
// order, so restricted to q <= 4.
std::uint64_t conjugacy_class_count(const FieldSpec& F);

// (u, a) -> (s(u), a).  A group automorphism precisely because s preserves
// the hermitian form; throws std::invalid_argument when it does not.
GroupElement apply_isometry(const Isometry& s, const GroupElement& x);

// Named subgroups used throughout; `elements` lists them in rank order.
//
//   line          {(u, 0)     : u on an isotropic line}          order q^2
//   line_center   {(u, a)     : u on an isotropic line, any a}   order q^4
//   center        {(0, a)}                                       order q^2
//   derived       {(0, t)     : t in the subfield}               order q
//   span_center   {(t*v, a)   : t, a in GF(q^2)} for a fixed v   order q^4
class SubgroupSpec {
public:
  enum class Kind { line, line_center, center, derived, span_center };

  static SubgroupSpec line_subgroup(const IsotropicLine& line);
  static SubgroupSpec line_with_center(const IsotropicLine& line);
  static SubgroupSpec center();
  static SubgroupSpec derived();
  static SubgroupSpec span_with_center(const Vec2& v);

  Kind kind() const { return kind_; }
  std::uint64_t order(const FieldSpec& F) const;
  std::vector<GroupElement> elements(const FieldSpec& F) const;
  bool contains(const FieldSpec& F, const GroupElement& x) const;

private:
  explicit SubgroupSpec(Kind kind) : kind_(kind) {}

  Kind kind_;
  Vec2 vec_{};  // line representative or span vector, unused for center/derived
};

}  // namespace mubforge
