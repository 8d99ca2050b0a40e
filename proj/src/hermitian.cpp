#include "mubforge/hermitian.hpp"

#include <stdexcept>

namespace mubforge {

Vec2 vec_at(const FieldSpec& F, std::uint64_t rank) {
  const std::uint32_t n = F.order();
  if (rank >= static_cast<std::uint64_t>(n) * n)
    throw std::invalid_argument("hermitian: vector rank out of range");
  return {F.element(static_cast<std::uint32_t>(rank / n)),
          F.element(static_cast<std::uint32_t>(rank % n))};
}

std::vector<Vec2> all_vectors(const FieldSpec& F) {
  const std::uint32_t n = F.order();
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) out.push_back({F.element(i), F.element(j)});
  return out;
}

std::vector<Vec2> isotropic_vectors(const FieldSpec& F) {
  std::vector<Vec2> out;
  for (const Vec2& v : all_vectors(F))
    if (is_isotropic(v)) out.push_back(v);
  return out;
}

std::vector<IsotropicLine> isotropic_lines(const FieldSpec& F) {
  const std::uint32_t n = F.order();
  std::vector<bool> covered(static_cast<std::size_t>(n) * n, false);
  std::vector<IsotropicLine> out;
  // Vectors come in enumeration order, so the first uncovered nonzero one
  // on each line is the line's least representative.
  for (const Vec2& v : isotropic_vectors(F)) {
    const std::uint64_t rank = vec_rank(F, v);
    if (rank == 0 || covered[rank]) continue;
    out.push_back({v});
    for (std::uint32_t t = 1; t < n; ++t)
      covered[vec_rank(F, scale(F.element(t), v))] = true;
  }
  return out;
}

bool line_contains(const FieldSpec& F, const IsotropicLine& line, const Vec2& v) {
  const Vec2& rep = line.rep;
  FieldElement t = F.zero();
  if (!is_zero(rep.c1))
    t = v.c1 * inverse(rep.c1);
  else if (!is_zero(rep.c2))
    t = v.c2 * inverse(rep.c2);
  else
    throw std::invalid_argument("hermitian: line representative is zero");
  return scale(t, rep) == v;
}

std::vector<Vec2> line_points(const FieldSpec& F, const IsotropicLine& line) {
  std::vector<Vec2> out;
  out.reserve(F.order());
  for (std::uint32_t t = 0; t < F.order(); ++t) out.push_back(scale(F.element(t), line.rep));
  return out;
}

Isometry identity_isometry(const FieldSpec& F) {
  return {F.one(), F.zero(), F.zero(), F.one()};
}

Isometry compose(const Isometry& s, const Isometry& t) {
  return {s.a * t.a + s.b * t.c, s.a * t.b + s.b * t.d,
          s.c * t.a + s.d * t.c, s.c * t.b + s.d * t.d};
}

bool is_isometry(const Isometry& s) {
  const FieldSpec* F = s.a.field;
  if (F == nullptr) return false;
  if (is_zero(s.a * s.d + s.b * s.c)) return false;
  const Vec2 e1{F->one(), F->zero()};
  const Vec2 e2{F->zero(), F->one()};
  const Vec2 f1 = s.apply(e1);
  const Vec2 f2 = s.apply(e2);
  return herm(f1, f1) == herm(e1, e1) && herm(f2, f2) == herm(e2, e2) &&
         herm(f1, f2) == herm(e1, e2);
}

Isometry cyclic_isometry(const FieldSpec& F) {
  return {F.norm_one_generator(), F.zero(), F.zero(), F.one()};
}

}  // namespace mubforge
