#include "mubforge/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace mubforge {

GroupElement group_identity(const FieldSpec& F) {
  return {{F.zero(), F.zero()}, F.zero()};
}

GroupElement commutator(const GroupElement& x, const GroupElement& y) {
  const FieldSpec* F = x.a.field;
  const FieldElement t = herm(x.u, y.u) + herm(y.u, x.u);
  return {{F->zero(), F->zero()}, t};
}

GroupElement element_at(const FieldSpec& F, std::uint64_t rank) {
  const std::uint64_t n = F.order();
  if (rank >= n * n * n) throw std::invalid_argument("group: element rank out of range");
  return {vec_at(F, rank / n), F.element(static_cast<std::uint32_t>(rank % n))};
}

std::uint64_t square_root_count(const FieldSpec& F) {
  const std::uint64_t n = F.order();
  if (F.q() <= 4) {
    const GroupElement id = group_identity(F);
    std::uint64_t count = 0;
    for (std::uint64_t rank = 0; rank < n * n * n; ++rank) {
      const GroupElement x = element_at(F, rank);
      if (gmul(x, x) == id) ++count;
    }
    return count;
  }
  return n * isotropic_vectors(F).size();
}

std::uint64_t centralizer_order(const FieldSpec& F, const GroupElement& x) {
  // Commutation depends only on the vector parts, so scan the q^4 vectors
  // and multiply by the q^2 free central coordinates.
  const std::uint64_t n = F.order();
  std::uint64_t vectors = 0;
  for (std::uint64_t rank = 0; rank < n * n; ++rank) {
    const Vec2 v = vec_at(F, rank);
    if (is_zero(herm(x.u, v) + herm(v, x.u))) ++vectors;
  }
  return vectors * n;
}

std::uint64_t centralizer_order_in(const std::vector<GroupElement>& ambient,
                                   const GroupElement& x) {
  std::uint64_t count = 0;
  for (const GroupElement& y : ambient)
    if (commutes(x, y)) ++count;
  return count;
}

std::uint64_t conjugacy_class_count(const FieldSpec& F) {
  if (F.q() > 4)
    throw std::invalid_argument("group: class census is quadratic, restricted to q <= 4");
  const std::uint64_t n = F.order();
  const std::uint64_t total = n * n * n;
  std::vector<bool> visited(total, false);
  std::uint64_t classes = 0;
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    if (visited[rank]) continue;
    ++classes;
    const GroupElement x = element_at(F, rank);
    for (std::uint64_t g = 0; g < total; ++g) {
      const GroupElement y = element_at(F, g);
      visited[element_rank(F, gmul(ginv(y), gmul(x, y)))] = true;
    }
  }
  return classes;
}

GroupElement apply_isometry(const Isometry& s, const GroupElement& x) {
  if (!is_isometry(s)) throw std::invalid_argument("group: matrix is not an isometry");
  return {s.apply(x.u), x.a};
}

SubgroupSpec SubgroupSpec::line_subgroup(const IsotropicLine& line) {
  SubgroupSpec spec(Kind::line);
  spec.vec_ = line.rep;
  return spec;
}

SubgroupSpec SubgroupSpec::line_with_center(const IsotropicLine& line) {
  SubgroupSpec spec(Kind::line_center);
  spec.vec_ = line.rep;
  return spec;
}

SubgroupSpec SubgroupSpec::center() { return SubgroupSpec(Kind::center); }

SubgroupSpec SubgroupSpec::derived() { return SubgroupSpec(Kind::derived); }

SubgroupSpec SubgroupSpec::span_with_center(const Vec2& v) {
  if (is_zero(v.c1) && is_zero(v.c2))
    throw std::invalid_argument("group: span vector must be nonzero");
  SubgroupSpec spec(Kind::span_center);
  spec.vec_ = v;
  return spec;
}

std::uint64_t SubgroupSpec::order(const FieldSpec& F) const {
  const std::uint64_t n = F.order();
  switch (kind_) {
    case Kind::line: return n;
    case Kind::line_center: return n * n;
    case Kind::center: return n;
    case Kind::derived: return F.q();
    case Kind::span_center: return n * n;
  }
  return 0;
}

bool SubgroupSpec::contains(const FieldSpec& F, const GroupElement& x) const {
  switch (kind_) {
    case Kind::line:
      return is_zero(x.a) && line_contains(F, {vec_}, x.u);
    case Kind::line_center:
      return line_contains(F, {vec_}, x.u);
    case Kind::center:
      return is_central(x);
    case Kind::derived:
      return is_central(x) && in_subfield(x.a);
    case Kind::span_center: {
      // x.u must be a scalar multiple of vec_.
      FieldElement t = F.zero();
      if (!is_zero(vec_.c1))
        t = x.u.c1 * inverse(vec_.c1);
      else
        t = x.u.c2 * inverse(vec_.c2);
      return scale(t, vec_) == x.u;
    }
  }
  return false;
}

std::vector<GroupElement> SubgroupSpec::elements(const FieldSpec& F) const {
  std::vector<GroupElement> out;
  const std::uint32_t n = F.order();
  switch (kind_) {
    case Kind::line:
      for (std::uint32_t t = 0; t < n; ++t)
        out.push_back({scale(F.element(t), vec_), F.zero()});
      break;
    case Kind::line_center:
    case Kind::span_center:
      for (std::uint32_t t = 0; t < n; ++t)
        for (std::uint32_t a = 0; a < n; ++a)
          out.push_back({scale(F.element(t), vec_), F.element(a)});
      break;
    case Kind::center:
      for (std::uint32_t a = 0; a < n; ++a)
        out.push_back({{F.zero(), F.zero()}, F.element(a)});
      break;
    case Kind::derived:
      for (std::uint32_t a = 0; a < n; ++a)
        if (F.frob_bits(a) == a) out.push_back({{F.zero(), F.zero()}, F.element(a)});
      break;
  }
  std::sort(out.begin(), out.end(), [&F](const GroupElement& x, const GroupElement& y) {
    return element_rank(F, x) < element_rank(F, y);
  });
  return out;
}

}  // namespace mubforge
