#include <doctest.h>

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "mubforge/group.hpp"

using namespace mubforge;

namespace {

std::uint64_t lcg_next(std::uint64_t& s) {
  s = s * 6364136223846793005ULL + 1442695040888963407ULL;
  return s >> 33;
}

GroupElement random_element(const FieldSpec& F, std::uint64_t& s) {
  return element_at(F, lcg_next(s) % group_order(F));
}

}  // namespace

TEST_CASE("group axioms") {
  for (int r : {1, 2, 3}) {
    auto F = FieldSpec::make(r);
    const GroupElement e = group_identity(*F);
    const std::uint64_t n = group_order(*F);
    const bool exhaustive = r == 1;
    std::uint64_t s = 1009 + r;
    const int samples = exhaustive ? 0 : 100000;

    auto pick3 = [&](std::uint64_t i) {
      if (exhaustive) {
        return std::array<GroupElement, 3>{element_at(*F, i / (n * n)),
                                           element_at(*F, (i / n) % n),
                                           element_at(*F, i % n)};
      }
      return std::array<GroupElement, 3>{random_element(*F, s), random_element(*F, s),
                                         random_element(*F, s)};
    };
    const std::uint64_t total = exhaustive ? n * n * n : samples;

    for (std::uint64_t i = 0; i < total; ++i) {
      auto [x, y, z] = pick3(i);
      REQUIRE(gmul(gmul(x, y), z) == gmul(x, gmul(y, z)));
      REQUIRE(gmul(x, e) == x);
      REQUIRE(gmul(e, x) == x);
      REQUIRE(gmul(x, ginv(x)) == e);
      REQUIRE(gmul(ginv(x), x) == e);
      // closed form of the commutator
      GroupElement direct = gmul(gmul(ginv(x), ginv(y)), gmul(x, y));
      REQUIRE(commutator(x, y) == direct);
      REQUIRE(is_central(commutator(x, y)));
      REQUIRE(commutes(x, y) == (commutator(x, y) == e));
    }
  }
}

TEST_CASE("element enumeration round-trips") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    for (std::uint64_t i = 0; i < group_order(*F); ++i) {
      CHECK(element_rank(*F, element_at(*F, i)) == i);
    }
  }
}

TEST_CASE("squares are central and square roots count q^5 + q^4 - q^3") {
  const std::uint64_t expected[] = {40, 1216, 36352};
  for (int r : {1, 2, 3}) {
    auto F = FieldSpec::make(r);
    const std::uint64_t q = F->q();
    CHECK(square_root_count(*F) == expected[r - 1]);
    CHECK(square_root_count(*F) == q * q * q * (q * q + q - 1));
    // cross-check: x^2 = (0, <u, u>), so roots of 1 are exactly the
    // elements with isotropic vector part, q^2 central coordinates each
    CHECK(square_root_count(*F) ==
          static_cast<std::uint64_t>(isotropic_vectors(*F).size()) * F->order());
  }
  // direct recount for q = 2
  auto F = FieldSpec::make(1);
  const GroupElement e = group_identity(*F);
  std::uint64_t roots = 0;
  for (std::uint64_t i = 0; i < group_order(*F); ++i) {
    GroupElement x = element_at(*F, i);
    if (gmul(x, x) == e) ++roots;
    CHECK(is_central(gmul(x, x)));
  }
  CHECK(roots == 40);
}

TEST_CASE("centralizer orders") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    const std::uint64_t q = F->q();
    const std::uint64_t q5 = q * q * q * q * q;

    // central elements centralize everything
    GroupElement central{{F->zero(), F->zero()}, F->element(1)};
    CHECK(centralizer_order(*F, central) == group_order(*F));

    // every non-central element has centralizer of order exactly q^5
    std::uint64_t s = 31 + r;
    for (int i = 0; i < (r == 1 ? 60 : 12); ++i) {
      GroupElement x = random_element(*F, s);
      if (is_central(x)) continue;
      REQUIRE(centralizer_order(*F, x) == q5);
    }
  }
}

TEST_CASE("conjugacy class count is q^5 + q^2 - q") {
  auto F1 = FieldSpec::make(1);
  CHECK(conjugacy_class_count(*F1) == 34);
  auto F2 = FieldSpec::make(2);
  CHECK(conjugacy_class_count(*F2) == 1036);
  auto F3 = FieldSpec::make(3);
  CHECK_THROWS_AS(conjugacy_class_count(*F3), std::invalid_argument);
}

TEST_CASE("named subgroups") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    const std::uint64_t q = F->q();
    auto line = isotropic_lines(*F)[0];

    struct Row {
      SubgroupSpec spec;
      std::uint64_t order;
    };
    const Row rows[] = {
        {SubgroupSpec::line_subgroup(line), q * q},
        {SubgroupSpec::line_with_center(line), q * q * q * q},
        {SubgroupSpec::center(), q * q},
        {SubgroupSpec::derived(), q},
        {SubgroupSpec::span_with_center({F->one(), F->zero()}), q * q * q * q},
    };

    for (const auto& row : rows) {
      CHECK(row.spec.order(*F) == row.order);
      auto elems = row.spec.elements(*F);
      REQUIRE(elems.size() == row.order);
      // rank order, no duplicates, membership agrees with contains()
      for (std::size_t i = 1; i < elems.size(); ++i) {
        REQUIRE(element_rank(*F, elems[i - 1]) < element_rank(*F, elems[i]));
      }
      std::set<std::uint64_t> members;
      for (const auto& x : elems) {
        CHECK(row.spec.contains(*F, x));
        members.insert(element_rank(*F, x));
      }
      // closure under products and inverses
      const std::size_t stride = elems.size() > 64 ? 7 : 1;
      for (std::size_t i = 0; i < elems.size(); i += stride) {
        for (std::size_t j = 0; j < elems.size(); j += stride) {
          REQUIRE(members.count(element_rank(*F, gmul(elems[i], elems[j]))) == 1);
        }
        REQUIRE(members.count(element_rank(*F, ginv(elems[i]))) == 1);
      }
    }
  }
}

TEST_CASE("line subgroup is elementary abelian") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    auto line = isotropic_lines(*F)[0];
    auto elems = SubgroupSpec::line_subgroup(line).elements(*F);
    const GroupElement e = group_identity(*F);
    for (const auto& x : elems) {
      CHECK(gmul(x, x) == e);
      for (const auto& y : elems) CHECK(commutes(x, y));
    }
  }
}

TEST_CASE("span subgroup: involutions, center, commutators") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    const std::uint64_t q = F->q();
    // a non-isotropic vector: (1, 0) has <v, v> = 1
    Vec2 v{F->one(), F->zero()};
    REQUIRE_FALSE(is_isotropic(v));
    auto spec = SubgroupSpec::span_with_center(v);
    auto elems = spec.elements(*F);
    const GroupElement e = group_identity(*F);

    std::uint64_t involutions = 0;
    for (const auto& x : elems) {
      if (!(x == e) && gmul(x, x) == e) ++involutions;
    }
    CHECK(involutions == q * q - 1);  // exactly the nontrivial central elements

    // commutators inside the span fill the derived subgroup
    std::set<std::uint32_t> values;
    for (const auto& x : elems) {
      for (const auto& y : elems) {
        GroupElement com = commutator(x, y);
        REQUIRE(is_central(com));
        values.insert(com.a.bits);
      }
    }
    auto derived = SubgroupSpec::derived().elements(*F);
    REQUIRE(values.size() == derived.size());
    for (const auto& d : derived) CHECK(values.count(d.a.bits) == 1);

    // centralizer of a non-central member, inside the span, has order q^3
    GroupElement x{v, F->zero()};
    CHECK(centralizer_order_in(elems, x) == q * q * q);
    // ...while its centralizer in the whole group is q^5
    CHECK(centralizer_order(*F, x) == q * q * q * q * q);
  }
}

TEST_CASE("isometries act as automorphisms fixing the center") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    auto sigma = cyclic_isometry(*F);
    std::uint64_t s = 555 + r;
    for (int i = 0; i < 200; ++i) {
      GroupElement x = random_element(*F, s);
      GroupElement y = random_element(*F, s);
      REQUIRE(apply_isometry(sigma, gmul(x, y)) ==
              gmul(apply_isometry(sigma, x), apply_isometry(sigma, y)));
      REQUIRE(apply_isometry(sigma, ginv(x)) == ginv(apply_isometry(sigma, x)));
    }
    GroupElement central{{F->zero(), F->zero()}, F->element(2)};
    CHECK(apply_isometry(sigma, central) == central);

    // singular map, never an isometry
    Isometry bad{F->one(), F->one(), F->one(), F->one()};
    CHECK_THROWS_AS(apply_isometry(bad, central), std::invalid_argument);
  }
}
