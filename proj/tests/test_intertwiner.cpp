#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "mubforge/intertwiner.hpp"
#include "mubforge/rng.hpp"

using namespace mubforge;

namespace {

// Reference recurrence, written out independently of the header.
std::uint64_t ref_xorshift_step(std::uint64_t& s) {
  s ^= s >> 12;
  s ^= s << 25;
  s ^= s >> 27;
  return s * 0x2545F4914F6CDD1DULL;
}

std::uint64_t ref_splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("generator matches the reference recurrence") {
  std::uint64_t state = ref_splitmix(42);
  CHECK(state == 0xbdd732262feb6e95ULL);
  Xorshift64Star gen(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(gen.next_u64() == ref_xorshift_step(state));
  }
}

TEST_CASE("frozen draws for seed 42") {
  Xorshift64Star gen(42);
  CHECK(gen.next_u64() == 0x31b0ece7c4f697a2ULL);
  CHECK(gen.next_u64() == 0x9008a3b1cb686f03ULL);
  CHECK(gen.next_u64() == 0x7c7173abd97be16fULL);
  CHECK(gen.next_u64() == 0x45672c8c8d6b8c4fULL);

  Xorshift64Star sym(42);
  CHECK(sym.next_symmetric() == doctest::Approx(-0.61178816493163479).epsilon(1e-16));
  CHECK(sym.next_symmetric() == doctest::Approx(0.12526365453124133).epsilon(1e-16));
  CHECK(sym.next_symmetric() == doctest::Approx(-0.027787724579895645).epsilon(1e-16));
  CHECK(sym.next_symmetric() == doctest::Approx(-0.45778887879456298).epsilon(1e-16));
}

TEST_CASE("unit draws stay inside [0, 1) and symmetric draws inside [-1, 1)") {
  Xorshift64Star gen(7);
  for (int i = 0; i < 20000; ++i) {
    double u = gen.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  Xorshift64Star sym(8);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double v = sym.next_symmetric();
    REQUIRE(v >= -1.0);
    REQUIRE(v < 1.0);
    mean += v;
  }
  CHECK(std::abs(mean / 20000.0) < 0.02);
}

TEST_CASE("thread count resolution honors the environment cap") {
  unsetenv("MUBFORGE_THREADS");
  CHECK(resolve_thread_count(3) == 3);
  CHECK(resolve_thread_count(1) == 1);
  CHECK(resolve_thread_count(0) >= 1);

  setenv("MUBFORGE_THREADS", "2", 1);
  CHECK(resolve_thread_count(8) == 2);
  CHECK(resolve_thread_count(1) == 1);
  CHECK(resolve_thread_count(0) <= 2);

  setenv("MUBFORGE_THREADS", "not-a-number", 1);
  CHECK(resolve_thread_count(5) == 5);
  unsetenv("MUBFORGE_THREADS");
}

TEST_CASE("averaging against the identity gives a scalar matrix") {
  auto F = FieldSpec::make(1);
  auto rep = InducedRep::standard(F);
  Eigen::MatrixXd d0 = average_intertwiner(rep, identity_isometry(*F), 42);
  // commutes with the whole irreducible image, hence scalar
  double scalar = d0.trace() / rep.dim();
  Eigen::MatrixXd dev = d0 - scalar * Eigen::MatrixXd::Identity(rep.dim(), rep.dim());
  CHECK(max_abs(dev) <= 1e-9 * max_abs(d0));
}

TEST_CASE("averaged matrix intertwines the twisted representation") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    auto rep = InducedRep::standard(F);
    auto sigma = cyclic_isometry(*F);
    Eigen::MatrixXd d0 = average_intertwiner(rep, sigma, 42);
    const double bound = 1e-9 * max_abs(d0);
    std::uint64_t s = 4242;
    auto next = [&s] {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      return s >> 33;
    };
    for (int i = 0; i < 200; ++i) {
      GroupElement x = element_at(*F, next() % group_order(*F));
      Eigen::MatrixXd lhs = rep.matrix(apply_isometry(sigma, x)).dense() * d0;
      Eigen::MatrixXd rhs = d0 * rep.matrix(x).dense();
      REQUIRE(max_abs(lhs - rhs) <= bound);
    }
  }
}

TEST_CASE("normalization yields the canonical orthogonal intertwiner") {
  for (int r : {1, 2}) {
    auto F = FieldSpec::make(r);
    const int q = static_cast<int>(F->q());
    auto rep = InducedRep::standard(F);
    auto sigma = cyclic_isometry(*F);
    const int d = rep.dim();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);

    Eigen::MatrixXd d0 = average_intertwiner(rep, sigma, 42);
    Eigen::MatrixXd b = normalize_intertwiner(d0, q);

    CHECK(max_abs(b.transpose() * b - id) <= 1e-10);

    // order exactly q + 1
    Eigen::MatrixXd p = id;
    for (int k = 1; k <= q; ++k) {
      p = p * b;
      CHECK(max_abs(p - id) > 0.5);
    }
    p = p * b;
    CHECK(max_abs(p - id) <= 1e-8);

    // normalizing a normalized matrix is a fixed point, and the overall
    // scale of the input is irrelevant (q + 1 odd keeps signs coherent)
    CHECK(max_abs(normalize_intertwiner(b, q) - b) <= 1e-9);
    CHECK(max_abs(normalize_intertwiner(3.7 * d0, q) - b) <= 1e-9);
    CHECK(max_abs(normalize_intertwiner(-2.25 * d0, q) - b) <= 1e-9);

    // still an intertwiner after rescaling
    std::uint64_t s = 5 + r;
    auto next = [&s] {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      return s >> 33;
    };
    for (int i = 0; i < 100; ++i) {
      GroupElement x = element_at(*F, next() % group_order(*F));
      REQUIRE(max_abs(rep.matrix(apply_isometry(sigma, x)).dense() * b -
                      b * rep.matrix(x).dense()) <= 1e-9);
    }

    // powers of b intertwine powers of the isometry
    Isometry twist = sigma;
    Eigen::MatrixXd bk = b;
    for (int k = 1; k <= q; ++k) {
      for (int i = 0; i < 20; ++i) {
        GroupElement x = element_at(*F, next() % group_order(*F));
        REQUIRE(max_abs(rep.matrix(apply_isometry(twist, x)).dense() * bk -
                        bk * rep.matrix(x).dense()) <= 1e-8);
      }
      twist = compose(sigma, twist);
      bk = bk * b;
    }
  }
}

TEST_CASE("cross-seed certification accepts the canonical matrix only") {
  auto F = FieldSpec::make(1);
  auto rep = InducedRep::standard(F);
  auto sigma = cyclic_isometry(*F);
  Eigen::MatrixXd b = normalize_intertwiner(average_intertwiner(rep, sigma, 42), 2);

  auto good = certify_uniqueness(rep, sigma, b);
  REQUIRE(good.size() == 3);
  for (const auto& row : good) {
    INFO(row.name, ": ", row.detail);
    CHECK(row.passed);
  }

  auto bad = certify_uniqueness(rep, sigma, -b);
  bool any_failed = false;
  for (const auto& row : bad) any_failed |= !row.passed;
  CHECK(any_failed);
}

TEST_CASE("averaging is bitwise independent of the worker count") {
  auto F = FieldSpec::make(2);
  auto rep = InducedRep::standard(F);
  auto sigma = cyclic_isometry(*F);
  AveragingOptions one;
  one.threads = 1;
  AveragingOptions four;
  four.threads = 4;
  Eigen::MatrixXd a = average_intertwiner(rep, sigma, 42, one);
  Eigen::MatrixXd b = average_intertwiner(rep, sigma, 42, four);
  CHECK(max_abs(a - b) == 0.0);

  // and changing the seed changes the raw average but not its direction:
  // both normalize to the same canonical intertwiner
  Eigen::MatrixXd c = average_intertwiner(rep, sigma, 1, one);
  CHECK(max_abs(a - c) > 0.0);
  CHECK(max_abs(normalize_intertwiner(a, 4) - normalize_intertwiner(c, 4)) <= 1e-9);
}

TEST_CASE("non-isometries are rejected before averaging") {
  auto F = FieldSpec::make(1);
  auto rep = InducedRep::standard(F);
  Isometry bad{F->one(), F->one(), F->one(), F->one()};
  CHECK_THROWS_AS(average_intertwiner(rep, bad, 42), std::invalid_argument);
}
