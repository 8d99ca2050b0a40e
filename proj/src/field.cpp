#include "mubforge/field.hpp"

#include <stdexcept>
#include <string>

namespace mubforge {

namespace {

// Product of two GF(2) polynomials, reduced modulo `mod` (degree `deg`,
// leading bit set).  Shift-and-xor; inputs already reduced.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t mod, int deg) {
  std::uint32_t acc = 0;
  while (b != 0) {
    if (b & 1u) acc ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> deg) & 1u) a ^= mod;
  }
  return acc;
}

int poly_degree(std::uint32_t p) {
  int d = -1;
  while (p != 0) {
    ++d;
    p >>= 1;
  }
  return d;
}

std::uint32_t poly_rem(std::uint32_t a, std::uint32_t b) {
  int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; --da)
    if ((a >> da) & 1u) a ^= b << (da - db);
  return a;
}

bool is_irreducible(std::uint32_t p, int deg) {
  if (poly_degree(p) != deg) return false;
  for (std::uint32_t g = 2; poly_degree(g) <= deg / 2; ++g)
    if (poly_rem(p, g) == 0) return false;
  return true;
}

std::uint32_t canonical_modulus(int deg) {
  for (std::uint32_t p = (1u << deg) + 1;; p += 2)  // constant term must be 1
    if (is_irreducible(p, deg)) return p;
}

std::uint32_t clmul_pow(std::uint32_t a, std::uint64_t e, std::uint32_t mod, int deg) {
  std::uint32_t acc = 1;
  while (e != 0) {
    if (e & 1u) acc = clmul_mod(acc, a, mod, deg);
    a = clmul_mod(a, a, mod, deg);
    e >>= 1;
  }
  return acc;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool has_full_order(std::uint32_t a, std::uint32_t n, std::uint32_t mod, int deg) {
  if (a < 2) return n == 1;
  for (std::uint32_t p : prime_factors(n))
    if (clmul_pow(a, n / p, mod, deg) == 1) return false;
  return true;
}

std::uint32_t canonical_generator(std::uint32_t n, std::uint32_t mod, int deg) {
  for (std::uint32_t a = 2;; ++a)
    if (has_full_order(a, n, mod, deg)) return a;
}

}  // namespace

FieldSpec::FieldSpec(int r, std::uint32_t modulus, std::uint32_t mu)
    : r_(r),
      deg_(2 * r),
      q_(1u << r),
      order_(1u << (2 * r)),
      modulus_(modulus),
      mu_(mu) {
  const std::uint32_t n = order_ - 1;
  exp_.assign(2 * n, 1);
  log_.assign(order_, -1);
  for (std::uint32_t k = 1; k < n; ++k)
    exp_[k] = clmul_mod(exp_[k - 1], mu_, modulus_, deg_);
  for (std::uint32_t k = 0; k < n; ++k) {
    exp_[k + n] = exp_[k];
    log_[exp_[k]] = static_cast<std::int32_t>(k);
  }

  frob_.assign(order_, 0);
  trace_.assign(order_, 0);
  for (std::uint32_t x = 0; x < order_; ++x) {
    // Walk the squaring orbit x, x^2, x^4, ...; x^(2^r) is the conjugate,
    // and the orbit sum lies in GF(2), giving the absolute trace.
    std::uint32_t y = x;
    std::uint32_t orbit_sum = 0;
    for (int i = 0; i < deg_; ++i) {
      if (i == r_) frob_[x] = y;
      orbit_sum ^= y;
      y = clmul_mod(y, y, modulus_, deg_);
    }
    trace_[x] = static_cast<std::uint8_t>(orbit_sum & 1u);
  }

  lambda_ = pow_bits(mu_, q_ - 1);
  cstar_ = 0;
  for (std::uint32_t x = 0; x < order_; ++x) {
    if (frob_[x] != x) {
      cstar_ = x;
      break;
    }
  }
}

FieldPtr FieldSpec::make(int r) {
  if (r < 1 || r > 4) throw std::invalid_argument("field: r must be in 1..4");
  const int deg = 2 * r;
  const std::uint32_t mod = canonical_modulus(deg);
  const std::uint32_t mu = canonical_generator((1u << deg) - 1, mod, deg);
  return FieldPtr(new FieldSpec(r, mod, mu));
}

FieldPtr FieldSpec::make(int r, std::uint32_t modulus_bits, std::uint32_t generator_bits) {
  if (r < 1 || r > 4) throw std::invalid_argument("field: r must be in 1..4");
  const int deg = 2 * r;
  if (!is_irreducible(modulus_bits, deg))
    throw std::invalid_argument("field: modulus is not irreducible of degree " +
                                std::to_string(deg));
  const std::uint32_t n = (1u << deg) - 1;
  if (generator_bits < 2 || generator_bits > n ||
      !has_full_order(generator_bits, n, modulus_bits, deg))
    throw std::invalid_argument("field: generator does not have order q^2-1");
  return FieldPtr(new FieldSpec(r, modulus_bits, generator_bits));
}

FieldElement FieldSpec::element(std::uint32_t bits) const {
  if (bits >= order_) throw std::invalid_argument("field: element encoding out of range");
  return {bits, this};
}

std::uint32_t FieldSpec::mul_bits(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[static_cast<std::size_t>(log_[a]) + static_cast<std::size_t>(log_[b])];
}

std::uint32_t FieldSpec::inv_bits(std::uint32_t a) const {
  if (a == 0) throw std::invalid_argument("field: inverse of zero");
  const std::uint32_t n = order_ - 1;
  return exp_[(n - static_cast<std::uint32_t>(log_[a])) % n];
}

std::uint32_t FieldSpec::pow_bits(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1u : 0u;
  const std::uint32_t n = order_ - 1;
  const std::uint64_t k = (static_cast<std::uint64_t>(log_[a]) * (e % n)) % n;
  return exp_[k];
}

namespace detail {

void require_field(const FieldElement& a) {
  if (a.field == nullptr) throw std::invalid_argument("field: element has no field spec");
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  require_field(a);
  require_field(b);
  if (a.field == b.field) return;
  if (a.field->r() != b.field->r() || a.field->modulus_bits() != b.field->modulus_bits())
    throw std::invalid_argument("field: operands belong to different field specs");
}

}  // namespace detail

FieldElement inverse(const FieldElement& a) {
  detail::require_field(a);
  return {a.field->inv_bits(a.bits), a.field};
}

FieldElement pow(const FieldElement& a, std::uint64_t e) {
  detail::require_field(a);
  return {a.field->pow_bits(a.bits, e), a.field};
}

std::uint32_t multiplicative_order(const FieldElement& a) {
  detail::require_field(a);
  if (a.bits == 0) throw std::invalid_argument("field: order of zero");
  std::uint32_t k = 1;
  std::uint32_t x = a.bits;
  while (x != 1) {
    x = a.field->mul_bits(x, a.bits);
    ++k;
  }
  return k;
}

}  // namespace mubforge
