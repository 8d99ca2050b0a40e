#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace mubforge {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

// Element of the quadratic extension GF(q^2), q = 2^r.  The bit pattern is
// the polynomial representation: bit i is the coefficient of x^i modulo the
// spec's modulus.  Elements compare and sort by this integer encoding.
//
// An element is only meaningful together with its FieldSpec; the pointer is
// non-owning, so keep the FieldPtr alive while elements are in use.
struct FieldElement {
  std::uint32_t bits = 0;
  const FieldSpec* field = nullptr;
};

// GF(q^2) for q = 2^r, r in 1..4, with its distinguished arithmetic data:
//
//  * modulus: the irreducible polynomial of degree 2r over GF(2) with the
//    smallest integer encoding (canonical choice, so files are portable);
//  * generator: the multiplicative generator with the smallest encoding;
//  * norm_one_generator: generator^(q-1), of multiplicative order q+1.
//
// The subfield GF(q) sits inside as the fixed points of x -> x^q.
// All arithmetic is table-driven (the field has at most 256 elements).
class FieldSpec {
public:
  // Canonical field for a given r.
  static FieldPtr make(int r);

  // Explicit modulus/generator, validated: modulus must be irreducible of
  // degree exactly 2r and generator_bits must have full multiplicative
  // order q^2-1.  Throws std::invalid_argument otherwise.
  static FieldPtr make(int r, std::uint32_t modulus_bits, std::uint32_t generator_bits);

  int r() const { return r_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order() const { return order_; }  // q^2
  std::uint32_t modulus_bits() const { return modulus_; }
  std::uint32_t generator_bits() const { return mu_; }

  FieldElement zero() const { return {0, this}; }
  FieldElement one() const { return {1, this}; }
  FieldElement element(std::uint32_t bits) const;
  FieldElement generator() const { return {mu_, this}; }
  FieldElement norm_one_generator() const { return {lambda_, this}; }
  // Smallest element outside the subfield GF(q); used as the central twist
  // of the distinguished linear character.
  FieldElement least_non_subfield() const { return {cstar_, this}; }

  // Raw-bit arithmetic backing the element operators.
  std::uint32_t mul_bits(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_bits(std::uint32_t a) const;  // a != 0
  std::uint32_t pow_bits(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t frob_bits(std::uint32_t a) const { return frob_[a]; }
  int trace_bit(std::uint32_t a) const { return trace_[a]; }

private:
  FieldSpec(int r, std::uint32_t modulus, std::uint32_t mu);

  int r_;
  int deg_;  // 2r
  std::uint32_t q_;
  std::uint32_t order_;
  std::uint32_t modulus_;
  std::uint32_t mu_;
  std::uint32_t lambda_;
  std::uint32_t cstar_;
  std::vector<std::uint32_t> exp_;   // exp_[k] = mu^k, k < 2(order-1)
  std::vector<std::int32_t> log_;    // log_[x] for x != 0
  std::vector<std::uint32_t> frob_;  // x -> x^q
  std::vector<std::uint8_t> trace_;  // absolute trace to GF(2)
};

namespace detail {
void require_same_field(const FieldElement& a, const FieldElement& b);
void require_field(const FieldElement& a);
}  // namespace detail

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  return {a.bits ^ b.bits, a.field};
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  return {a.field->mul_bits(a.bits, b.bits), a.field};
}

inline bool operator==(const FieldElement& a, const FieldElement& b) {
  detail::require_same_field(a, b);
  return a.bits == b.bits;
}

inline bool is_zero(const FieldElement& a) {
  detail::require_field(a);
  return a.bits == 0;
}

// x -> x^q, the involutory automorphism fixing exactly the subfield.
inline FieldElement frobenius(const FieldElement& a) {
  detail::require_field(a);
  return {a.field->frob_bits(a.bits), a.field};
}

// x * x^q; always lands in the subfield.
inline FieldElement norm(const FieldElement& a) {
  detail::require_field(a);
  return {a.field->mul_bits(a.bits, a.field->frob_bits(a.bits)), a.field};
}

// Absolute trace to GF(2) of the degree-2r field, as an int in {0,1}.
inline int abs_trace(const FieldElement& a) {
  detail::require_field(a);
  return a.field->trace_bit(a.bits);
}

inline bool in_subfield(const FieldElement& a) {
  detail::require_field(a);
  return a.field->frob_bits(a.bits) == a.bits;
}

// Multiplicative inverse; throws std::invalid_argument at zero.
FieldElement inverse(const FieldElement& a);

FieldElement pow(const FieldElement& a, std::uint64_t e);

// Multiplicative order; throws std::invalid_argument at zero.
std::uint32_t multiplicative_order(const FieldElement& a);

}  // namespace mubforge
