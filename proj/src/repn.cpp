#include "mubforge/repn.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "mubforge/rng.hpp"

namespace mubforge {

LinearCharacter choose_character(const FieldSpec& F) {
  return {F.zero(), F.least_non_subfield()};
}

SignedPermMatrix::SignedPermMatrix(std::vector<std::int32_t> rows, std::vector<std::int8_t> signs)
    : row_(std::move(rows)), sign_(std::move(signs)) {
  if (row_.size() != sign_.size())
    throw std::invalid_argument("signed perm: row/sign size mismatch");
  const int d = dim();
  std::vector<bool> seen(d, false);
  for (int j = 0; j < d; ++j) {
    if (row_[j] < 0 || row_[j] >= d || seen[row_[j]])
      throw std::invalid_argument("signed perm: column map is not a permutation");
    if (sign_[j] != 1 && sign_[j] != -1)
      throw std::invalid_argument("signed perm: signs must be +-1");
    seen[row_[j]] = true;
  }
}

SignedPermMatrix SignedPermMatrix::identity(int dim) {
  std::vector<std::int32_t> rows(dim);
  std::iota(rows.begin(), rows.end(), 0);
  return SignedPermMatrix(std::move(rows), std::vector<std::int8_t>(dim, 1));
}

SignedPermMatrix SignedPermMatrix::operator*(const SignedPermMatrix& other) const {
  const int d = dim();
  if (other.dim() != d) throw std::invalid_argument("signed perm: dimension mismatch");
  std::vector<std::int32_t> rows(d);
  std::vector<std::int8_t> signs(d);
  for (int j = 0; j < d; ++j) {
    rows[j] = row_[other.row_[j]];
    signs[j] = static_cast<std::int8_t>(sign_[other.row_[j]] * other.sign_[j]);
  }
  return SignedPermMatrix(std::move(rows), std::move(signs));
}

SignedPermMatrix SignedPermMatrix::transpose() const {
  const int d = dim();
  std::vector<std::int32_t> rows(d);
  std::vector<std::int8_t> signs(d);
  for (int j = 0; j < d; ++j) {
    rows[row_[j]] = j;
    signs[row_[j]] = sign_[j];
  }
  return SignedPermMatrix(std::move(rows), std::move(signs));
}

std::int64_t SignedPermMatrix::trace() const {
  std::int64_t t = 0;
  for (int j = 0; j < dim(); ++j)
    if (row_[j] == j) t += sign_[j];
  return t;
}

bool SignedPermMatrix::is_identity() const {
  for (int j = 0; j < dim(); ++j)
    if (row_[j] != j || sign_[j] != 1) return false;
  return true;
}

Eigen::MatrixXd SignedPermMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (int j = 0; j < dim(); ++j) m(row_[j], j) = sign_[j];
  return m;
}

void SignedPermMatrix::accumulate(Eigen::MatrixXd& acc, double w) const {
  for (int j = 0; j < dim(); ++j) acc(row_[j], j) += w * sign_[j];
}

InducedRep::InducedRep(FieldPtr F, const IsotropicLine& base, const LinearCharacter& chi)
    : F_(std::move(F)), base_(base), chi_(chi) {
  detail::require_same_field(F_->zero(), chi_.central_coeff);
  detail::require_same_field(F_->zero(), chi_.line_coeff);
  if (in_subfield(chi_.central_coeff))
    throw std::invalid_argument("repn: central coefficient must lie outside the subfield");
  u0_ = base_.rep;
  if ((is_zero(u0_.c1) && is_zero(u0_.c2)) || !is_isotropic(u0_))
    throw std::invalid_argument("repn: base line representative must be nonzero isotropic");

  const std::uint32_t n = F_->order();
  d_ = static_cast<int>(n);

  // Least vector off the line; (u0, w0) is then a basis of V.
  bool found = false;
  for (std::uint64_t rank = 1; rank < static_cast<std::uint64_t>(n) * n && !found; ++rank) {
    const Vec2 v = vec_at(*F_, rank);
    if (!line_contains(*F_, base_, v)) {
      w0_ = v;
      found = true;
    }
  }
  const FieldElement det = u0_.c1 * w0_.c2 + u0_.c2 * w0_.c1;
  inv_det_ = inverse(det);

  transversal_.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j)
    transversal_.push_back({scale(F_->element(j), w0_), F_->zero()});
}

InducedRep InducedRep::standard(FieldPtr F) {
  const IsotropicLine base = isotropic_lines(*F).front();
  const LinearCharacter chi = choose_character(*F);
  return InducedRep(std::move(F), base, chi);
}

std::pair<FieldElement, FieldElement> InducedRep::coordinates(const Vec2& v) const {
  // Cramer's rule for [u0 w0] * (t, s)^T = v; signs are immaterial in
  // characteristic 2.
  const FieldElement t = (v.c1 * w0_.c2 + v.c2 * w0_.c1) * inv_det_;
  const FieldElement s = (u0_.c1 * v.c2 + u0_.c2 * v.c1) * inv_det_;
  return {t, s};
}

int InducedRep::chi_sign(const GroupElement& m) const {
  const auto [t, s] = coordinates(m.u);
  if (!is_zero(s))
    throw std::invalid_argument("repn: element lies outside the inducing subgroup");
  const int parity = abs_trace(chi_.line_coeff * t) ^ abs_trace(chi_.central_coeff * m.a);
  return parity ? -1 : 1;
}

SignedPermMatrix InducedRep::matrix(const GroupElement& g) const {
  std::vector<std::int32_t> rows(d_);
  std::vector<std::int8_t> signs(d_);
  for (int j = 0; j < d_; ++j) {
    const GroupElement z = gmul(g, transversal_[j]);
    const auto [t, s] = coordinates(z.u);
    const int i = static_cast<int>(s.bits);
    const GroupElement m = gmul(ginv(transversal_[i]), z);
    rows[j] = i;
    signs[j] = static_cast<std::int8_t>(chi_sign(m));
  }
  return SignedPermMatrix(std::move(rows), std::move(signs));
}

std::int64_t InducedRep::character(const GroupElement& g) const {
  return matrix(g).trace();
}

Report run_counting_checks(const InducedRep& rep) {
  const FieldSpec& F = rep.field();
  const std::uint64_t q = F.q();
  const std::uint64_t q2 = F.order();
  Report report;

  {
    CheckResult row{"class_count", true, ""};
    const std::uint64_t expected = q * q * q * q * q + q * q - q;
    if (q <= 4) {
      const std::uint64_t actual = conjugacy_class_count(F);
      row.passed = actual == expected;
      row.detail = "expected " + std::to_string(expected) + ", got " + std::to_string(actual);
    } else {
      row.detail = "skipped: census restricted to q <= 4";
    }
    report.push_back(row);
  }

  const std::uint64_t roots = square_root_count(F);
  {
    const std::uint64_t expected = q * q * q * q * q + q * q * q * q - q * q * q;
    report.push_back({"square_roots", roots == expected,
                      "expected " + std::to_string(expected) + ", got " + std::to_string(roots)});
  }

  {
    // Sum of all irreducible degrees: q^5 linear characters plus q^2 - q
    // characters of degree q^2.  With every indicator equal to +1 this must
    // match the number of solutions of x^2 = 1.
    const std::uint64_t degree_sum = q * q * q * q * q + (q2 - q) * q2;
    report.push_back({"involution_identity", degree_sum == roots,
                      "degree sum " + std::to_string(degree_sum) + ", square roots " +
                          std::to_string(roots)});
  }

  {
    const std::uint64_t order = q2 * q2 * q2;
    const std::uint64_t sum_sq = q * q * q * q * q + (q2 - q) * q2 * q2;
    report.push_back({"degree_sum_squares", sum_sq == order,
                      "sum of squared degrees " + std::to_string(sum_sq) + ", group order " +
                          std::to_string(order)});
  }

  {
    // The character vanishes off the center, so its norm reduces to a sum
    // over the q^2 central elements; unit norm needs that sum to be q^6.
    std::uint64_t sum = 0;
    for (const GroupElement& z : SubgroupSpec::center().elements(F)) {
      const std::int64_t chi = rep.character(z);
      sum += static_cast<std::uint64_t>(chi * chi);
    }
    const std::uint64_t order = q2 * q2 * q2;
    report.push_back({"irreducibility", sum == order,
                      "central norm sum " + std::to_string(sum) + ", group order " +
                          std::to_string(order)});
  }

  {
    CheckResult row{"character_support", true, ""};
    std::uint64_t checked = 0;
    if (q <= 4) {
      const std::uint64_t total = group_order(F);
      for (std::uint64_t rank = 0; rank < total && row.passed; ++rank) {
        const GroupElement x = element_at(F, rank);
        if (is_central(x)) continue;
        ++checked;
        if (rep.character(x) != 0) {
          row.passed = false;
          row.detail = "nonzero character off center at rank " + std::to_string(rank);
        }
      }
    } else {
      Xorshift64Star rng(0xC0FFEE);
      while (checked < 2000 && row.passed) {
        const GroupElement x = element_at(F, rng.next_u64() % group_order(F));
        if (is_central(x)) continue;
        ++checked;
        if (rep.character(x) != 0) {
          row.passed = false;
          row.detail = "nonzero character off center";
        }
      }
    }
    if (row.passed) row.detail = "verified on " + std::to_string(checked) + " elements";
    report.push_back(row);
  }

  return report;
}

void verify_counting_suite(const InducedRep& rep) {
  for (const CheckResult& row : run_counting_checks(rep))
    if (!row.passed) throw IntegrityError(row.name, row.detail);
}

}  // namespace mubforge
