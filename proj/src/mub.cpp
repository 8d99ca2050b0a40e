#include "mubforge/mub.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mubforge {

namespace {

constexpr std::size_t kViolationCap = 256;

// Top eigenvector of a symmetric matrix expected to be a rank-one
// orthogonal projector: eigenvalues {1, 0, ..., 0} within 1e-8.
Eigen::VectorXd rank_one_unit_vector(const Eigen::MatrixXd& projector, const char* check_name) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projector);
  if (es.info() != Eigen::Success) throw IntegrityError(check_name, "eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const int n = static_cast<int>(ev.size());
  int top = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(ev(i)) > std::abs(ev(top))) top = i;
  double second = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != top) second = std::max(second, std::abs(ev(i)));
  if (std::abs(ev(top) - 1.0) > 1e-8 || second > 1e-8)
    throw IntegrityError(check_name, "projector is not rank one: top eigenvalue " +
                                         std::to_string(ev(top)) + ", second " +
                                         std::to_string(second));
  Eigen::VectorXd v = es.eigenvectors().col(top);
  for (int i = 0; i < n; ++i) {
    if (std::abs(v(i)) > 1e-6) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  return v;
}

// --- closures of commuting orthogonal involutions --------------------------
//
// Two element models share the closure/trace/extraction logic: an exact one
// on signed permutations and a tolerance-based one on dense matrices.

struct SparseModel {
  using Elem = SignedPermMatrix;

  static int dim(const Elem& x) { return x.dim(); }
  static Elem identity(int d) { return SignedPermMatrix::identity(d); }
  static Elem multiply(const Elem& a, const Elem& b) { return a * b; }
  static bool equal(const Elem& a, const Elem& b) { return a == b; }
  static void validate_generator(const Elem&) {}  // structurally orthogonal
  static bool trace_is_zero(const Elem& a, const Elem& b, double* trace_out) {
    // tr(a b) without forming the product.
    std::int64_t t = 0;
    for (int j = 0; j < b.dim(); ++j) {
      const int k = b.row(j);
      if (a.row(k) == j) t += a.sign(k) * b.sign(j);
    }
    *trace_out = static_cast<double>(t);
    return t == 0;
  }
  static void accumulate(Eigen::MatrixXd& acc, const Elem& x, double w) { x.accumulate(acc, w); }
};

struct DenseModel {
  using Elem = Eigen::MatrixXd;
  double tol;

  static int dim(const Elem& x) { return static_cast<int>(x.rows()); }
  static Elem identity(int d) { return Eigen::MatrixXd::Identity(d, d); }
  static Elem multiply(const Elem& a, const Elem& b) { return a * b; }
  bool equal(const Elem& a, const Elem& b) const {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
  }
  void validate_generator(const Elem& x) const {
    const int d = dim(x);
    if (x.cols() != d) throw std::invalid_argument("trace condition: generator not square");
    const double defect =
        (x * x.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > tol) throw std::invalid_argument("trace condition: generator not orthogonal");
  }
  bool trace_is_zero(const Elem& a, const Elem& b, double* trace_out) const {
    const double t = a.cwiseProduct(b.transpose()).sum();
    *trace_out = t;
    return std::abs(t) <= tol;
  }
  static void accumulate(Eigen::MatrixXd& acc, const Elem& x, double w) { acc += w * x; }
};

template <typename Model>
struct GroupClosure {
  std::vector<typename Model::Elem> elements;  // elements[0] is the identity
  std::vector<std::uint32_t> masks;            // exponent mask over kept generators
};

template <typename Model>
bool closure_contains(const Model& model, const GroupClosure<Model>& closure,
                      const typename Model::Elem& x) {
  for (const auto& e : closure.elements)
    if (model.equal(e, x)) return true;
  return false;
}

// Builds the group generated by commuting orthogonal involutions and checks
// every precondition of the trace criterion on the way.
template <typename Model>
GroupClosure<Model> build_closure(const Model& model,
                                  const std::vector<typename Model::Elem>& gens, int expected_order) {
  if (gens.empty()) throw std::invalid_argument("trace condition: empty generator list");
  const int d = Model::dim(gens.front());
  for (const auto& g : gens) {
    if (Model::dim(g) != d) throw std::invalid_argument("trace condition: dimension mismatch");
    model.validate_generator(g);
    if (!model.equal(Model::multiply(g, g), Model::identity(d)))
      throw std::invalid_argument("trace condition: generator is not an involution");
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!model.equal(Model::multiply(gens[i], gens[j]), Model::multiply(gens[j], gens[i])))
        throw std::invalid_argument("trace condition: generators do not commute");

  GroupClosure<Model> closure;
  closure.elements.push_back(Model::identity(d));
  closure.masks.push_back(0);
  std::uint32_t kept = 0;
  for (const auto& g : gens) {
    if (closure_contains(model, closure, g)) continue;
    const std::size_t size = closure.elements.size();
    for (std::size_t i = 0; i < size; ++i) {
      closure.elements.push_back(Model::multiply(g, closure.elements[i]));
      closure.masks.push_back(closure.masks[i] | (1u << kept));
    }
    ++kept;
  }
  if (closure.elements.size() != static_cast<std::size_t>(expected_order))
    throw std::invalid_argument("trace condition: generated group has order " +
                                std::to_string(closure.elements.size()) + ", expected " +
                                std::to_string(expected_order));
  return closure;
}

template <typename Model>
Eigen::MatrixXd closure_eigenbasis(const GroupClosure<Model>& closure, int d) {
  Eigen::MatrixXd basis(d, d);
  for (int eps = 0; eps < d; ++eps) {
    Eigen::MatrixXd projector = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < closure.elements.size(); ++i) {
      const double sign =
          (std::popcount(static_cast<std::uint32_t>(eps) & closure.masks[i]) & 1) ? -1.0 : 1.0;
      Model::accumulate(projector, closure.elements[i], sign / d);
    }
    basis.col(eps) = rank_one_unit_vector(projector, "trace_eigenbasis");
  }
  return basis;
}

template <typename Model>
TraceConditionReport check_trace_condition_impl(const Model& model,
                                                const std::vector<typename Model::Elem>& first_gens,
                                                const std::vector<typename Model::Elem>& second_gens,
                                                bool extract_bases) {
  if (first_gens.empty() || second_gens.empty())
    throw std::invalid_argument("trace condition: empty generator list");
  const int d = Model::dim(first_gens.front());
  if (Model::dim(second_gens.front()) != d)
    throw std::invalid_argument("trace condition: dimension mismatch between the two groups");
  const GroupClosure<Model> first = build_closure(model, first_gens, d);
  const GroupClosure<Model> second = build_closure(model, second_gens, d);

  TraceConditionReport report;
  for (std::size_t i = 0; i < first.elements.size(); ++i) {
    for (std::size_t j = 0; j < second.elements.size(); ++j) {
      if (i == 0 && j == 0) continue;  // the only allowed nonzero trace pair
      double trace = 0.0;
      if (!model.trace_is_zero(first.elements[i], second.elements[j], &trace)) {
        report.holds = false;
        if (report.violations.size() < kViolationCap)
          report.violations.push_back({static_cast<int>(i), static_cast<int>(j), trace});
      }
    }
  }

  if (report.holds && extract_bases) {
    report.first_basis = closure_eigenbasis(first, d);
    report.second_basis = closure_eigenbasis(second, d);
    report.bases_extracted = true;
    report.unbiased = check_unbiased({report.first_basis, report.second_basis});
  }
  return report;
}

bool is_power_of_two(std::uint32_t x) { return x != 0 && (x & (x - 1)) == 0; }

bool int_eq(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).cwiseAbs().maxCoeff() == 0;
}

std::string entry_location(std::uint32_t k, int i, int j) {
  return "matrix " + std::to_string(k + 1) + " entry (" + std::to_string(i) + "," +
         std::to_string(j) + ")";
}

}  // namespace

void set_check(HadamardFamily& family, const std::string& name, bool passed) {
  for (auto& item : family.checks) {
    if (item.first == name) {
      item.second = passed;
      return;
    }
  }
  family.checks.emplace_back(name, passed);
}

EigenBasis eigenbasis(const InducedRep& rep) {
  const FieldSpec& F = rep.field();
  const int d = rep.dim();
  const auto elements = SubgroupSpec::line_subgroup(rep.base_line()).elements(F);

  std::vector<SignedPermMatrix> mats;
  std::vector<std::uint32_t> coords;  // line coordinate of each element
  mats.reserve(elements.size());
  for (const GroupElement& x : elements) {
    mats.push_back(rep.matrix(x));
    coords.push_back(rep.coordinates(x.u).first.bits);
  }

  EigenBasis basis;
  basis.vectors.resize(d, d);
  basis.char_bits.resize(d);
  for (std::uint32_t eps = 0; eps < static_cast<std::uint32_t>(d); ++eps) {
    const FieldElement coeff = F.element(eps);
    Eigen::MatrixXd projector = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const double sign = F.trace_bit(F.mul_bits(coeff.bits, coords[i])) ? -1.0 : 1.0;
      mats[i].accumulate(projector, sign / d);
    }
    basis.vectors.col(eps) = rank_one_unit_vector(projector, "eigenbasis_rank");
    basis.char_bits[eps] = eps;
  }

  const double defect = (basis.vectors.transpose() * basis.vectors -
                         Eigen::MatrixXd::Identity(d, d))
                            .cwiseAbs()
                            .maxCoeff();
  if (defect > 1e-10)
    throw IntegrityError("eigenbasis_orthonormal",
                         "gram defect " + std::to_string(defect));
  return basis;
}

std::vector<Eigen::MatrixXd> power_basis(const Eigen::MatrixXd& d_matrix, const EigenBasis& basis,
                                         int q) {
  const int d = static_cast<int>(d_matrix.rows());
  if (d_matrix.cols() != d || basis.vectors.rows() != d || basis.vectors.cols() != d)
    throw std::invalid_argument("power basis: dimension mismatch");

  std::vector<Eigen::MatrixXd> out;
  out.reserve(q + 1);
  Eigen::MatrixXd cur = d_matrix;
  for (int k = 1; k <= q + 1; ++k) {
    out.push_back(basis.vectors.transpose() * cur * basis.vectors);
    if (k <= q) cur = cur * d_matrix;
  }

  const double inv_q = 1.0 / q;
  for (int k = 0; k < q; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const double e = out[k](i, j);
        if (std::abs(std::abs(e) - inv_q) > 1e-6)
          throw IntegrityError("power_entries", entry_location(k, i, j) + " is " +
                                                    std::to_string(e) +
                                                    ", expected +-1/q");
      }
    }
  }
  const double order_defect =
      (out.back() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (order_defect > 1e-8)
    throw IntegrityError("order", "power q+1 deviates from identity by " +
                                      std::to_string(order_defect));
  return out;
}

HadamardFamily exactify(const std::vector<Eigen::MatrixXd>& powers,
                        const FamilyManifest& manifest) {
  const std::uint32_t q = 1u << manifest.field.r;
  const std::uint32_t d = q * q;
  if (powers.size() < q) throw std::invalid_argument("exactify: expected at least q powers");

  HadamardFamily family;
  family.q = q;
  family.d = d;
  family.manifest = manifest;
  family.matrices.reserve(q);
  for (std::uint32_t k = 0; k < q; ++k) {
    const Eigen::MatrixXd& p = powers[k];
    if (p.rows() != static_cast<Eigen::Index>(d) || p.cols() != static_cast<Eigen::Index>(d))
      throw std::invalid_argument("exactify: power has wrong dimensions");
    IntMatrix m(d, d);
    for (std::uint32_t i = 0; i < d; ++i) {
      for (std::uint32_t j = 0; j < d; ++j) {
        const double scaled = q * p(i, j);
        const double nearest = std::round(scaled);
        if (std::abs(scaled - nearest) > 1e-6)
          throw IntegrityError("exactify_rounding",
                               entry_location(k, i, j) + ": " + std::to_string(scaled) +
                                   " is not within 1e-6 of an integer");
        m(i, j) = static_cast<std::int64_t>(nearest);
      }
    }
    family.matrices.push_back(std::move(m));
  }

  const Report report = verify_family_checks(family);
  for (const CheckResult& row : report) {
    if (!row.passed) throw IntegrityError(row.name, row.detail);
    set_check(family, row.name, row.passed);
  }
  return family;
}

Report verify_family_checks(const HadamardFamily& family) {
  Report report;
  const std::uint32_t q = family.q;
  const std::uint32_t d = family.d;

  {
    CheckResult row{"field_spec", true, ""};
    try {
      FieldSpec::make(family.manifest.field.r, family.manifest.field.modulus_bits,
                      family.manifest.field.generator_bits);
    } catch (const std::invalid_argument& e) {
      row.passed = false;
      row.detail = e.what();
    }
    report.push_back(row);
  }

  {
    bool ok = is_power_of_two(q) && family.manifest.field.r >= 1 &&
              q == (1u << family.manifest.field.r) && d == q * q &&
              family.matrices.size() == q;
    for (const IntMatrix& m : family.matrices)
      ok = ok && m.rows() == static_cast<int>(d) && m.cols() == static_cast<int>(d);
    report.push_back({"shape", ok,
                      "q=" + std::to_string(q) + " d=" + std::to_string(d) + " count=" +
                          std::to_string(family.matrices.size())});
    if (!ok) return report;  // remaining checks assume the shape
  }

  const std::int64_t qi = q;
  const IntMatrix id_scaled = IntMatrix::Identity(d, d) * (qi * qi);

  {
    CheckResult row{"entries", true, ""};
    for (std::uint32_t k = 0; k < q && row.passed; ++k)
      for (std::uint32_t i = 0; i < d && row.passed; ++i)
        for (std::uint32_t j = 0; j < d; ++j)
          if (family.matrices[k](i, j) != 1 && family.matrices[k](i, j) != -1) {
            row.passed = false;
            row.detail = entry_location(k, i, j) + " is not +-1";
            break;
          }
    report.push_back(row);
  }

  {
    CheckResult row{"gram", true, ""};
    for (std::uint32_t k = 0; k < q; ++k) {
      if (!int_eq(family.matrices[k] * family.matrices[k].transpose(), id_scaled)) {
        row.passed = false;
        row.detail = "matrix " + std::to_string(k + 1) + ": M M^T != q^2 I";
        break;
      }
    }
    report.push_back(row);
  }

  {
    CheckResult row{"diagonal", true, ""};
    for (std::uint32_t k = 0; k < q && row.passed; ++k)
      for (std::uint32_t i = 0; i < d; ++i)
        if (family.matrices[k](i, i) != -1) {
          row.passed = false;
          row.detail = "matrix " + std::to_string(k + 1) + " diagonal entry " +
                       std::to_string(i) + " is not -1";
          break;
        }
    report.push_back(row);
  }

  {
    CheckResult row{"power_law", true, ""};
    for (std::uint32_t k = 2; k <= q; ++k) {
      if (!int_eq(family.matrices[0] * family.matrices[k - 2], family.matrices[k - 1] * qi)) {
        row.passed = false;
        row.detail = "M_1 M_" + std::to_string(k - 1) + " != q M_" + std::to_string(k);
        break;
      }
    }
    report.push_back(row);
  }

  {
    const bool ok = int_eq(family.matrices[0] * family.matrices[q - 1], id_scaled);
    report.push_back({"order", ok, ok ? "" : "M_1 M_q != q^2 I"});
  }

  {
    CheckResult row{"transpose", true, ""};
    for (std::uint32_t k = 1; k <= q; ++k) {
      if (!int_eq(family.matrices[k - 1].transpose(), family.matrices[q - k])) {
        row.passed = false;
        row.detail = "M_" + std::to_string(k) + "^T != M_" + std::to_string(q + 1 - k);
        break;
      }
    }
    report.push_back(row);
  }

  {
    CheckResult row{"distinct", true, ""};
    for (std::uint32_t i = 0; i < q && row.passed; ++i)
      for (std::uint32_t j = i + 1; j < q; ++j)
        if (int_eq(family.matrices[i], family.matrices[j])) {
          row.passed = false;
          row.detail = "matrices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                       " coincide";
          break;
        }
    report.push_back(row);
  }

  {
    CheckResult row{"unbiased", true, ""};
    for (std::uint32_t i = 1; i < q && row.passed; ++i)
      for (std::uint32_t j = i + 1; j <= q; ++j)
        if (!int_eq(family.matrices[i - 1].transpose() * family.matrices[j - 1],
                    family.matrices[j - i - 1] * qi)) {
          row.passed = false;
          row.detail = "M_" + std::to_string(i) + "^T M_" + std::to_string(j) + " != q M_" +
                       std::to_string(j - i);
          break;
        }
    report.push_back(row);
  }

  return report;
}

UnbiasedReport check_unbiased(const std::vector<Eigen::MatrixXd>& bases, double entry_tol,
                              double orth_tol) {
  if (bases.size() < 2) throw std::invalid_argument("unbiased: need at least two bases");
  const int d = static_cast<int>(bases.front().rows());
  for (const Eigen::MatrixXd& b : bases) {
    if (b.rows() != d || b.cols() != d)
      throw std::invalid_argument("unbiased: bases must be square of equal dimension");
    const double defect =
        (b.transpose() * b - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > orth_tol)
      throw std::invalid_argument("unbiased: basis is not orthonormal (defect " +
                                  std::to_string(defect) + ")");
  }

  UnbiasedReport report;
  const double target = 1.0 / d;
  for (std::size_t a = 0; a < bases.size(); ++a) {
    for (std::size_t b = a + 1; b < bases.size(); ++b) {
      const Eigen::MatrixXd gram = bases[a].transpose() * bases[b];
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const double sq = gram(i, j) * gram(i, j);
          if (std::abs(sq - target) > entry_tol) {
            report.all_unbiased = false;
            if (report.violations.size() < kViolationCap)
              report.violations.push_back(
                  {static_cast<int>(a), static_cast<int>(b), i, j, sq});
          }
        }
      }
    }
  }
  return report;
}

TraceConditionReport check_trace_condition(const std::vector<SignedPermMatrix>& first_gens,
                                           const std::vector<SignedPermMatrix>& second_gens,
                                           bool extract_bases) {
  return check_trace_condition_impl(SparseModel{}, first_gens, second_gens, extract_bases);
}

TraceConditionReport check_trace_condition(const std::vector<Eigen::MatrixXd>& first_gens,
                                           const std::vector<Eigen::MatrixXd>& second_gens,
                                           bool extract_bases, double tol) {
  return check_trace_condition_impl(DenseModel{tol}, first_gens, second_gens, extract_bases);
}

int fixed_space_dimension(const std::vector<Eigen::MatrixXd>& nontrivial_powers) {
  const int q = static_cast<int>(nontrivial_powers.size());
  if (q < 2) throw std::invalid_argument("fixed space: expected the q nontrivial powers");
  const int d = q * q;
  for (const Eigen::MatrixXd& p : nontrivial_powers)
    if (p.rows() != d || p.cols() != d)
      throw std::invalid_argument("fixed space: power has wrong dimensions");

  double sum = static_cast<double>(d);  // identity contributes its trace
  for (int k = 0; k < q; ++k) {
    const double t = nontrivial_powers[k].trace();
    if (std::abs(t) > q + 1e-6)
      throw IntegrityError("trace_bound", "power " + std::to_string(k + 1) + " has trace " +
                                              std::to_string(t) + ", outside [-q, q]");
    sum += t;
  }

  const double dim = sum / (q + 1);
  const double nearest = std::round(dim);
  if (std::abs(dim - nearest) > 1e-6)
    throw IntegrityError("fixed_space_integral",
                         "dimension " + std::to_string(dim) + " is not an integer");
  if (nearest < 0 || nearest > 2 * q - 2)
    throw IntegrityError("fixed_space_bound", "dimension " + std::to_string(nearest) +
                                                  " outside [0, 2q-2]");
  return static_cast<int>(nearest);
}

}  // namespace mubforge
