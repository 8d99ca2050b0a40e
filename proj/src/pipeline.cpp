#include "mubforge/pipeline.hpp"

#include <string>

namespace mubforge {

namespace {

void add_row(Report& report, const std::string& name, bool passed, const std::string& detail) {
  report.push_back({name, passed, detail});
  if (!passed) throw IntegrityError(name, detail);
}

}  // namespace

GenerateOutcome generate_family(const GenerateOptions& options) {
  GenerateOutcome outcome;
  Report& report = outcome.report;

  const FieldPtr F = FieldSpec::make(options.r);
  const std::uint64_t q = F->q();
  const int qi = static_cast<int>(q);

  {
    const std::size_t isotropic = isotropic_vectors(*F).size();
    const std::uint64_t expected = q * q * q + q * q - q;
    add_row(report, "isotropic_count", isotropic == expected,
            "expected " + std::to_string(expected) + ", got " + std::to_string(isotropic));
    const std::size_t lines = isotropic_lines(*F).size();
    add_row(report, "line_count", lines == q + 1,
            "expected " + std::to_string(q + 1) + ", got " + std::to_string(lines));
  }

  const InducedRep rep = InducedRep::standard(F);
  const Isometry sigma = cyclic_isometry(*F);

  AveragingOptions avg;
  avg.threads = options.threads;

  // average_intertwiner verifies the intertwining residual internally.
  const Eigen::MatrixXd d0 = average_intertwiner(rep, sigma, options.seed, avg);
  add_row(report, "intertwining", true, "residual within 1e-9 of max entry on 100 elements");

  outcome.intertwiner = normalize_intertwiner(d0, qi);
  const Eigen::MatrixXd& D = outcome.intertwiner;
  const int d = rep.dim();

  {
    const double defect =
        (D * D.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    add_row(report, "orthogonality", defect <= 1e-10, "defect " + std::to_string(defect));
  }

  {
    // Multiplicative order must be exactly q + 1: the top power returns to
    // the identity and no earlier power comes near it.
    Eigen::MatrixXd cur = D;
    bool minimal = true;
    for (int k = 1; k <= qi; ++k) {
      if ((cur - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 0.5) minimal = false;
      cur = cur * D;
    }
    const double defect = (cur - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    add_row(report, "order_float", defect <= 1e-8 && minimal,
            "power q+1 defect " + std::to_string(defect) +
                (minimal ? "" : ", smaller power near identity"));
  }

  if (options.certify) {
    const Report rows = certify_uniqueness(rep, sigma, D, {1, 2, 3}, avg);
    bool ok = true;
    std::string detail;
    for (const CheckResult& row : rows) {
      ok = ok && row.passed;
      if (!row.passed) detail = row.name + ": " + row.detail;
    }
    add_row(report, "uniqueness", ok, ok ? "three seeds agree within 1e-8" : detail);
  }

  outcome.basis = eigenbasis(rep);
  add_row(report, "eigenbasis", true, "rank-one projectors, orthonormal within 1e-10");

  outcome.powers = power_basis(D, outcome.basis, qi);
  add_row(report, "power_entries", true, "entries within 1e-6 of +-1/q");

  {
    const std::vector<Eigen::MatrixXd> nontrivial(outcome.powers.begin(),
                                                  outcome.powers.begin() + qi);
    const int fixed_dim = fixed_space_dimension(nontrivial);
    add_row(report, "fixed_space_trivial", fixed_dim == 0,
            "dimension " + std::to_string(fixed_dim));
  }

  {
    // Trace criterion for the base-line subgroup against each of its
    // isometry twists: generators are the images of a basis of the line
    // subgroup, twisted generators their sigma^j images.
    std::vector<SignedPermMatrix> base_gens;
    const Vec2 u0 = rep.base_vector();
    for (std::uint32_t b = 1; b < F->order(); b <<= 1)
      base_gens.push_back(rep.matrix({scale(F->element(b), u0), F->zero()}));

    bool all_hold = true;
    std::string detail = "all " + std::to_string(q) + " twists";
    Isometry twist = sigma;
    for (std::uint64_t j = 1; j <= q && all_hold; ++j) {
      std::vector<SignedPermMatrix> twisted;
      twisted.reserve(base_gens.size());
      for (std::uint32_t b = 1; b < F->order(); b <<= 1) {
        const GroupElement x{scale(F->element(b), u0), F->zero()};
        twisted.push_back(rep.matrix(apply_isometry(twist, x)));
      }
      const TraceConditionReport tr = check_trace_condition(base_gens, twisted, false);
      if (!tr.holds) {
        all_hold = false;
        detail = "violation at twist " + std::to_string(j);
      }
      twist = compose(sigma, twist);
    }
    add_row(report, "trace_condition", all_hold, detail);
  }

  FamilyManifest manifest;
  manifest.field = {F->r(), F->modulus_bits(), F->generator_bits()};
  manifest.seed = options.seed;
  manifest.base_c1 = rep.base_line().rep.c1.bits;
  manifest.base_c2 = rep.base_line().rep.c2.bits;

  // exactify runs every exact family check, throws on failure, and stores
  // the verdicts; fold them into the pipeline report and store the full
  // report with the family.
  outcome.family = exactify(outcome.powers, manifest);
  for (const auto& [name, passed] : outcome.family.checks) report.push_back({name, passed, ""});

  outcome.family.checks.clear();
  for (const CheckResult& row : report)
    outcome.family.checks.emplace_back(row.name, row.passed);

  return outcome;
}

}  // namespace mubforge
