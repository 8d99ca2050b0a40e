#include "mubforge/commands.hpp"

#include <iomanip>
#include <ostream>

#include "mubforge/pipeline.hpp"

namespace mubforge {

namespace {

void print_report(const Report& report, std::ostream& out) {
  for (const CheckResult& row : report) {
    out << (row.passed ? "ok    " : "FAIL  ") << std::left << std::setw(24) << row.name;
    if (!row.detail.empty()) out << "  " << row.detail;
    out << "\n";
  }
}

}  // namespace

int run_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.r < 1 || cfg.r > 4) {
    err << "generate: --r must be in 1..4\n";
    return kExitUsage;
  }
  if (cfg.r == 4 && !cfg.allow_long) {
    err << "generate: r=4 averages 65536 group terms (minutes of CPU); pass --allow-long\n";
    return kExitUsage;
  }
  if (cfg.r == 4)
    err << "warning: r=4 generation is expensive; expect minutes on a single core\n";

  try {
    GenerateOptions options;
    options.r = cfg.r;
    options.seed = cfg.seed;
    options.reproducible = cfg.reproducible;

    const GenerateOutcome outcome = generate_family(options);
    print_report(outcome.report, out);
    save_family(outcome.family, cfg.out_path, cfg.format);
    out << "wrote " << cfg.out_path << " (" << outcome.family.matrices.size() << " matrices of size "
        << outcome.family.d << "x" << outcome.family.d << ")\n";
    return all_passed(outcome.report) ? kExitOk : kExitCheckFailed;
  } catch (const IntegrityError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  HadamardFamily family;
  try {
    family = load_family(cfg.in_path);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  }

  const Report report = verify_family_checks(family);
  print_report(report, out);
  for (const CheckResult& row : report) {
    if (!row.passed) {
      err << "check failed: " << row.name << (row.detail.empty() ? "" : ": " + row.detail)
          << "\n";
      return kExitCheckFailed;
    }
  }
  out << "family ok: q=" << family.q << " d=" << family.d << "\n";
  return kExitOk;
}

int run_check_theory(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.r < 1 || cfg.r > 3) {
    err << "check-theory: --r must be in 1..3\n";
    return kExitUsage;
  }

  try {
    const FieldPtr F = FieldSpec::make(cfg.r);
    const std::uint64_t q = F->q();
    Report report;

    out << "field: q=" << q << " d=" << q * q << " modulus_bits=" << F->modulus_bits()
        << " mu_bits=" << F->generator_bits() << "\n";

    {
      const std::uint64_t expected = q * q * q + q * q - q;
      const std::size_t actual = isotropic_vectors(*F).size();
      report.push_back({"isotropic_vectors", actual == expected,
                        "expected " + std::to_string(expected) + ", got " +
                            std::to_string(actual)});
    }
    const auto lines = isotropic_lines(*F);
    report.push_back({"isotropic_lines", lines.size() == q + 1,
                      "expected " + std::to_string(q + 1) + ", got " +
                          std::to_string(lines.size())});

    {
      const std::uint32_t order = multiplicative_order(F->norm_one_generator());
      report.push_back({"norm_one_order", order == q + 1,
                        "expected " + std::to_string(q + 1) + ", got " + std::to_string(order)});
    }

    const Isometry sigma = cyclic_isometry(*F);
    {
      const auto is_identity = [&](const Isometry& s) {
        return s.a == F->one() && s.d == F->one() && is_zero(s.b) && is_zero(s.c);
      };
      Isometry power = sigma;
      bool early_identity = false;
      for (std::uint64_t j = 1; j <= q; ++j) {
        if (is_identity(power)) early_identity = true;
        power = compose(sigma, power);
      }
      report.push_back({"isometry_order", !early_identity && is_identity(power),
                        "sigma^(q+1) = id and no smaller power is"});

      // Orbit of the base line under sigma^0..sigma^q must hit every line.
      std::vector<bool> seen(lines.size(), false);
      std::size_t hit = 0;
      Isometry p = identity_isometry(*F);
      for (std::uint64_t j = 0; j <= q; ++j) {
        const Vec2 moved = p.apply(lines.front().rep);
        for (std::size_t i = 0; i < lines.size(); ++i) {
          if (!seen[i] && line_contains(*F, lines[i], moved)) {
            seen[i] = true;
            ++hit;
            break;
          }
        }
        p = compose(sigma, p);
      }
      report.push_back({"line_transitivity", hit == lines.size(),
                        "orbit of the base line hits " + std::to_string(hit) + " of " +
                            std::to_string(lines.size()) + " lines"});
    }

    {
      const GroupElement central{{F->zero(), F->zero()}, F->element(1)};
      const std::uint64_t c0 = centralizer_order(*F, central);
      report.push_back({"centralizer_central", c0 == group_order(*F),
                        "expected " + std::to_string(group_order(*F)) + ", got " +
                            std::to_string(c0)});
      const std::uint64_t q5 = q * q * q * q * q;
      const GroupElement line_elem{lines.front().rep, F->zero()};
      const std::uint64_t c1 = centralizer_order(*F, line_elem);
      report.push_back({"centralizer_noncentral", c1 == q5,
                        "expected " + std::to_string(q5) + ", got " + std::to_string(c1)});
    }

    {
      // The non-isotropic span subgroup: involution count, centralizer of a
      // non-central element inside it, its center, and its derived set.
      const Vec2 e2{F->zero(), F->one()};
      const SubgroupSpec span = SubgroupSpec::span_with_center(e2);
      const auto elems = span.elements(*F);
      const GroupElement id = group_identity(*F);

      std::uint64_t involutions = 0;
      for (const GroupElement& x : elems)
        if (!(x == id) && gmul(x, x) == id) ++involutions;
      report.push_back({"span_involutions", involutions == q * q - 1,
                        "expected " + std::to_string(q * q - 1) + ", got " +
                            std::to_string(involutions)});

      const GroupElement noncentral{e2, F->zero()};
      const std::uint64_t c = centralizer_order_in(elems, noncentral);
      const std::uint64_t q3 = q * q * q;
      report.push_back({"span_centralizer", c == q3,
                        "expected " + std::to_string(q3) + ", got " + std::to_string(c)});

      std::uint64_t central_members = 0;
      bool center_matches = true;
      for (const GroupElement& x : elems) {
        if (centralizer_order_in(elems, x) == elems.size()) {
          ++central_members;
          center_matches = center_matches && is_central(x);
        }
      }
      report.push_back({"span_center", center_matches && central_members == q * q,
                        "center of the span subgroup is the group center"});

      std::vector<bool> seen(F->order(), false);
      std::uint64_t commutators = 0;
      for (const GroupElement& x : elems)
        for (const GroupElement& y : elems) {
          const GroupElement com = commutator(x, y);
          if (!seen[com.a.bits]) {
            seen[com.a.bits] = true;
            ++commutators;
          }
        }
      const auto derived = SubgroupSpec::derived().elements(*F);
      bool derived_ok = commutators == derived.size();
      for (const GroupElement& z : derived)
        derived_ok = derived_ok && seen[z.a.bits];
      report.push_back({"span_derived", derived_ok,
                        "commutator values fill the derived subgroup of order " +
                            std::to_string(derived.size())});
    }

    const InducedRep rep = InducedRep::standard(F);
    const Report counting = run_counting_checks(rep);
    report.insert(report.end(), counting.begin(), counting.end());

    print_report(report, out);
    for (const CheckResult& row : report) {
      if (!row.passed) {
        err << "check failed: " << row.name << (row.detail.empty() ? "" : ": " + row.detail)
            << "\n";
        return kExitCheckFailed;
      }
    }
    return kExitOk;
  } catch (const IntegrityError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace mubforge
