#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mubforge/commands.hpp"
#include "mubforge/pipeline.hpp"

namespace py = pybind11;
using namespace mubforge;

namespace {

py::dict checks_dict(const std::vector<std::pair<std::string, bool>>& checks) {
  py::dict out;
  for (const auto& [name, passed] : checks) out[py::str(name)] = passed;
  return out;
}

py::array_t<std::int64_t> matrices_array(const HadamardFamily& family) {
  const auto q = static_cast<py::ssize_t>(family.matrices.size());
  const auto d = static_cast<py::ssize_t>(family.d);
  py::array_t<std::int64_t> out({q, d, d});
  auto view = out.mutable_unchecked<3>();
  for (py::ssize_t k = 0; k < q; ++k)
    for (py::ssize_t i = 0; i < d; ++i)
      for (py::ssize_t j = 0; j < d; ++j) view(k, i, j) = family.matrices[k](i, j);
  return out;
}

HadamardFamily family_from_array(py::array_t<std::int64_t, py::array::c_style> matrices,
                                 const HadamardFamily& like) {
  HadamardFamily out = like;
  out.matrices.clear();
  const auto view = matrices.unchecked<3>();
  for (py::ssize_t k = 0; k < view.shape(0); ++k) {
    IntMatrix m(view.shape(1), view.shape(2));
    for (py::ssize_t i = 0; i < view.shape(1); ++i)
      for (py::ssize_t j = 0; j < view.shape(2); ++j) m(i, j) = view(k, i, j);
    out.matrices.push_back(std::move(m));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Families of real unbiased Hadamard matrices from powers of one orthogonal matrix";

  py::register_exception<IntegrityError>(m, "IntegrityError");
  py::register_exception<ParseError>(m, "FamilyParseError");
  py::register_exception<IoError>(m, "FamilyIoError");

  py::class_<HadamardFamily>(m, "Family")
      .def_property_readonly("q", [](const HadamardFamily& f) { return f.q; })
      .def_property_readonly("d", [](const HadamardFamily& f) { return f.d; })
      .def_property_readonly("seed", [](const HadamardFamily& f) { return f.manifest.seed; })
      .def_property_readonly("r", [](const HadamardFamily& f) { return f.manifest.field.r; })
      .def_property_readonly("checks", [](const HadamardFamily& f) { return checks_dict(f.checks); })
      .def_property_readonly("matrices", &matrices_array,
                             "Sign matrices as an int64 array of shape (q, d, d)")
      .def("to_json", [](const HadamardFamily& f) { return to_json_string(f); })
      .def("to_text", [](const HadamardFamily& f) { return to_text_string(f); })
      .def(
          "save",
          [](const HadamardFamily& f, const std::string& path, const std::string& format) {
            if (format != "json" && format != "text")
              throw std::invalid_argument("format must be 'json' or 'text', got '" + format + "'");
            save_family(f, path, format == "text" ? FamilyFormat::text : FamilyFormat::json);
          },
          py::arg("path"), py::arg("format") = "json")
      .def("verify",
           [](const HadamardFamily& f) {
             py::dict out;
             for (const CheckResult& row : verify_family_checks(f))
               out[py::str(row.name)] = row.passed;
             return out;
           })
      .def("__repr__", [](const HadamardFamily& f) {
        return "<Family q=" + std::to_string(f.q) + " d=" + std::to_string(f.d) + " seed=" +
               std::to_string(f.manifest.seed) + ">";
      });

  m.def(
      "generate",
      [](int r, std::uint64_t seed, bool reproducible, int threads, bool certify) {
        GenerateOptions options;
        options.r = r;
        options.seed = seed;
        options.reproducible = reproducible;
        options.threads = threads;
        options.certify = certify;
        return generate_family(options).family;
      },
      py::arg("r"), py::arg("seed") = 42, py::arg("reproducible") = false,
      py::arg("threads") = 0, py::arg("certify") = true,
      "Construct and fully verify a family for GF(q^2), q = 2^r");

  m.def("load_family", &load_family, py::arg("path"));

  m.def(
      "verify_family",
      [](const std::string& path) {
        py::dict out;
        for (const CheckResult& row : verify_family_checks(load_family(path)))
          out[py::str(row.name)] = row.passed;
        return out;
      },
      py::arg("path"), "Exact integer re-verification of a family file");

  m.def(
      "theory_report",
      [](int r) {
        const FieldPtr F = FieldSpec::make(r);
        const InducedRep rep = InducedRep::standard(F);
        py::list rows;
        for (const CheckResult& row : run_counting_checks(rep)) {
          py::dict item;
          item["name"] = row.name;
          item["passed"] = row.passed;
          item["detail"] = row.detail;
          rows.append(item);
        }
        return rows;
      },
      py::arg("r"), "Character-theoretic consistency checks for GF(q^2), q = 2^r");

  m.def(
      "field_info",
      [](int r) {
        const FieldPtr F = FieldSpec::make(r);
        py::dict out;
        out["r"] = F->r();
        out["q"] = F->q();
        out["order"] = F->order();
        out["modulus_bits"] = F->modulus_bits();
        out["mu_bits"] = F->generator_bits();
        out["norm_one_bits"] = F->norm_one_generator().bits;
        return out;
      },
      py::arg("r"), "Canonical field constants for GF(q^2), q = 2^r");

  m.def("rebuild_family", &family_from_array, py::arg("matrices"), py::arg("like"),
        "Family with the metadata of `like` and the given sign matrices");
}
