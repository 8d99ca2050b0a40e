#include "mubforge/family_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mubforge {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t require_uint(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw ParseError(std::string("family: missing or non-integer field '") + key + "'");
  return j[key].get<std::uint64_t>();
}

}  // namespace

std::string to_json_string(const HadamardFamily& family) {
  ordered_json j;
  j["q"] = family.q;
  j["d"] = family.d;
  j["field"] = {{"r", family.manifest.field.r},
                {"modulus_bits", family.manifest.field.modulus_bits},
                {"mu_bits", family.manifest.field.generator_bits}};
  j["seed"] = family.manifest.seed;
  j["base_line"] = {family.manifest.base_c1, family.manifest.base_c2};
  ordered_json checks = ordered_json::object();
  for (const auto& [name, passed] : family.checks) checks[name] = passed;
  j["checks"] = checks;
  ordered_json matrices = ordered_json::array();
  for (const IntMatrix& m : family.matrices) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  j["matrices"] = std::move(matrices);
  return j.dump(2) + "\n";
}

std::string to_text_string(const HadamardFamily& family) {
  std::ostringstream out;
  out << "q " << family.q << "\n";
  out << "d " << family.d << "\n";
  out << "r " << family.manifest.field.r << "\n";
  out << "modulus_bits " << family.manifest.field.modulus_bits << "\n";
  out << "mu_bits " << family.manifest.field.generator_bits << "\n";
  out << "seed " << family.manifest.seed << "\n";
  out << "base_line " << family.manifest.base_c1 << " " << family.manifest.base_c2 << "\n";
  for (const auto& [name, passed] : family.checks)
    out << "check " << name << " " << (passed ? 1 : 0) << "\n";
  for (std::size_t k = 0; k < family.matrices.size(); ++k) {
    out << "matrix " << (k + 1) << "\n";
    const IntMatrix& m = family.matrices[k];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const std::int64_t e = m(i, j);
        if (e != 1 && e != -1)
          throw std::invalid_argument("family: text format requires +-1 entries");
        out << (e == 1 ? '+' : '-');
      }
      out << "\n";
    }
  }
  return out.str();
}

HadamardFamily family_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("family: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("family: top level is not an object");

  HadamardFamily family;
  family.q = static_cast<std::uint32_t>(require_uint(j, "q"));
  family.d = static_cast<std::uint32_t>(require_uint(j, "d"));
  family.manifest.seed = require_uint(j, "seed");

  if (!j.contains("field") || !j["field"].is_object())
    throw ParseError("family: missing field object");
  const ordered_json& f = j["field"];
  family.manifest.field.r = static_cast<int>(require_uint(f, "r"));
  family.manifest.field.modulus_bits = static_cast<std::uint32_t>(require_uint(f, "modulus_bits"));
  family.manifest.field.generator_bits = static_cast<std::uint32_t>(require_uint(f, "mu_bits"));

  if (!j.contains("base_line") || !j["base_line"].is_array() || j["base_line"].size() != 2 ||
      !j["base_line"][0].is_number_unsigned() || !j["base_line"][1].is_number_unsigned())
    throw ParseError("family: base_line must be a pair of encodings");
  family.manifest.base_c1 = j["base_line"][0].get<std::uint32_t>();
  family.manifest.base_c2 = j["base_line"][1].get<std::uint32_t>();

  if (!j.contains("checks") || !j["checks"].is_object())
    throw ParseError("family: missing checks object");
  for (const auto& [name, value] : j["checks"].items()) {
    if (!value.is_boolean()) throw ParseError("family: check '" + name + "' is not boolean");
    family.checks.emplace_back(name, value.get<bool>());
  }

  if (!j.contains("matrices") || !j["matrices"].is_array())
    throw ParseError("family: missing matrices array");
  for (const ordered_json& rows : j["matrices"]) {
    if (!rows.is_array() || rows.empty()) throw ParseError("family: matrix is not an array");
    const std::size_t d = rows.size();
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const ordered_json& row = rows[i];
      if (!row.is_array() || row.size() != d)
        throw ParseError("family: matrix rows must be square");
      for (std::size_t k = 0; k < d; ++k) {
        if (!row[k].is_number_integer())
          throw ParseError("family: matrix entries must be integers");
        m(i, k) = row[k].get<std::int64_t>();
      }
    }
    family.matrices.push_back(std::move(m));
  }
  return family;
}

HadamardFamily family_from_text(const std::string& text) {
  std::istringstream in(text);
  HadamardFamily family;
  bool have_q = false, have_d = false, have_r = false, have_mod = false, have_mu = false,
       have_seed = false, have_base = false;

  std::string line;
  std::vector<std::string> sign_rows;
  bool in_matrices = false;
  auto flush_matrix = [&]() {
    if (sign_rows.empty()) return;
    const std::size_t d = sign_rows.size();
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (sign_rows[i].size() != d)
        throw ParseError("family: sign row has wrong length");
      for (std::size_t j = 0; j < d; ++j) {
        const char c = sign_rows[i][j];
        if (c != '+' && c != '-') throw ParseError("family: sign rows must use + and -");
        m(i, j) = c == '+' ? 1 : -1;
      }
    }
    family.matrices.push_back(std::move(m));
    sign_rows.clear();
  };

  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;

    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "matrix") {
      flush_matrix();
      in_matrices = true;
      continue;
    }
    if (in_matrices) {
      if (line.find_first_not_of("+-") != std::string::npos)
        throw ParseError("family: unexpected line inside matrix block: " + line);
      sign_rows.push_back(line);
      continue;
    }

    auto read_u64 = [&ls, &key]() {
      // istream extraction wraps negative input into unsigned; parse the raw
      // token instead so "-1" is rejected like it is on the JSON side.
      std::string tok;
      if (!(ls >> tok)) throw ParseError("family: bad value for '" + key + "'");
      std::uint64_t v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw ParseError("family: bad value for '" + key + "'");
      return v;
    };
    if (key == "q") {
      family.q = static_cast<std::uint32_t>(read_u64());
      have_q = true;
    } else if (key == "d") {
      family.d = static_cast<std::uint32_t>(read_u64());
      have_d = true;
    } else if (key == "r") {
      family.manifest.field.r = static_cast<int>(read_u64());
      have_r = true;
    } else if (key == "modulus_bits") {
      family.manifest.field.modulus_bits = static_cast<std::uint32_t>(read_u64());
      have_mod = true;
    } else if (key == "mu_bits") {
      family.manifest.field.generator_bits = static_cast<std::uint32_t>(read_u64());
      have_mu = true;
    } else if (key == "seed") {
      family.manifest.seed = read_u64();
      have_seed = true;
    } else if (key == "base_line") {
      family.manifest.base_c1 = static_cast<std::uint32_t>(read_u64());
      family.manifest.base_c2 = static_cast<std::uint32_t>(read_u64());
      have_base = true;
    } else if (key == "check") {
      std::string name;
      std::uint64_t flag = 0;
      if (!(ls >> name >> flag) || flag > 1)
        throw ParseError("family: bad check line: " + line);
      family.checks.emplace_back(name, flag == 1);
    } else {
      throw ParseError("family: unknown header key '" + key + "'");
    }
  }
  flush_matrix();

  if (!(have_q && have_d && have_r && have_mod && have_mu && have_seed && have_base))
    throw ParseError("family: incomplete header");
  if (family.matrices.empty()) throw ParseError("family: no matrices");
  return family;
}

HadamardFamily load_family(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  const std::string text = buf.str();

  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("family: empty file");
  return text[first] == '{' ? family_from_json(text) : family_from_text(text);
}

void save_family(const HadamardFamily& family, const std::string& path, FamilyFormat format) {
  const std::string payload =
      format == FamilyFormat::json ? to_json_string(family) : to_text_string(family);

  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << payload;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failure on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ec2;
    fs::remove(tmp, ec2);
    throw IoError("cannot move family into place at '" + path + "': " + ec.message());
  }
}

}  // namespace mubforge
