#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mubforge/commands.hpp"
#include "mubforge/family_io.hpp"
#include "mubforge/pipeline.hpp"

using namespace mubforge;

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "mubforge_io_tests";
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

HadamardFamily small_family() {
  GenerateOptions opt;
  opt.r = 1;
  opt.certify = false;
  return generate_family(opt).family;
}

bool families_equal(const HadamardFamily& a, const HadamardFamily& b) {
  if (a.q != b.q || a.d != b.d || a.manifest.seed != b.manifest.seed) return false;
  if (a.manifest.field.r != b.manifest.field.r ||
      a.manifest.field.modulus_bits != b.manifest.field.modulus_bits ||
      a.manifest.field.generator_bits != b.manifest.field.generator_bits)
    return false;
  if (a.manifest.base_c1 != b.manifest.base_c1 || a.manifest.base_c2 != b.manifest.base_c2)
    return false;
  if (a.checks != b.checks || a.matrices.size() != b.matrices.size()) return false;
  for (std::size_t k = 0; k < a.matrices.size(); ++k)
    if ((a.matrices[k] - b.matrices[k]).cwiseAbs().maxCoeff() != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("serialization round-trips and is byte deterministic") {
  HadamardFamily family = small_family();

  const std::string json = to_json_string(family);
  CHECK(json == to_json_string(family));
  HadamardFamily from_json = family_from_json(json);
  CHECK(families_equal(family, from_json));
  CHECK(to_json_string(from_json) == json);

  const std::string text = to_text_string(family);
  CHECK(text == to_text_string(family));
  HadamardFamily from_text = family_from_text(text);
  CHECK(families_equal(family, from_text));
  CHECK(to_text_string(from_text) == text);

  // cross-format: parse one, emit the other, parse back
  CHECK(families_equal(family_from_text(to_text_string(from_json)), family));
}

TEST_CASE("text emission requires sign entries") {
  HadamardFamily family = small_family();
  family.matrices[0](1, 2) = 7;
  CHECK_THROWS_AS(to_text_string(family), std::invalid_argument);
}

TEST_CASE("json parser rejects malformed documents") {
  HadamardFamily family = small_family();
  const std::string json = to_json_string(family);

  CHECK_THROWS_AS(family_from_json(json.substr(0, json.size() / 2)), ParseError);
  CHECK_THROWS_AS(family_from_json("[]"), ParseError);
  CHECK_THROWS_AS(family_from_json("{\"q\": \"two\"}"), ParseError);
  CHECK_THROWS_AS(family_from_json("{\"q\": 2}"), ParseError);  // missing keys

  // checks must be booleans
  std::string tweaked = json;
  auto pos = tweaked.find("true");
  tweaked.replace(pos, 4, "\"yes\"");
  CHECK_THROWS_AS(family_from_json(tweaked), ParseError);

  // matrices must be square arrays of integers
  std::string fragment = R"({"q": 2, "d": 4,
    "field": {"r": 1, "modulus_bits": 7, "mu_bits": 2},
    "seed": 42, "base_line": [1, 1], "checks": {},
    "matrices": [[[1, -1], [1]]]})";
  CHECK_THROWS_AS(family_from_json(fragment), ParseError);
}

TEST_CASE("text parser rejects malformed documents") {
  HadamardFamily family = small_family();
  const std::string text = to_text_string(family);

  CHECK_THROWS_AS(family_from_text(""), ParseError);
  CHECK_THROWS_AS(family_from_text("q 2\nd 4\n"), ParseError);  // incomplete header
  CHECK_THROWS_AS(family_from_text("who knows\n"), ParseError);

  std::string bad_sign = text;
  bad_sign[bad_sign.find("\n+") + 1] = '*';
  CHECK_THROWS_AS(family_from_text(bad_sign), ParseError);

  // ragged sign row
  std::string ragged = text;
  ragged.insert(ragged.find("\n+") + 1, "+");
  CHECK_THROWS_AS(family_from_text(ragged), ParseError);

  // negative header value must not wrap into an unsigned encoding
  std::string negative = text;
  const std::size_t base = negative.find("base_line 1 1");
  REQUIRE(base != std::string::npos);
  negative.replace(base, 13, "base_line 1 -1");
  CHECK_THROWS_AS(family_from_text(negative), ParseError);
}

TEST_CASE("save and load through files, sniffing the format") {
  HadamardFamily family = small_family();
  const fs::path jpath = work_dir() / "roundtrip.json";
  const fs::path tpath = work_dir() / "roundtrip.txt";

  save_family(family, jpath.string(), FamilyFormat::json);
  save_family(family, tpath.string(), FamilyFormat::text);
  CHECK(families_equal(load_family(jpath.string()), family));
  CHECK(families_equal(load_family(tpath.string()), family));
  CHECK(read_file(jpath).front() == '{');
  CHECK(read_file(tpath).substr(0, 2) == "q ");

  // no temporary file lingers
  CHECK_FALSE(fs::exists(jpath.string() + ".tmp"));

  CHECK_THROWS_AS(load_family((work_dir() / "absent.json").string()), IoError);
  CHECK_THROWS_AS(save_family(family, "/nonexistent-dir/family.json", FamilyFormat::json),
                  IoError);

  const fs::path empty = work_dir() / "empty.json";
  std::ofstream(empty).close();
  CHECK_THROWS_AS(load_family(empty.string()), ParseError);
}

TEST_CASE("generate command writes a verifiable family") {
  const fs::path out = work_dir() / "cmd.json";
  RunConfig cfg;
  cfg.r = 1;
  cfg.out_path = out.string();

  std::ostringstream log, err;
  CHECK(run_generate(cfg, log, err) == kExitOk);
  CHECK(log.str().find("wrote ") != std::string::npos);
  CHECK(fs::exists(out));

  RunConfig vcfg;
  vcfg.in_path = out.string();
  std::ostringstream vlog, verr;
  CHECK(run_verify(vcfg, vlog, verr) == kExitOk);
  CHECK(vlog.str().find("family ok") != std::string::npos);
}

TEST_CASE("generate command rejects bad parameters") {
  std::ostringstream log, err;
  RunConfig cfg;
  cfg.r = 9;
  cfg.out_path = (work_dir() / "never.json").string();
  CHECK(run_generate(cfg, log, err) == kExitUsage);

  RunConfig gated;
  gated.r = 4;
  gated.out_path = (work_dir() / "never.json").string();
  std::ostringstream log2, err2;
  CHECK(run_generate(gated, log2, err2) == kExitUsage);
  CHECK(err2.str().find("--allow-long") != std::string::npos);

  RunConfig nowrite;
  nowrite.r = 1;
  nowrite.out_path = "/nonexistent-dir/family.json";
  std::ostringstream log3, err3;
  CHECK(run_generate(nowrite, log3, err3) == kExitIo);
}

TEST_CASE("verify command distinguishes failure modes") {
  HadamardFamily family = small_family();

  // corrupted family: flip one sign
  HadamardFamily broken = family;
  broken.matrices[0](0, 1) = -broken.matrices[0](0, 1);
  const fs::path bad = work_dir() / "broken.json";
  save_family(broken, bad.string(), FamilyFormat::json);
  RunConfig cfg;
  cfg.in_path = bad.string();
  std::ostringstream log, err;
  CHECK(run_verify(cfg, log, err) == kExitCheckFailed);
  CHECK_FALSE(err.str().empty());

  // unparsable file
  const fs::path garbled = work_dir() / "garbled.json";
  std::ofstream(garbled) << "{ \"q\": 2, ";
  RunConfig pcfg;
  pcfg.in_path = garbled.string();
  std::ostringstream plog, perr;
  CHECK(run_verify(pcfg, plog, perr) == kExitParse);

  // unreadable file
  RunConfig mcfg;
  mcfg.in_path = (work_dir() / "not-there.json").string();
  std::ostringstream mlog, merr;
  CHECK(run_verify(mcfg, mlog, merr) == kExitIo);
}

TEST_CASE("theory command runs the census") {
  RunConfig cfg;
  cfg.r = 1;
  std::ostringstream log, err;
  CHECK(run_check_theory(cfg, log, err) == kExitOk);
  CHECK(log.str().find("square_roots") != std::string::npos);
  CHECK(log.str().find("class_count") != std::string::npos);

  RunConfig bad;
  bad.r = 7;
  std::ostringstream blog, berr;
  CHECK(run_check_theory(bad, blog, berr) == kExitUsage);
}
