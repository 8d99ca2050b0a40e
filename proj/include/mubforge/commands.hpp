#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mubforge/family_io.hpp"

namespace mubforge {

// Process exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitParse = 4;

struct RunConfig {
  int r = 1;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string in_path;
  FamilyFormat format = FamilyFormat::json;
  bool reproducible = false;
  bool allow_long = false;  // gates r = 4, whose averaging step runs minutes
};

// generate: build a family, verify it end to end, write it to out_path.
int run_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// verify: load a family file and re-run the exact integer checks.
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// check-theory: recompute the structural counts and character identities
// for GF(q^2), q = 2^r, r <= 3, and compare with the closed forms.
int run_check_theory(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace mubforge
