#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mubforge/commands.hpp"

int main(int argc, char** argv) {
  using namespace mubforge;

  CLI::App app{"mubforge: families of real unbiased Hadamard matrices from one orthogonal matrix"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";

  CLI::App* generate = app.add_subcommand(
      "generate", "Construct a family for GF(q^2), q = 2^r, verify it, and write it out");
  generate->add_option("--r", cfg.r, "Field parameter r (q = 2^r)")
      ->required()
      ->check(CLI::Range(1, 4));
  generate->add_option("--seed", cfg.seed, "Seed for the averaging step (default 42)");
  generate->add_option("--out", cfg.out_path, "Output path")->required();
  generate->add_option("--format", format, "Output format: json or text (default json)")
      ->check(CLI::IsMember({"json", "text"}));
  generate->add_flag("--reproducible", cfg.reproducible,
                     "Force the reproducible reduction order (always on; accepted for "
                     "interface stability)");
  generate->add_flag("--allow-long", cfg.allow_long, "Permit the expensive r=4 run");

  CLI::App* verify =
      app.add_subcommand("verify", "Re-run the exact integer checks on a family file");
  verify->add_option("--in", cfg.in_path, "Family file (json or text)")->required();

  CLI::App* theory = app.add_subcommand(
      "check-theory", "Recompute structural counts and character identities for r <= 3");
  theory->add_option("--r", cfg.r, "Field parameter r (q = 2^r)")
      ->required()
      ->check(CLI::Range(1, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  cfg.format = format == "text" ? FamilyFormat::text : FamilyFormat::json;

  if (generate->parsed()) return run_generate(cfg, std::cout, std::cerr);
  if (verify->parsed()) return run_verify(cfg, std::cout, std::cerr);
  if (theory->parsed()) return run_check_theory(cfg, std::cout, std::cerr);
  return kExitUsage;
}
