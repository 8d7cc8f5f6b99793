#include <iostream>

#include "CLI11.hpp"
#include "kmk/cli/commands.hpp"

int main(int argc, char** argv) {
  kmk::cli::Command cmd;
  CLI::App app{"Kato-Milne cohomology of rational function fields over GF(2)"};
  app.add_option("verb", cmd.verb, "normalform | residue | iszero | isnorm | kato | crosscheck | factor")
      ->required()
      ->check(CLI::IsMember({"normalform", "residue", "iszero", "isnorm", "kato", "crosscheck", "factor"}));
  app.add_option("--tower", cmd.tower, "base variables ; distinguished variable, e.g. \"t1,t2;x\"")
      ->capture_default_str();
  app.add_option("--expr", cmd.expr, "form, e.g. \"t/x * dlog(t)\", or a polynomial for factor");
  app.add_option("--place", cmd.place, "irreducible polynomial in x, or \"inf\"");
  app.add_option("--w", cmd.w, "form for isnorm");
  app.add_option("--p", cmd.p, "polynomial for isnorm");
  app.add_option("--precision", cmd.precision, "precision ceiling")->capture_default_str();
  app.add_option("--factor-bound", cmd.factor_bound, "per-variable degree bound for factorization")
      ->capture_default_str();
  app.add_option("--windows", cmd.windows, "oracle window degrees")->capture_default_str();
  app.add_option("--format", cmd.format, "text | structured")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "structured"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kmk::cli::kUsage;
  }
  const kmk::cli::Outcome out = kmk::cli::execute(cmd);
  (out.exit_code == kmk::cli::kComputed ? std::cout : std::cerr) << out.render(cmd);
  return out.exit_code;
}
