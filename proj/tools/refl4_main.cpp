#include <iostream>

#include "CLI11.hpp"
#include "cli/run.hpp"

int main(int argc, char** argv) {
  using refl4::cli::RunConfig;
  RunConfig config;
  std::string grid_step = "1/16";

  CLI::App app{"Exact ball configurations and Moebius reflection groups over cubical 2-complexes"};
  app.add_option("command", config.command, "generate | audit | nerve | enumerate | tile | quotient | plinv")
      ->required()
      ->check(CLI::IsMember({"generate", "audit", "nerve", "enumerate", "tile", "quotient", "plinv"}));
  app.add_option("input", config.input, "complex JSON (cube spec JSON for plinv)")->required();
  app.add_option("--max-length", config.max_length, "word length bound")->capture_default_str();
  app.add_option("--prime", config.prime, "congruence prime (not 2 or 3)")->capture_default_str();
  app.add_option("--grid-step", grid_step, "coverage sampling step as p/q")->capture_default_str();
  app.add_option("--element-cap", config.element_cap, "maximum number of enumerated elements")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--output,-o", config.output, "report path (default: stdout)");
  app.add_option("--csv", config.csv, "growth CSV path (enumerate)");
  app.add_option("--seed", config.seed, "seed for randomized cross-checks")->capture_default_str();
  app.add_option("--workers", config.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--probe", config.probe, "probe point x,y,z,w or inf (tile)")->capture_default_str();
  app.add_option("--samples", config.samples, "random sample count (plinv)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : refl4::cli::kInputError;
  }

  try {
    config.grid_step = refl4::parse_rational(grid_step);
  } catch (const refl4::Error& e) {
    std::cerr << "error: --grid-step: " << e.what() << '\n';
    return refl4::cli::kInputError;
  }

  const auto result = refl4::cli::run(config);
  if (result.status == refl4::cli::kInputError) {
    std::cerr << "error: " << result.diagnostic << '\n';
    return result.status;
  }
  if (config.output.empty()) std::cout << result.report;
  return result.status;
}
