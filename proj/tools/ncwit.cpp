// ncwit: contextuality witnesses for the four-preparation, two-measurement scenario.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ncwit/cli.hpp"

int main(int argc, char** argv) {
  using namespace ncwit;
  CLI::App app{"Noise-robust contextuality witnesses for the simplest prepare-and-measure scenario"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kToolVersion);

  const std::map<std::string, NoiseModel> models{{"box", NoiseModel::Box},
                                                 {"depolarizing", NoiseModel::Depolarizing}};

  std::string input;
  std::string output;
  auto* witness = app.add_subcommand("witness", "Compute every witness for one input document");
  witness->add_option("--input", input, "Input JSON document")->required();
  witness->add_option("--output", output, "Report path (default: stdout)");

  double deltaMax = 0.12;
  int steps = 121;
  NoiseModel model = NoiseModel::Box;
  auto* sweep = app.add_subcommand("sweep", "Bound curves over the noise parameter as CSV");
  sweep->add_option("--delta-max", deltaMax, "Largest noise parameter, at most 0.12");
  sweep->add_option("--steps", steps, "Grid points, at least 2");
  sweep->add_option("--noise-model", model, "box or depolarizing")->transform(CLI::CheckedTransformer(models));
  sweep->add_option("--output", output, "CSV path (default: stdout)");

  NoiseEnsemble ensemble;
  bool region = false;
  auto* verify = app.add_subcommand("verify", "Check the bounds on a seeded noise ensemble");
  verify->add_option("--noise-model", ensemble.model, "box or depolarizing")
      ->transform(CLI::CheckedTransformer(models));
  verify->add_option("--delta", ensemble.delta, "Noise parameter")->required();
  verify->add_option("--samples", ensemble.samples, "Random scenarios on top of the corner cases");
  verify->add_option("--seed", ensemble.seed, "Generator seed");
  verify->add_flag("--region", region, "Certify the verdicts promised below the thresholds");
  verify->add_option("--output", output, "Report path (default: stdout)");

  app.add_subcommand("thresholds", "Noise thresholds next to the published values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  if (*witness) return cli::cmdWitness(input, output, std::cout, std::cerr);
  if (*sweep) return cli::cmdSweep(deltaMax, steps, model, output, std::cout, std::cerr);
  if (*verify) return cli::cmdVerify(ensemble, region, output, std::cout, std::cerr);
  return cli::cmdThresholds(std::cout);
}
