#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cli/run.hpp"

int main(int argc, char** argv) {
  using folia::cli::JobSpec;
  JobSpec job;
  CLI::App app{"folia: exact checks for holomorphic foliations and branched pull-backs"};
  app.require_subcommand(1);

  std::string weights;
  std::string line;
  double tol = 0.0;
  const std::map<std::string, std::string> help = {
      {"check", "validate a foliation (Euler, integrability) or a branched map"},
      {"degree", "degree by tangency count; with a map, compare the pull-back degree with the prediction"},
      {"pullback", "build the pull-back form of a three-line foliation under a branched map"},
      {"singularities", "locate and classify the singular points on P^2"},
      {"indices", "Camacho-Sad indices along an invariant line and their sum"},
      {"exclude-lines", "enumerate candidate lines and certify the invariant ones"},
      {"local", "quasi-homogeneous structure and Kupka probe of the local model"},
      {"bezout", "indeterminacy points of a Fermat-type map and their genericity"},
  };
  for (const char* name : folia::cli::kCommands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("inputs", job.inputs, "foliation and/or map files")->required()->check(CLI::ExistingFile);
    sub->add_option("--tol", tol, "numeric tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--seed", job.seed, "seed for random lines and shears")->capture_default_str();
    sub->add_option("--format", job.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--trials", job.trials, "random lines for the degree count")
        ->check(CLI::Range(1u, 1000u))
        ->capture_default_str();
    sub->add_option("--out", job.out, "write the report here instead of standard output");
    sub->add_option("--ramify", job.ramify, "pull back by [X^k:Y^k:Z^k] first")->check(CLI::Range(1u, 16u));
    sub->add_option("--line", line, "linear form in X, Y, Z for the indices command");
    sub->add_option("--weights", weights, "alpha,beta,gamma for the local command");
    sub->add_flag("--regime", job.regime, "require 1 < alpha < beta < gamma");
    sub->add_flag("--timings", job.timings, "include wall-clock timings in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const CLI::App* chosen = app.get_subcommands().front();
  job.command = chosen->get_name();
  if (chosen->count("--tol")) job.tol = tol;
  if (!line.empty()) job.line = line;
  if (!weights.empty()) {
    std::array<unsigned, 3> w{};
    std::istringstream in(weights);
    char c1 = 0, c2 = 0;
    if (!(in >> w[0] >> c1 >> w[1] >> c2 >> w[2]) || c1 != ',' || c2 != ',' || w[0] == 0 || w[1] == 0 ||
        w[2] == 0) {
      std::cerr << "--weights expects three positive integers a,b,c\n";
      return 2;
    }
    job.weights = w;
  }

  const folia::cli::Report report = folia::cli::run(job);
  try {
    folia::cli::emit(job, report);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (report.error) std::cerr << "error [" << report.error->code << "]: " << report.error->message << "\n";
  return report.exit_code();
}
