// Command-line front end: one subcommand per experiment, flags generated
// from the command table.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "crossperc/errors.hpp"
#include "crossperc/experiment.hpp"

int main(int argc, char **argv) {
  using namespace crossperc;
  CLI::App app{"Cross-model first-passage percolation and synchronous TASEP experiments"};
  app.set_version_flag("--version", std::string(CROSSPERC_VERSION));
  app.require_subcommand(1);

  std::map<std::string, ExperimentSpec> specs;
  for (const auto &info : commands()) {
    auto &spec = specs[info.name] = default_spec(info.name);
    auto *sub = app.add_subcommand(info.name, info.help);
    for (const auto &p : info.parameters) {
      auto *opt = sub->add_option("--" + p.name, spec.params[p.name], p.help);
      if (!p.default_value.empty())
        opt->default_str(p.default_value);
    }
    sub->add_option("--seed", spec.seed, "master seed")->default_val(spec.seed);
    sub->add_option("--format", spec.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str(info.default_format);
    sub->add_option("--output,-o", spec.output, "output path (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int status = app.exit(e);
    return status == 0 ? kSuccess : kParameterError;
  }

  const auto *chosen = app.get_subcommands().front();
  try {
    const auto result = run(specs.at(chosen->get_name()));
    emit(result, std::cout);
    return result.exit_code;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
