#pragma once

// Experiment runner behind the command-line tool. Every subcommand is a
// named parameter set with defaults; a run is a pure function of its spec.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace crossperc {

using Json = nlohmann::ordered_json;

struct ParameterInfo {
  std::string name;
  std::string default_value;
  std::string help;
};

struct CommandInfo {
  std::string name;
  std::string help;
  std::vector<ParameterInfo> parameters;
  std::vector<std::string> columns;
  std::string default_format;
};

/// The seven subcommands, in display order.
const std::vector<CommandInfo> &commands();
const CommandInfo &command_info(const std::string &name);

struct ExperimentSpec {
  std::string command;
  std::map<std::string, std::string> params;  ///< text as given, defaults filled in
  std::uint64_t seed = 1;
  std::string format;                         ///< "csv" or "json"; empty = command default
  std::string output;                         ///< path; empty or "-" = stdout

  friend bool operator==(const ExperimentSpec &, const ExperimentSpec &) = default;
};

/// Spec for `command` with every parameter at its default.
ExperimentSpec default_spec(const std::string &command);

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<std::string> columns;
  std::vector<Json> rows;  ///< objects keyed by column
  Json report;             ///< structured detail (e.g. the coupling report); may be null
  double wall_time = 0.0;  ///< seconds
  std::string version;
  int exit_code = 0;       ///< 0 success, 2 verification failure

  friend bool operator==(const ExperimentResult &, const ExperimentResult &) = default;
};

/// Exit statuses of the command-line contract.
enum ExitCode : int { kSuccess = 0, kParameterError = 1, kVerificationFailure = 2, kCapacityError = 3 };

/// Validates the spec (ParameterError naming every bad field) and
/// dispatches. Module errors propagate with the command name prepended.
ExperimentResult run(const ExperimentSpec &spec);

/// Maps an exception thrown by run() to its exit status.
int exit_code_for(const std::exception &error) noexcept;

/// Header line plus one line per row; doubles in shortest round-trip form.
void write_csv(std::ostream &out, const ExperimentResult &result);
/// Reads rows written by write_csv back into JSON-typed cells.
std::vector<Json> read_csv_rows(std::istream &in, std::vector<std::string> &columns);

Json to_json(const ExperimentResult &result);
ExperimentResult result_from_json(const Json &json);

/// Writes the result in spec.format to spec.output (or `fallback`).
void emit(const ExperimentResult &result, std::ostream &fallback);

} // namespace crossperc
