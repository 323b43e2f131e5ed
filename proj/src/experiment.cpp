#include "crossperc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "crossperc/closed_form.hpp"
#include "crossperc/correspondence.hpp"
#include "crossperc/errors.hpp"
#include "crossperc/event_a.hpp"
#include "crossperc/plane.hpp"
#include "crossperc/stationary.hpp"
#include "crossperc/strip.hpp"
#include "crossperc/strip_estimator.hpp"

#ifndef CROSSPERC_VERSION
#define CROSSPERC_VERSION "dev"
#endif

namespace crossperc {

const std::vector<CommandInfo> &commands() {
  static const std::vector<CommandInfo> table{
      {"strip-distance",
       "expected Cross-model distance E[D(n,0)] on the strip",
       {{"K", "3", "strip half-width"},
        {"eps", "0.2", "closure probability of horizontal edges"},
        {"n", "100", "target column"},
        {"method", "exact", "exact | monte-carlo | stationary-start | all"},
        {"replicas", "10000", "Monte Carlo replicas"},
        {"replay-edges", "", "compute D(n,0) on an edge file instead"},
        {"dump-edges", "", "write the edges of Monte Carlo replica 0 to this file"}},
       {"K", "eps", "n", "method", "value", "stderr", "nu_exact", "lower_gap", "upper_gap", "seed"},
       "csv"},
      {"tasep-stationary",
       "stationary nu(site 0 occupied, site 1 empty) of the synchronous TASEP",
       {{"K", "3", "half-width (2K sites)"},
        {"eps", "0.2", "common rate"},
        {"method", "exact", "exact | simulate | formula"},
        {"burn-in", "100000", "simulation burn-in steps"},
        {"samples", "1000000", "simulation sample steps"},
        {"batch", "1000", "batch length for batch-means errors"},
        {"alpha", "", "jump rate (defaults to eps)"},
        {"beta", "", "entry rate (defaults to eps)"},
        {"gamma", "", "exit rate (defaults to eps)"}},
       {"K", "eps", "method", "nu_pair", "stderr", "residual", "samples", "seed"},
       "csv"},
      {"nu-compare",
       "closed-form nu against the exact stationary solve, K = 1..K-max",
       {{"eps", "0.1,0.3", "comma-separated rates"},
        {"K-max", "6", "largest half-width (<= 7)"},
        {"tol", "1e-9", "absolute agreement tolerance"}},
       {"K", "eps", "nu_formula", "nu_exact", "residual", "abs_diff", "status"},
       "csv"},
      {"verify-correspondence",
       "check that particle extraction commutes with the Cross-model step",
       {{"K", "2", "strip half-width"},
        {"eps", "0.3", "closure probability"},
        {"columns", "10000", "columns to sample"},
        {"replay-edges", "", "verify on an edge file instead of sampling"},
        {"dump-edges", "", "write the verified edges to this file"}},
       {"K", "eps", "columns", "seed", "steps_checked", "mismatches", "first_mismatch"},
       "json"},
      {"mu-estimate",
       "Monte Carlo time constant D(0,(n,0))/n on the plane",
       {{"eps", "0.05", "closure probability"},
        {"n", "400", "target distance"},
        {"margin", "200", "window margin around [0,n] x {0}"},
        {"replicas", "400", "independent windows"}},
       {"eps", "n", "margin", "replicas", "admissible_fraction", "mu_hat", "stderr", "seed"},
       "csv"},
      {"event-a-bound",
       "empirical P(not A) on [0,n] x [-K,K] against 22 K n eps^2",
       {{"K", "4", "strip half-width"},
        {"n", "50", "box length"},
        {"eps", "0.01", "closure probability"},
        {"samples", "100000", "configurations"}},
       {"K", "n", "eps", "samples", "failures", "p_hat", "stderr", "bound", "within_4sigma", "seed"},
       "csv"},
      {"lower-bound-check",
       "plane with open verticals/diagonals against the strip and the plain plane",
       {{"k", "30", "target column and strip half-width"},
        {"eps", "0.3", "closure probability"},
        {"replicas", "1000", "configurations"}},
       {"k", "eps", "replicas", "equality_violations", "domination_violations",
        "monotonicity_violations", "plane_finite", "seed"},
       "csv"},
  };
  return table;
}

const CommandInfo &command_info(const std::string &name) {
  for (const auto &c : commands())
    if (c.name == name)
      return c;
  throw ParameterError("unknown subcommand '" + name + "'");
}

ExperimentSpec default_spec(const std::string &command) {
  const auto &info = command_info(command);
  ExperimentSpec spec;
  spec.command = command;
  for (const auto &p : info.parameters)
    spec.params[p.name] = p.default_value;
  spec.format = info.default_format;
  return spec;
}

namespace {

// Typed access to spec parameters; collects every problem before failing.
class Params {
public:
  explicit Params(const ExperimentSpec &spec) : spec_(spec) {}

  std::string text(const std::string &name) const {
    const auto it = spec_.params.find(name);
    return it == spec_.params.end() ? std::string{} : it->second;
  }

  std::int64_t integer(const std::string &name, std::int64_t lo, std::int64_t hi) {
    const auto t = text(name);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t, &used);
      if (used == t.size() && v >= lo && v <= hi)
        return v;
    } catch (const std::exception &) {
    }
    fail(name, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return lo;
  }

  double real(const std::string &name, double lo, double hi) {
    const auto t = text(name);
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used == t.size() && v >= lo && v <= hi)
        return v;
    } catch (const std::exception &) {
    }
    fail(name, "expected a number in [" + fmt(lo) + ", " + fmt(hi) + "]");
    return lo;
  }

  double probability(const std::string &name) { return real(name, 0.0, 1.0); }

  /// Empty text falls back to `fallback`.
  double probability_or(const std::string &name, double fallback) {
    return text(name).empty() ? fallback : probability(name);
  }

  std::vector<double> probability_list(const std::string &name) {
    std::vector<double> values;
    std::stringstream ss(text(name));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used == item.size() && v >= 0.0 && v <= 1.0) {
          values.push_back(v);
          continue;
        }
      } catch (const std::exception &) {
      }
      fail(name, "expected comma-separated numbers in [0, 1]");
      return values;
    }
    if (values.empty())
      fail(name, "expected at least one value");
    return values;
  }

  std::string choice(const std::string &name, const std::vector<std::string> &options) {
    const auto t = text(name);
    for (const auto &o : options)
      if (t == o)
        return t;
    std::string list;
    for (const auto &o : options)
      list += (list.empty() ? "" : " | ") + o;
    fail(name, "expected one of " + list);
    return options.front();
  }

  void finish() const {
    if (errors_.empty())
      return;
    std::string message = spec_.command + ": invalid parameters:";
    for (const auto &e : errors_)
      message += "\n  --" + e;
    throw ParameterError(message);
  }

private:
  static std::string fmt(double v) { return Json(v).dump(); }

  void fail(const std::string &name, const std::string &why) {
    errors_.push_back(name + " = '" + text(name) + "': " + why);
  }

  const ExperimentSpec &spec_;
  std::vector<std::string> errors_;
};

Json optional_number(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> maybe_nu_exact(int K, double eps) {
  if (K > kMaxDenseHalfWidth || !(eps > 0.0 && eps < 1.0))
    return std::nullopt;
  return stationary_exact(K, TasepRates::uniform(eps)).nu_pair;
}

void write_edges_file(const std::string &path, const StripConfig &config) {
  std::ofstream out(path);
  if (!out)
    throw ParameterError("cannot open '" + path + "' for writing");
  write_edges(out, config);
}

StripConfig read_edges_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParameterError("cannot open edge file '" + path + "'");
  return read_edges(in);
}

void strip_distance(const ExperimentSpec &spec, ExperimentResult &result) {
  Params p(spec);
  const auto K = static_cast<int>(p.integer("K", 1, 1 << 20));
  const double eps = p.probability("eps");
  const auto n = p.integer("n", 0, std::numeric_limits<std::int32_t>::max());
  const auto method = p.choice("method", {"exact", "monte-carlo", "stationary-start", "all"});
  const auto replicas = static_cast<std::uint64_t>(p.integer("replicas", 2, std::numeric_limits<std::int64_t>::max()));
  p.finish();

  const auto replay = p.text("replay-edges");
  const auto dump = p.text("dump-edges");
  const auto row = [&](const std::string &m, double value, std::optional<double> stderr_value,
                       std::optional<double> nu) {
    Json r;
    r["K"] = K;
    r["eps"] = eps;
    r["n"] = n;
    r["method"] = m;
    r["value"] = value;
    r["stderr"] = optional_number(stderr_value);
    r["nu_exact"] = optional_number(nu);
    if (nu) {
      const double line = static_cast<double>(n) * (1.0 + 2.0 * eps * *nu);
      r["lower_gap"] = value - line;
      r["upper_gap"] = line + 2.0 * K - value;
    } else {
      r["lower_gap"] = nullptr;
      r["upper_gap"] = nullptr;
    }
    r["seed"] = spec.seed;
    result.rows.push_back(std::move(r));
  };

  if (!replay.empty()) {
    const auto config = read_edges_file(replay);
    if (config.geometry.half_width() != K)
      throw ParameterError("strip-distance: edge file has K = " +
                           std::to_string(config.geometry.half_width()) + ", expected " + std::to_string(K));
    if (n > config.length())
      throw ParameterError("strip-distance: edge file holds only " + std::to_string(config.length()) +
                           " columns");
    row("replay", static_cast<double>(cross_profile(config, n).at(0)), std::nullopt,
        maybe_nu_exact(K, eps));
    return;
  }
  if (!dump.empty())
    write_edges_file(dump, sample_strip(StripGeometry(K, Model::Cross), eps, n, derive_seed(spec.seed, 0)));

  const bool all = method == "all";
  std::optional<double> nu;
  if (method == "exact" || method == "stationary-start" || (all && K <= kMaxDenseHalfWidth)) {
    if (K > kMaxDenseHalfWidth)
      throw CapacityError("strip-distance: exact evaluation needs K <= " +
                          std::to_string(kMaxDenseHalfWidth));
    if (!(eps > 0.0 && eps < 1.0))
      throw DegenerateError("strip-distance: exact evaluation needs eps strictly inside (0,1)");
    nu = maybe_nu_exact(K, eps);
    if (method == "exact" || all)
      row("exact", expected_distance_exact(K, eps, n).value, std::nullopt, nu);
    if (method == "stationary-start" || all)
      row("stationary-start", static_cast<double>(n) * (1.0 + 2.0 * eps * *nu), std::nullopt, nu);
  } else {
    nu = maybe_nu_exact(K, eps);
  }
  if (method == "monte-carlo" || all) {
    const auto mc = monte_carlo_distance(K, eps, n, replicas, spec.seed);
    row("monte-carlo", mc.value, mc.stderr_value, nu);
  }
}

void tasep_stationary(const ExperimentSpec &spec, ExperimentResult &result) {
  Params p(spec);
  const auto K = static_cast<int>(p.integer("K", 1, 1 << 20));
  const double eps = p.probability("eps");
  const auto method = p.choice("method", {"exact", "simulate", "formula"});
  const auto burn_in = static_cast<std::uint64_t>(p.integer("burn-in", 1, std::numeric_limits<std::int64_t>::max()));
  const auto samples = static_cast<std::uint64_t>(p.integer("samples", 1, std::numeric_limits<std::int64_t>::max()));
  const auto batch = static_cast<std::uint64_t>(p.integer("batch", 1, std::numeric_limits<std::int64_t>::max()));
  const TasepRates rates{p.probability_or("alpha", eps), p.probability_or("beta", eps),
                         p.probability_or("gamma", eps)};
  p.finish();

  Json r;
  r["K"] = K;
  r["eps"] = eps;
  r["method"] = method;
  if (method == "exact") {
    const auto pi = stationary_exact(K, rates);
    r["nu_pair"] = pi.nu_pair;
    r["stderr"] = 0.0;
    r["residual"] = pi.residual;
    r["samples"] = nullptr;
  } else if (method == "simulate") {
    const auto sim = nu_pair_simulated(K, rates, burn_in, samples, spec.seed, batch);
    r["nu_pair"] = sim.nu_pair;
    r["stderr"] = sim.stderr_nu;
    r["residual"] = nullptr;
    r["samples"] = sim.samples;
  } else {
    if (!(rates == TasepRates::uniform(eps)))
      throw ParameterError("tasep-stationary: the closed form needs alpha = beta = gamma = eps");
    r["nu_pair"] = nu_pair_formula(K, eps);
    r["stderr"] = nullptr;
    r["residual"] = nullptr;
    r["samples"] = nullptr;
  }
  r["seed"] = spec.seed;
  result.rows.push_back(std::move(r));
}

void nu_compare(const ExperimentSpec &spec, ExperimentResult &result) {
  Params p(spec);
  const auto eps_list = p.probability_list("eps");
  const auto k_max = static_cast<int>(p.integer("K-max", 1, 1 << 20));
  const double tol = p.real("tol", 0.0, 1.0);
  p.finish();
  if (k_max > kMaxDenseHalfWidth)
    throw CapacityError("exact stationary solves need K-max <= " + std::to_string(kMaxDenseHalfWidth));
  for (const double eps : eps_list) {
    if (!(eps > 0.0 && eps < 1.0))
      throw DegenerateError("nu-compare: eps must lie strictly inside (0,1)");
    for (int K = 1; K <= k_max; ++K) {
      const double formula = nu_pair_formula(K, eps);
      const auto exact = stationary_exact(K, TasepRates::uniform(eps));
      const double diff = std::abs(formula - exact.nu_pair);
      Json r;
      r["K"] = K;
      r["eps"] = eps;
      r["nu_formula"] = formula;
      r["nu_exact"] = exact.nu_pair;
      r["residual"] = exact.residual;
      r["abs_diff"] = diff;
      r["status"] = diff <= tol ? "AGREE" : "DISCREPANT";
      result.rows.push_back(std::move(r));
    }
  }
}

Json coupling_json(const CouplingReport &report) {
  Json j;
  j["K"] = report.half_width;
  j["eps"] = report.eps;
  j["seed"] = report.seed;
  j["steps_checked"] = report.steps_checked;
  j["mismatches"] = report.mismatches;
  if (report.first_mismatch) {
    const auto &m = *report.first_mismatch;
    j["first_mismatch"] = {{"column", m.column}, {"row", m.row}, {"kind", m.kind},
                           {"expected", m.expected}, {"actual", m.actual}};
  } else {
    j["first_mismatch"] = nullptr;
  }
  return j;
}

void verify_correspondence(const ExperimentSpec &spec, ExperimentResult &result) {
  Params p(spec);
  const auto K = static_cast<int>(p.integer("K", 1, 1 << 20));
  const double eps = p.probability("eps");
  const auto columns = p.integer("columns", 0, std::numeric_limits<std::int32_t>::max());
  p.finish();

  const auto replay = p.text("replay-edges");
  StripConfig config = replay.empty()
                           ? sample_strip(StripGeometry(K, Model::Cross), eps, columns, spec.seed)
                           : read_edges_file(replay);
  if (config.geometry.model() != Model::Cross)
    throw ParameterError("verify-correspondence: the edge file must describe a Cross-model strip");
  if (const auto dump = p.text("dump-edges"); !dump.empty())
    write_edges_file(dump, config);

  auto report = verify_coupling(config);
  report.eps = eps;
  report.seed = spec.seed;

  Json r;
  r["K"] = report.half_width;
  r["eps"] = eps;
  r["columns"] = config.length();
  r["seed"] = spec.seed;
  r["steps_checked"] = report.steps_checked;
  r["mismatches"] = report.mismatches;
  if (report.first_mismatch) {
    const auto &m = *report.first_mismatch;
    r["first_mismatch"] = m.kind + " column " + std::to_string(m.column) + " row " +
                          std::to_string(m.row) + " expected " + std::to_string(m.expected) +
                          " actual " + std::to_string(m.actual);
  } else {
    r["first_mismatch"] = nullptr;
  }
  result.rows.push_back(std::move(r));
  result.report = coupling_json(report);
  if (!report.passed())
    result.exit_code = kVerificationFailure;
}

void mu_estimate(const ExperimentSpec &spec, ExperimentResult &result) {
  Params p(spec);
  const double eps = p.probability("eps");
  const auto n = static_cast<int>(p.integer("n", 1, 1 << 20));
  const auto margin = static_cast<int>(p.integer("margin", 1, 1 << 20));
  const auto replicas = static_cast<std::uint64_t>(p.integer("replicas", 1, std::numeric_limits<std::int64_t>::max()));
  p.finish();
  const auto mu = estimate_mu(eps, n, margin, replicas, spec.seed);
  Json r;
  r["eps"] = eps;
  r["n"] = n;
  r["margin"] = margin;
  r["replicas"] = replicas;
  r["admissible_fraction"] = mu.admissible_fraction;
  r["mu_hat"] = mu.mu_hat;
  r["stderr"] = mu.stderr_mu;
  r["seed"] = spec.seed;
  result.rows.push_back(std::move(r));
}

void event_a_bound(const ExperimentSpec &spec, ExperimentResult &result) {
  Params p(spec);
  const auto K = static_cast<int>(p.integer("K", 1, 1 << 20));
  const auto n = p.integer("n", 1, std::numeric_limits<std::int32_t>::max());
  const double eps = p.probability("eps");
  const auto samples = static_cast<std::uint64_t>(p.integer("samples", 2, std::numeric_limits<std::int64_t>::max()));
  p.finish();
  const auto est = estimate_event_A_failure(K, n, eps, samples, spec.seed);
  Json r;
  r["K"] = K;
  r["n"] = n;
  r["eps"] = eps;
  r["samples"] = samples;
  r["failures"] = est.failures;
  r["p_hat"] = est.p_hat;
  r["stderr"] = est.stderr_p;
  r["bound"] = est.bound;
  r["within_4sigma"] = est.within(4.0);
  r["seed"] = spec.seed;
  result.rows.push_back(std::move(r));
  if (!est.within(4.0))
    result.exit_code = kVerificationFailure;
}

void lower_bound(const ExperimentSpec &spec, ExperimentResult &result) {
  Params p(spec);
  const auto k = static_cast<int>(p.integer("k", 1, 1 << 12));
  const double eps = p.probability("eps");
  const auto replicas = static_cast<std::uint64_t>(p.integer("replicas", 1, std::numeric_limits<std::int64_t>::max()));
  p.finish();
  const auto report = lower_bound_check(k, eps, spec.seed, replicas);
  Json r;
  r["k"] = k;
  r["eps"] = eps;
  r["replicas"] = replicas;
  r["equality_violations"] = report.equality_violations;
  r["domination_violations"] = report.domination_violations;
  r["monotonicity_violations"] = report.monotonicity_violations;
  r["plane_finite"] = report.plane_finite;
  r["seed"] = spec.seed;
  result.rows.push_back(std::move(r));
  if (!report.passed())
    result.exit_code = kVerificationFailure;
}

} // namespace

ExperimentResult run(const ExperimentSpec &spec) {
  const auto &info = command_info(spec.command);
  for (const auto &[name, value] : spec.params) {
    bool known = false;
    for (const auto &p : info.parameters)
      known = known || p.name == name;
    if (!known)
      throw ParameterError(spec.command + ": unknown parameter --" + name);
  }
  if (!spec.format.empty() && spec.format != "csv" && spec.format != "json")
    throw ParameterError(spec.command + ": --format must be csv or json");

  ExperimentResult result;
  result.spec = spec;
  for (const auto &p : info.parameters)
    result.spec.params.try_emplace(p.name, p.default_value);
  if (result.spec.format.empty())
    result.spec.format = info.default_format;
  result.columns = info.columns;
  result.version = CROSSPERC_VERSION;

  const auto start = std::chrono::steady_clock::now();
  try {
    const auto &s = result.spec;
    if (s.command == "strip-distance")
      strip_distance(s, result);
    else if (s.command == "tasep-stationary")
      tasep_stationary(s, result);
    else if (s.command == "nu-compare")
      nu_compare(s, result);
    else if (s.command == "verify-correspondence")
      verify_correspondence(s, result);
    else if (s.command == "mu-estimate")
      mu_estimate(s, result);
    else if (s.command == "event-a-bound")
      event_a_bound(s, result);
    else
      lower_bound(s, result);
  } catch (const ParameterError &e) {
    const std::string what = e.what();
    throw ParameterError(what.rfind(spec.command, 0) == 0 ? what : spec.command + ": " + what);
  } catch (const CapacityError &e) {
    throw CapacityError(spec.command + ": " + e.what());
  } catch (const DegenerateError &e) {
    throw DegenerateError(spec.command + ": " + e.what());
  } catch (const EstimationError &e) {
    throw EstimationError(spec.command + ": " + e.what());
  }
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

int exit_code_for(const std::exception &error) noexcept {
  if (dynamic_cast<const CapacityError *>(&error))
    return kCapacityError;
  if (dynamic_cast<const ContractError *>(&error))
    return kVerificationFailure;
  return kParameterError;
}

namespace {

std::string csv_cell(const Json &value) {
  if (value.is_null())
    return "";
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos)
      return s;
    std::string quoted = "\"";
    for (const char ch : s) {
      if (ch == '"')
        quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return value.dump();
}

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  return cells;
}

Json parse_cell(const std::string &cell) {
  if (cell.empty())
    return nullptr;
  const auto parsed = Json::parse(cell, nullptr, false);
  if (!parsed.is_discarded() && (parsed.is_number() || parsed.is_boolean()))
    return parsed;
  return cell;
}

} // namespace

void write_csv(std::ostream &out, const ExperimentResult &result) {
  for (std::size_t c = 0; c < result.columns.size(); ++c)
    out << (c ? "," : "") << result.columns[c];
  out << '\n';
  for (const auto &row : result.rows) {
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
      const auto it = row.find(result.columns[c]);
      out << (c ? "," : "") << (it == row.end() ? std::string{} : csv_cell(*it));
    }
    out << '\n';
  }
}

std::vector<Json> read_csv_rows(std::istream &in, std::vector<std::string> &columns) {
  std::string line;
  columns.clear();
  std::vector<Json> rows;
  if (!std::getline(in, line))
    return rows;
  columns = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != columns.size())
      throw ParameterError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(columns.size()));
    Json row = Json::object();
    for (std::size_t c = 0; c < cells.size(); ++c)
      row[columns[c]] = parse_cell(cells[c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ExperimentResult &result) {
  Json j;
  j["command"] = result.spec.command;
  Json params = Json::object();
  for (const auto &[k, v] : result.spec.params)
    params[k] = v;
  j["spec"] = {{"params", params},
               {"seed", result.spec.seed},
               {"format", result.spec.format},
               {"output", result.spec.output}};
  j["columns"] = result.columns;
  j["rows"] = result.rows;
  j["report"] = result.report;
  j["wall_time"] = result.wall_time;
  j["version"] = result.version;
  j["exit_code"] = result.exit_code;
  return j;
}

ExperimentResult result_from_json(const Json &j) {
  ExperimentResult r;
  try {
    r.spec.command = j.at("command").get<std::string>();
    const auto &spec = j.at("spec");
    for (const auto &[k, v] : spec.at("params").items())
      r.spec.params[k] = v.get<std::string>();
    r.spec.seed = spec.at("seed").get<std::uint64_t>();
    r.spec.format = spec.at("format").get<std::string>();
    r.spec.output = spec.at("output").get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto &row : j.at("rows"))
      r.rows.push_back(row);
    r.report = j.at("report");
    r.wall_time = j.at("wall_time").get<double>();
    r.version = j.at("version").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
  } catch (const Json::exception &e) {
    throw ParameterError(std::string("malformed experiment result: ") + e.what());
  }
  return r;
}

void emit(const ExperimentResult &result, std::ostream &fallback) {
  std::ofstream file;
  const bool to_file = !result.spec.output.empty() && result.spec.output != "-";
  if (to_file) {
    file.open(result.spec.output);
    if (!file)
      throw ParameterError("cannot open '" + result.spec.output + "' for writing");
  }
  std::ostream &out = to_file ? static_cast<std::ostream &>(file) : fallback;
  if (result.spec.format == "json")
    out << to_json(result).dump(2) << '\n';
  else
    write_csv(out, result);
}

} // namespace crossperc
