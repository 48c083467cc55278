#include "beetle/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "beetle/catalog.hpp"
#include "beetle/config_io.hpp"
#include "beetle/harness.hpp"

namespace beetle::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keys that describe the invocation rather than an optimizer.
const std::set<std::string> kSettingKeys = {
    "algorithm", "algorithms", "problem",        "problems",         "dim", "n_trials",
    "base_seed", "out",        "penalty_weight", "penalty_exponent",
};

// Effective settings of one invocation: file values, then flags on top.
struct Settings {
  std::vector<std::string> algorithms = {"bso"};
  std::vector<std::string> problems = {"F1"};
  std::optional<std::size_t> dim;
  std::size_t n_trials = 1;
  std::uint64_t base_seed = 0;
  std::string out = ".";
  constrained::PenaltyConfig penalty;
  json tunables = json::object();
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
}

template <typename T>
T get_setting(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type: " + v.dump());
  }
}

void apply_file(Settings& s, const json& doc) {
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (!kSettingKeys.contains(key)) {
      s.tunables[key] = v;
    } else if (key == "algorithm") {
      s.algorithms = {get_setting<std::string>(v, key)};
    } else if (key == "algorithms") {
      s.algorithms = get_setting<std::vector<std::string>>(v, key);
    } else if (key == "problem") {
      s.problems = {get_setting<std::string>(v, key)};
    } else if (key == "problems") {
      s.problems = get_setting<std::vector<std::string>>(v, key);
    } else if (key == "dim") {
      if (v.is_null()) s.dim.reset();
      else s.dim = get_setting<std::size_t>(v, key);
    } else if (key == "n_trials") {
      s.n_trials = get_setting<std::size_t>(v, key);
    } else if (key == "base_seed") {
      s.base_seed = get_setting<std::uint64_t>(v, key);
    } else if (key == "out") {
      s.out = get_setting<std::string>(v, key);
    } else if (key == "penalty_weight") {
      s.penalty.weight = get_setting<double>(v, key);
    } else if (key == "penalty_exponent") {
      s.penalty.exponent = get_setting<double>(v, key);
    }
  }
}

std::set<std::string> known_tunables(Algorithm a) {
  std::set<std::string> keys;
  const json defaults = std::visit([](const auto& c) { return to_json(c); }, default_config(a));
  for (const auto& [k, v] : defaults.items()) keys.insert(k);
  return keys;
}

// Builds each algorithm's config from the shared flat tunables. A key must be
// known to at least one requested algorithm; each algorithm takes the keys it
// understands.
std::vector<SolverConfig> build_configs(const Settings& s) {
  std::vector<Algorithm> algos;
  for (const std::string& name : s.algorithms) algos.push_back(parse_algorithm(name));
  for (const auto& [key, v] : s.tunables.items()) {
    const bool known = std::any_of(algos.begin(), algos.end(),
                                   [&](Algorithm a) { return known_tunables(a).contains(key); });
    if (!known) throw UsageError("unknown config key '" + key + "'");
  }
  std::vector<SolverConfig> configs;
  for (Algorithm a : algos) {
    const std::set<std::string> keys = known_tunables(a);
    json mine = json::object();
    for (const auto& [key, v] : s.tunables.items()) {
      if (keys.contains(key)) mine[key] = v;
    }
    switch (a) {
      case Algorithm::bso: configs.emplace_back(bso_config_from_json(mine)); break;
      case Algorithm::pso: configs.emplace_back(pso_config_from_json(mine)); break;
      case Algorithm::bas: configs.emplace_back(bas_config_from_json(mine)); break;
    }
    std::visit([](const auto& c) { c.validate(); }, configs.back());
  }
  return configs;
}

json config_json(const SolverConfig& c) {
  return std::visit([](const auto& v) { return to_json(v); }, c);
}

std::uint64_t config_seed(const SolverConfig& c) {
  return std::visit([](const auto& v) { return v.seed; }, c);
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

json penalty_json(const constrained::PenaltyConfig& p) {
  return {{"penalty_weight", p.weight}, {"penalty_exponent", p.exponent}};
}

// ---- run -------------------------------------------------------------------

struct CommonFlags {
  std::string config_path;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> pop;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> dim;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override it");
  cmd->add_option("--iters", f.iters, "iteration budget K");
  cmd->add_option("--pop", f.pop, "population size n (bso, pso)");
  cmd->add_option("--seed", f.seed, "seed (base seed for multi-trial commands)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--dim", f.dim, "dimension override for F1-F13");
}

Settings merge(const CommonFlags& f, Settings s, bool seed_is_base) {
  if (!f.config_path.empty()) apply_file(s, load_json_file(f.config_path));
  if (f.iters) s.tunables["iterations"] = *f.iters;
  if (f.pop) s.tunables["population"] = *f.pop;
  if (f.seed) {
    if (seed_is_base) s.base_seed = *f.seed;
    else s.tunables["seed"] = *f.seed;
  }
  if (f.out) s.out = *f.out;
  if (f.dim) s.dim = *f.dim;
  return s;
}

int cmd_run(const CommonFlags& flags, const std::optional<std::string>& algo,
            const std::optional<std::string>& problem_id, std::ostream& out) {
  Settings s = merge(flags, Settings{}, false);
  if (algo) s.algorithms = {*algo};
  if (problem_id) s.problems = {*problem_id};
  if (s.algorithms.size() != 1 || s.problems.size() != 1) {
    throw UsageError("run takes exactly one algorithm and one problem");
  }
  const std::vector<SolverConfig> configs = build_configs(s);
  const Problem problem = make_catalog_problem(s.problems[0], s.dim, s.penalty);
  const SolverConfig& config = configs.front();
  const RunRecord record = run_solver(problem, config, config_seed(config));

  json effective = config_json(config);
  effective["algorithm"] = to_string(algorithm_of(config));
  effective["problem"] = problem.id;
  effective["dim"] = problem.space.dim();
  effective["out"] = s.out;
  effective.update(penalty_json(s.penalty));

  json summary = to_json(record);
  summary.erase("config");
  if (auto c = find_constrained(problem.id)) {
    const std::vector<double> x = constrained::snap_discrete(record.best_x, c->kinds);
    summary["best_x"] = x;
    summary["raw_objective"] = c->raw_objective(x);
    summary["constraints"] = c->constraint_values(x);
    summary["feasible"] = c->feasible(x, constrained::kFeasibilityTolerance);
  }

  const fs::path dir(s.out);
  ensure_directory(dir);
  write_json(dir / "run.json", {{"schema", "beetle.run/1"}, {"summary", summary}, {"config", effective}});
  export_convergence(record, dir / "curve.csv");
  if (!record.positions.empty()) export_positions(record, problem.space.dim(), dir / "positions.csv");
  out << record.algorithm << ' ' << record.problem << " seed=" << record.seed
      << " best_f=" << format_double(record.best_f) << '\n';
  return kSuccess;
}

// ---- bench -----------------------------------------------------------------

int cmd_bench(const CommonFlags& flags, const std::optional<std::string>& algos,
              const std::optional<std::string>& problems, const std::optional<std::size_t>& trials,
              const std::string& literature, bool list, std::ostream& out) {
  if (list) {
    out << catalog_listing().dump(2) << '\n';
    return kSuccess;
  }
  Settings defaults;
  defaults.problems = expand_problem_list("F1..F23");
  defaults.n_trials = 30;
  defaults.base_seed = 1;
  defaults.out = "bench_out";
  Settings s = merge(flags, defaults, true);
  if (algos) s.algorithms = split_csv(*algos);
  if (problems) s.problems = expand_problem_list(*problems);
  if (trials) s.n_trials = *trials;
  if (s.algorithms.empty() || s.problems.empty()) throw UsageError("empty algorithm or problem list");
  if (s.n_trials == 0) throw UsageError("--trials must be >= 1");
  for (std::string& p : s.problems) p = canonical_problem_id(p);

  const std::vector<SolverConfig> configs = build_configs(s);
  std::vector<Problem> catalog;
  for (const std::string& id : s.problems) catalog.push_back(make_catalog_problem(id, s.dim, s.penalty));

  // One task per (algorithm, problem, trial); aggregation happens afterwards.
  const std::size_t per_algo = catalog.size() * s.n_trials;
  std::vector<RunRecord> records(configs.size() * per_algo);
  parallel_for(records.size(), thread_budget(), [&](std::size_t task) {
    const std::size_t a = task / per_algo;
    const std::size_t p = (task % per_algo) / s.n_trials;
    const std::size_t t = task % s.n_trials;
    records[task] = run_solver(catalog[p], configs[a], s.base_seed + t);
  });

  std::vector<TrialSummary> summaries;
  for (std::size_t a = 0; a < configs.size(); ++a) {
    for (std::size_t p = 0; p < catalog.size(); ++p) {
      std::vector<double> finals, times;
      std::vector<std::uint64_t> seeds;
      for (std::size_t t = 0; t < s.n_trials; ++t) {
        const RunRecord& r = records[a * per_algo + p * s.n_trials + t];
        finals.push_back(r.best_f);
        times.push_back(r.wall_time_s);
        seeds.push_back(r.seed);
      }
      summaries.push_back(summarize(catalog[p].id, to_string(algorithm_of(configs[a])), finals,
                                    times, seeds));
    }
  }
  if (!literature.empty()) {
    const json rows = load_json_file(literature);
    if (!rows.is_array()) throw UsageError("literature file must hold a JSON array of summaries");
    for (const json& row : rows) {
      TrialSummary lit = trial_summary_from_json(row);
      lit.source = "literature";
      if (std::find(s.problems.begin(), s.problems.end(), lit.problem) != s.problems.end()) {
        summaries.push_back(std::move(lit));
      }
    }
  }

  const fs::path dir(s.out);
  ensure_directory(dir);
  const ComparisonReport report = compare_report(summaries, dir);
  json effective = {{"algorithms", s.algorithms},
                    {"problems", s.problems},
                    {"n_trials", s.n_trials},
                    {"base_seed", s.base_seed},
                    {"dim", s.dim ? json(*s.dim) : json(nullptr)},
                    {"out", s.out}};
  effective.update(penalty_json(s.penalty));
  effective.update(s.tunables);
  json resolved = json::object();
  for (const SolverConfig& c : configs) resolved[to_string(algorithm_of(c))] = config_json(c);
  write_json(dir / "bench.json", {{"schema", "beetle.bench/1"}, {"config", effective}, {"resolved", resolved}});
  out << report.text;
  return kSuccess;
}

// ---- constrained -----------------------------------------------------------

int cmd_constrained(const CommonFlags& flags, const std::optional<std::string>& algo,
                    const std::optional<std::string>& problem_id,
                    const std::optional<std::size_t>& trials, std::ostream& out) {
  Settings defaults;
  defaults.problems = {"PV"};
  defaults.n_trials = 30;
  defaults.base_seed = 1;
  defaults.out.clear();
  Settings s = merge(flags, defaults, true);
  if (algo) s.algorithms = {*algo};
  if (problem_id) s.problems = {*problem_id};
  if (trials) s.n_trials = *trials;
  if (s.algorithms.size() != 1 || s.problems.size() != 1) {
    throw UsageError("constrained takes exactly one algorithm and one problem");
  }
  if (s.n_trials == 0) throw UsageError("--trials must be >= 1");
  const auto cproblem = find_constrained(s.problems[0]);
  if (!cproblem) throw UsageError("constrained expects --problem pv or hb, got " + s.problems[0]);
  s.penalty.validate();

  const std::vector<SolverConfig> configs = build_configs(s);
  const ConstrainedBatch result = run_constrained_trials(configs.front(), *cproblem, s.penalty,
                                                         s.n_trials, s.base_seed, thread_budget());
  const TrialBatch& batch = result.batch;

  struct Candidate {
    std::vector<double> x;
    double raw;
    double penalized;
    std::uint64_t seed;
  };
  const constrained::PenaltyConfig& penalty = s.penalty;
  auto candidate = [&](std::vector<double> x, std::uint64_t seed) {
    Candidate c{std::move(x), 0, 0, seed};
    c.raw = cproblem->raw_objective(c.x);
    c.penalized = constrained::penalized_fitness(*cproblem, c.x, penalty);
    return c;
  };
  std::optional<Candidate> best_feasible;
  std::optional<Candidate> best_infeasible;
  std::size_t feasible_trials = 0;
  for (std::size_t i = 0; i < batch.runs.size(); ++i) {
    const RunRecord& r = batch.runs[i];
    const constrained::FeasibleBest& fb = result.feasible[i];
    if (fb.found()) {
      ++feasible_trials;
      if (!best_feasible || fb.raw < best_feasible->raw) best_feasible = candidate(fb.x, r.seed);
    } else if (!best_infeasible || r.best_f < best_infeasible->penalized) {
      best_infeasible = candidate(constrained::snap_discrete(r.best_x, cproblem->kinds), r.seed);
    }
  }
  const Candidate& chosen = best_feasible ? *best_feasible : *best_infeasible;
  const std::vector<double> g = cproblem->constraint_values(chosen.x);

  std::ostringstream table;
  table << std::setprecision(10);
  for (std::size_t i = 0; i < chosen.x.size(); ++i) table << "x" << i + 1 << '\t';
  for (std::size_t j = 0; j < g.size(); ++j) table << "g" << j + 1 << "(x)\t";
  table << "f*\tpenalized\n";
  for (double v : chosen.x) table << v << '\t';
  for (double v : g) table << v << '\t';
  table << chosen.raw << '\t' << chosen.penalized << '\n';

  out << cproblem->id << ' ' << to_string(algorithm_of(configs.front())) << ": " << feasible_trials
      << '/' << s.n_trials << " trials feasible; "
      << (best_feasible ? "best feasible" : "NO feasible solution, best infeasible")
      << " (seed " << chosen.seed << ")\n"
      << table.str();

  if (!s.out.empty()) {
    const fs::path dir(s.out);
    ensure_directory(dir);
    json effective = config_json(configs.front());
    effective["algorithm"] = to_string(algorithm_of(configs.front()));
    effective["problem"] = cproblem->id;
    effective["n_trials"] = s.n_trials;
    effective["base_seed"] = s.base_seed;
    effective["out"] = s.out;
    effective.update(penalty_json(s.penalty));
    write_json(dir / "constrained.json",
               {{"schema", "beetle.constrained/1"},
                {"feasible", best_feasible.has_value()},
                {"feasible_trials", feasible_trials},
                {"best", {{"x", chosen.x}, {"g", g}, {"raw_objective", chosen.raw},
                          {"penalized", chosen.penalized}, {"seed", chosen.seed}}},
                {"summary", to_json(batch.summary)},
                {"config", effective}});
  }
  return best_feasible ? kSuccess : kNoFeasible;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beetle swarm optimization toolkit"};
  app.name("bso");
  app.require_subcommand(1);

  CommonFlags run_flags, bench_flags, con_flags;
  std::optional<std::string> run_algo, run_problem;
  auto* run_cmd = app.add_subcommand("run", "single optimizer run");
  run_cmd->add_option("--algo", run_algo, "bso | bas | pso");
  run_cmd->add_option("--problem", run_problem, "F1..F23, PV or HB");
  add_common(run_cmd, run_flags);

  std::optional<std::string> bench_algos, bench_problems;
  std::optional<std::size_t> bench_trials;
  std::string literature;
  bool list = false;
  auto* bench_cmd = app.add_subcommand("bench", "trial matrix and comparison report");
  bench_cmd->add_option("--algos", bench_algos, "comma-separated algorithms");
  bench_cmd->add_option("--problems", bench_problems, "e.g. F1..F23,PV");
  bench_cmd->add_option("--trials", bench_trials, "trials per (algorithm, problem)");
  bench_cmd->add_option("--literature", literature, "JSON array of reference summaries to include");
  bench_cmd->add_flag("--list", list, "print the problem catalog and exit");
  add_common(bench_cmd, bench_flags);

  std::optional<std::string> con_algo, con_problem;
  std::optional<std::size_t> con_trials;
  auto* con_cmd = app.add_subcommand("constrained", "engineering design problems");
  con_cmd->add_option("--algo", con_algo, "bso | bas | pso");
  con_cmd->add_option("--problem", con_problem, "pv | hb");
  con_cmd->add_option("--trials", con_trials, "number of trials");
  add_common(con_cmd, con_flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags, run_algo, run_problem, out);
    if (bench_cmd->parsed()) {
      return cmd_bench(bench_flags, bench_algos, bench_problems, bench_trials, literature, list, out);
    }
    if (con_cmd->parsed()) return cmd_constrained(con_flags, con_algo, con_problem, con_trials, out);
  } catch (const NotFound& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace beetle::cli
