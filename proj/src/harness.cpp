#include "beetle/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "beetle/config_io.hpp"

namespace beetle {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::bso: return "bso";
    case Algorithm::bas: return "bas";
    case Algorithm::pso: return "pso";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "bso") return Algorithm::bso;
  if (name == "bas") return Algorithm::bas;
  if (name == "pso") return Algorithm::pso;
  throw NotFound("unknown algorithm " + std::string(name));
}

Algorithm algorithm_of(const SolverConfig& config) {
  return std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BsoConfig>) return Algorithm::bso;
        else if constexpr (std::is_same_v<T, PsoConfig>) return Algorithm::pso;
        else return Algorithm::bas;
      },
      config);
}

SolverConfig default_config(Algorithm a) {
  switch (a) {
    case Algorithm::bso: return BsoConfig{};
    case Algorithm::pso: return PsoConfig{};
    case Algorithm::bas: return BasConfig{};
  }
  return BsoConfig{};
}

RunRecord run_solver(const Problem& problem, const SolverConfig& config, std::uint64_t seed) {
  return std::visit(
      [&](auto c) {
        c.seed = seed;
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BsoConfig>) return run_bso(problem, c);
        else if constexpr (std::is_same_v<T, PsoConfig>) return run_pso(problem, c);
        else return run_bas(problem, c);
      },
      config);
}

TrialSummary summarize(std::string problem, std::string algorithm,
                       std::span<const double> final_best, std::span<const double> times_s,
                       std::vector<std::uint64_t> seeds) {
  const std::size_t n = final_best.size();
  if (n == 0) throw std::invalid_argument("summarize: no trials");
  if (times_s.size() != n || seeds.size() != n) {
    throw std::invalid_argument("summarize: trial vectors differ in length");
  }
  std::vector<double> v(final_best.begin(), final_best.end());
  std::sort(v.begin(), v.end());
  std::vector<double> t(times_s.begin(), times_s.end());
  std::sort(t.begin(), t.end());

  TrialSummary s;
  s.problem = std::move(problem);
  s.algorithm = std::move(algorithm);
  s.n_trials = n;
  s.ave = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.ave) * (x - s.ave);
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  s.ave_time_s = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(n);
  s.best = v.front();
  s.worst = v.back();
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  // Rounding in the mean can leave it a hair below the minimum when all
  // trials agree.
  s.ave = std::clamp(s.ave, s.best, s.worst);
  s.seeds = std::move(seeds);
  return s;
}

std::size_t thread_budget() {
  if (const char* env = std::getenv("BSO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

TrialSummary summarize_runs(const std::string& problem_id, const SolverConfig& config,
                            const std::vector<RunRecord>& runs) {
  std::vector<double> finals;
  std::vector<double> times;
  std::vector<std::uint64_t> seeds;
  for (const RunRecord& r : runs) {
    finals.push_back(r.best_f);
    times.push_back(r.wall_time_s);
    seeds.push_back(r.seed);
  }
  return summarize(problem_id, to_string(algorithm_of(config)), finals, times, seeds);
}

}  // namespace

TrialBatch run_trials(const SolverConfig& config, const Problem& problem, std::size_t n_trials,
                      std::uint64_t base_seed, std::size_t threads) {
  if (n_trials == 0) throw std::invalid_argument("run_trials: n_trials must be >= 1");
  TrialBatch batch;
  batch.runs.resize(n_trials);
  parallel_for(n_trials, threads, [&](std::size_t i) {
    batch.runs[i] = run_solver(problem, config, base_seed + i);
  });
  batch.summary = summarize_runs(problem.id, config, batch.runs);
  return batch;
}

ConstrainedBatch run_constrained_trials(const SolverConfig& config,
                                        const constrained::ConstrainedProblem& problem,
                                        const constrained::PenaltyConfig& penalty,
                                        std::size_t n_trials, std::uint64_t base_seed,
                                        std::size_t threads) {
  if (n_trials == 0) throw std::invalid_argument("run_constrained_trials: n_trials must be >= 1");
  ConstrainedBatch out;
  out.batch.runs.resize(n_trials);
  out.feasible.resize(n_trials);
  parallel_for(n_trials, threads, [&](std::size_t i) {
    auto sink = std::make_shared<constrained::FeasibleBest>();
    const Problem tracked = constrained::as_tracking_problem(problem, penalty, sink);
    out.batch.runs[i] = run_solver(tracked, config, base_seed + i);
    out.feasible[i] = *sink;
  });
  out.batch.summary = summarize_runs(problem.id, config, out.batch.runs);
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

std::string format_17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + destination.string());
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& destination) {
  out.flush();
  if (!out) throw IoError("write failed for " + destination.string());
}

}  // namespace

void export_convergence(const RunRecord& record, const std::filesystem::path& destination) {
  if (record.curve.empty()) throw std::invalid_argument("export_convergence: empty curve");
  std::ofstream out = open_for_write(destination);
  out << "iteration,best_fitness\n";
  for (std::size_t k = 0; k < record.curve.size(); ++k) {
    out << k << ',' << format_17(record.curve[k]) << '\n';
  }
  finish_write(out, destination);
}

std::vector<double> read_convergence(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw IoError("cannot read " + source.string());
  std::string line;
  if (!std::getline(in, line) || line != "iteration,best_fitness") {
    throw std::invalid_argument(source.string() + ": missing convergence header");
  }
  std::vector<double> curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument(source.string() + ": malformed row '" + line + "'");
    }
    std::size_t iteration = 0;
    const char* first = line.data();
    if (std::from_chars(first, first + comma, iteration).ec != std::errc{} ||
        iteration != curve.size()) {
      throw std::invalid_argument(source.string() + ": bad iteration index in '" + line + "'");
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first + comma + 1, first + line.size(), value);
    if (ec != std::errc{} || ptr != first + line.size()) {
      throw std::invalid_argument(source.string() + ": bad fitness in '" + line + "'");
    }
    curve.push_back(value);
  }
  return curve;
}

void export_positions(const RunRecord& record, std::size_t dim,
                      const std::filesystem::path& destination) {
  if (dim == 0) throw std::invalid_argument("export_positions: dim must be >= 1");
  std::ofstream out = open_for_write(destination);
  out << "iteration,agent";
  for (std::size_t s = 0; s < dim; ++s) out << ",x" << s;
  out << '\n';
  for (std::size_t k = 0; k < record.positions.size(); ++k) {
    const std::vector<double>& X = record.positions[k];
    for (std::size_t i = 0; i * dim < X.size(); ++i) {
      out << k << ',' << i;
      for (std::size_t s = 0; s < dim; ++s) out << ',' << format_17(X[i * dim + s]);
      out << '\n';
    }
  }
  finish_write(out, destination);
}

nlohmann::json to_json(const TrialSummary& s) {
  return {
      {"problem", s.problem}, {"algorithm", s.algorithm},   {"n_trials", s.n_trials},
      {"ave", s.ave},         {"std", s.std},               {"ave_time_s", s.ave_time_s},
      {"best", s.best},       {"median", s.median},         {"worst", s.worst},
      {"seeds", s.seeds},     {"source", s.source},
  };
}

TrialSummary trial_summary_from_json(const nlohmann::json& j) {
  TrialSummary s;
  try {
    s.problem = j.at("problem").get<std::string>();
    s.algorithm = j.at("algorithm").get<std::string>();
    s.n_trials = j.at("n_trials").get<std::size_t>();
    s.ave = j.at("ave").get<double>();
    s.std = j.at("std").get<double>();
    s.ave_time_s = j.value("ave_time_s", 0.0);
    s.best = j.value("best", s.ave);
    s.median = j.value("median", s.ave);
    s.worst = j.value("worst", s.ave);
    s.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    s.source = j.value("source", std::string("computed"));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed trial summary: ") + e.what());
  }
  return s;
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

ComparisonReport compare_report(std::span<const TrialSummary> summaries) {
  if (summaries.empty()) throw std::invalid_argument("compare_report: no summaries");

  std::vector<std::string> algorithms;
  std::vector<std::string> problems;
  std::map<std::string, std::map<std::string, const TrialSummary*>> table;  // algo -> problem
  for (const TrialSummary& s : summaries) {
    if (std::find(algorithms.begin(), algorithms.end(), s.algorithm) == algorithms.end()) {
      algorithms.push_back(s.algorithm);
    }
    if (std::find(problems.begin(), problems.end(), s.problem) == problems.end()) {
      problems.push_back(s.problem);
    }
    auto [it, inserted] = table[s.algorithm].emplace(s.problem, &s);
    if (!inserted) {
      throw std::invalid_argument("compare_report: duplicate entry for " + s.algorithm + " on " +
                                  s.problem);
    }
  }
  std::vector<std::string> mismatches;
  for (const std::string& a : algorithms) {
    std::vector<std::string> missing;
    for (const std::string& p : problems) {
      if (!table[a].contains(p)) missing.push_back(p);
    }
    if (!missing.empty()) mismatches.push_back(a + " lacks " + join(missing));
  }
  if (!mismatches.empty()) {
    throw std::invalid_argument("compare_report: problem sets differ: " + join(mismatches));
  }

  ComparisonReport report;
  report.json = {{"schema", kReportSchema}, {"algorithms", algorithms}, {"problems", problems}};
  nlohmann::json rows = nlohmann::json::array();

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"problem"};
  for (const std::string& a : algorithms) {
    header.push_back(a + ".ave");
    header.push_back(a + ".std");
    header.push_back(a + ".ave_time_s");
  }
  cells.push_back(header);
  for (const std::string& p : problems) {
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> line = {p};
    for (const std::string& a : algorithms) {
      const TrialSummary& s = *table[a][p];
      results[a] = {{"ave", s.ave},     {"std", s.std},           {"ave_time_s", s.ave_time_s},
                    {"best", s.best},   {"median", s.median},     {"n_trials", s.n_trials},
                    {"source", s.source}};
      line.push_back(format_double(s.ave));
      line.push_back(format_double(s.std));
      line.push_back(format_double(s.ave_time_s));
    }
    rows.push_back({{"problem", p}, {"results", results}});
    cells.push_back(std::move(line));
  }
  report.json["rows"] = rows;

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
  }
  std::ostringstream text;
  for (const auto& line : cells) {
    std::string out;
    for (std::size_t c = 0; c < line.size(); ++c) {
      out += c == 0 ? "" : "  ";
      out += pad(line[c], widths[c]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    text << out << '\n';
  }
  report.text = text.str();
  return report;
}

ComparisonReport compare_report(std::span<const TrialSummary> summaries,
                                const std::filesystem::path& directory) {
  ComparisonReport report = compare_report(summaries);
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create " + directory.string() + ": " + ec.message());
  const auto json_path = directory / "compare.json";
  std::ofstream json_out = open_for_write(json_path);
  json_out << report.json.dump(2) << '\n';
  finish_write(json_out, json_path);
  const auto text_path = directory / "compare.txt";
  std::ofstream text_out = open_for_write(text_path);
  text_out << report.text;
  finish_write(text_out, text_path);
  return report;
}

}  // namespace beetle
