#include "beetle/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "beetle/benchmarks.hpp"

namespace beetle {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string canonical_problem_id(std::string_view id) {
  const std::string u = upper(id);
  if (u == "PV" || u == "HB") return u;
  if (auto b = bench::try_parse_id(u)) return bench::to_string(*b);
  throw NotFound("unknown problem " + std::string(id));
}

std::optional<constrained::ConstrainedProblem> find_constrained(std::string_view id) {
  const std::string canon = canonical_problem_id(id);
  if (canon == "PV") return constrained::pressure_vessel_problem();
  if (canon == "HB") return constrained::himmelblau_problem();
  return std::nullopt;
}

Problem make_catalog_problem(std::string_view id, std::optional<std::size_t> dim,
                             const constrained::PenaltyConfig& penalty) {
  if (auto c = find_constrained(id)) {
    if (dim && *dim != c->space.dim()) {
      throw std::invalid_argument(c->id + " has fixed dimension " + std::to_string(c->space.dim()));
    }
    return constrained::as_problem(*c, penalty);
  }
  return bench::make_problem(bench::parse_id(canonical_problem_id(id)), dim);
}

std::vector<std::string> expand_problem_list(std::string_view spec) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const std::string item = trim(spec.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(canonical_problem_id(item));
      continue;
    }
    const auto lo = bench::try_parse_id(trim(item.substr(0, dots)));
    const auto hi = bench::try_parse_id(trim(item.substr(dots + 2)));
    if (!lo || !hi || static_cast<int>(*lo) > static_cast<int>(*hi)) {
      throw NotFound("unknown problem range " + item);
    }
    for (int k = static_cast<int>(*lo); k <= static_cast<int>(*hi); ++k) {
      out.push_back(bench::to_string(static_cast<bench::BenchmarkId>(k)));
    }
  }
  return out;
}

nlohmann::json catalog_listing() {
  nlohmann::json list = nlohmann::json::array();
  for (const bench::BenchmarkSpec& s : bench::catalog()) {
    const char* family = s.family == bench::Family::unimodal     ? "unimodal"
                         : s.family == bench::Family::multimodal ? "multimodal"
                                                                 : "fixed_dimension";
    list.push_back({{"id", bench::to_string(s.id)},
                    {"name", s.name},
                    {"kind", family},
                    {"dim", s.dim},
                    {"lower", s.lower},
                    {"upper", s.upper},
                    {"fmin", s.fmin},
                    {"scalable", s.scalable},
                    {"stochastic", s.stochastic}});
  }
  for (const auto& c : {constrained::pressure_vessel_problem(), constrained::himmelblau_problem()}) {
    list.push_back({{"id", c.id},
                    {"name", c.id == "PV" ? "pressure_vessel" : "himmelblau"},
                    {"kind", "constrained"},
                    {"dim", c.space.dim()},
                    {"lower", std::vector<double>(c.space.lower().begin(), c.space.lower().end())},
                    {"upper", std::vector<double>(c.space.upper().begin(), c.space.upper().end())},
                    {"fmin", nullptr},
                    {"scalable", false},
                    {"stochastic", false}});
  }
  return list;
}

}  // namespace beetle
