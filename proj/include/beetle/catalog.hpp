#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "beetle/constrained.hpp"
#include "beetle/problem.hpp"

namespace beetle {

/// Canonical id: "F1".."F23", "PV", "HB". Case-insensitive. Throws NotFound.
std::string canonical_problem_id(std::string_view id);

/// Any catalog problem. Constrained ids are wrapped with the given penalty;
/// dim applies to F1-F13 only.
Problem make_catalog_problem(std::string_view id, std::optional<std::size_t> dim = std::nullopt,
                             const constrained::PenaltyConfig& penalty = {});

/// The constrained problem behind "PV" / "HB", or nullopt for benchmarks.
std::optional<constrained::ConstrainedProblem> find_constrained(std::string_view id);

/// Expands a comma-separated list with "F<a>..F<b>" ranges, e.g.
/// "F1..F3,F16,PV" -> F1 F2 F3 F16 PV. Throws NotFound on unknown ids.
std::vector<std::string> expand_problem_list(std::string_view spec);

/// Machine-readable catalog: id, name, kind, dim, lower, upper, fmin.
nlohmann::json catalog_listing();

}  // namespace beetle
