#pragma once

// JSON views of the simulator's results. Field names are a stable
// interface for downstream tooling.

#include <string>

#include "hsp/algorithm.hpp"
#include "hsp/bounds.hpp"
#include "json.hpp"

namespace hsp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "hsp";
inline constexpr const char* kToolVersion = "0.1.0";

/// {classes: [{rep, size}], irreps: [{dim, values: [[re, im], ...]}]}
Json character_table_json(const CharacterTable& t);

/// {group, subgroup_members, irreps: [{dim, prob}]}
Json distribution_json(const std::string& group_name, const HspInstance& inst, const IrrepDistribution& dist);

/// {group, H, n, trials, seed, rate, wilson, theorem_bound, corollary_bound, omega,
///  strict_inclusion_histogram}; absent bounds are the string "vacuous".
Json estimate_json(const std::string& group_name, const HspInstance& inst, const SuccessEstimate& est);

Json martingale_json(const MartingaleReport& rep);
Json bound_report_json(const BoundReport& r);
/// {limit, epsilon, satisfied, counted, excluded_small, fraction[, violations]}
Json sieve_json(const SieveReport& r, bool include_violations);

}  // namespace hsp
