#pragma once

// JSON views of library results (schema "cnflab/1").

#include <json.hpp>

#include "cnflab/certify.hpp"
#include "cnflab/conflict.hpp"
#include "cnflab/constructions.hpp"
#include "cnflab/experiment.hpp"
#include "cnflab/numerics.hpp"
#include "cnflab/oracle.hpp"
#include "cnflab/sparsify.hpp"

namespace cnflab {

inline constexpr const char* kSchema = "cnflab/1";

[[nodiscard]] nlohmann::json to_json(const ConflictStats& s);
[[nodiscard]] nlohmann::json to_json(const LkParams& p);
[[nodiscard]] nlohmann::json to_json(const Certificate& c);
[[nodiscard]] nlohmann::json to_json(const OracleResult& r);
[[nodiscard]] nlohmann::json to_json(const MonteCarloEstimate& m);
[[nodiscard]] nlohmann::json to_json(const ExperimentReport& r);
[[nodiscard]] nlohmann::json to_json(const NumericsReport& r);
[[nodiscard]] nlohmann::json to_json(const QSequence& q);
[[nodiscard]] nlohmann::json to_json(const SparsifyStep& step, std::size_t index);
[[nodiscard]] nlohmann::json sparsify_outcome_json(const SparsifyTrace& trace);

// Per-variable probabilities from {"1": 0.7, "2": 0.5, ...}; missing
// variables get `fallback`.
[[nodiscard]] AssignmentDistribution distribution_from_json(const nlohmann::json& j, Var num_variables,
                                                            double fallback = 0.5);

}  // namespace cnflab
