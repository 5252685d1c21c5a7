#ifndef CBDISCRIM_CLAIMS_H
#define CBDISCRIM_CLAIMS_H

#include <optional>
#include <string>
#include <vector>

#include "cbdiscrim/problem.h"
#include "json.hpp"

namespace cbd {

enum class ClaimStatus { Pass, FailAsPrinted };

std::string to_string(ClaimStatus s);

/// One published statement, the value it asserts, and what this library computes.
struct ClaimRow {
    std::string id;
    std::string statement;
    std::string claimed;
    std::string computed;
    std::optional<double> claimed_value;
    std::optional<double> computed_value;
    ClaimStatus status = ClaimStatus::Pass;
};

/// Evaluates the fixed list of statements about coherence-breaking and Pauli
/// channel discrimination. Random draws use streams derived from cfg.seed,
/// one per row, so the scorecard is reproducible.
std::vector<ClaimRow> audit_claims(const OptimizerConfig &cfg);

std::string claims_to_text(const std::vector<ClaimRow> &rows);
nlohmann::json claims_to_json(const std::vector<ClaimRow> &rows);
std::string claims_to_csv(const std::vector<ClaimRow> &rows);

}  // namespace cbd

#endif
