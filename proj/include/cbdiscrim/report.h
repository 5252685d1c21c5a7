#ifndef CBDISCRIM_REPORT_H
#define CBDISCRIM_REPORT_H

#include <optional>
#include <string>
#include <vector>

#include "cbdiscrim/discrimination.h"
#include "cbdiscrim/scenario.h"
#include "json.hpp"

namespace cbd {

/// A report together with the closed-form quantities that apply to the
/// scenario's channel pair.
struct ScenarioResult {
    Scenario scenario;
    DiscriminationReport report;
    /// Closed-form sum of singular values of Delta (CBC pairs only).
    std::optional<double> formula_sum;
    /// Type3 vs Type3 only.
    std::optional<EnhancementPredicate> type3_predicate;
    /// Pauli vs Pauli only.
    std::optional<PauliCriterion> pauli;
};

/// Runs the full analysis. Different-family CBC pairs go through the
/// analytic cross-type route; every other pair is optimized numerically.
ScenarioResult run_discriminate(const Scenario &s);

/// {"v": 1, "scenario": {...}, "report": {...}}. The embedded scenario
/// carries the resolved optimizer settings, so re-running it reproduces the
/// report exactly.
nlohmann::json result_to_json(const ScenarioResult &r);
std::string result_to_text(const ScenarioResult &r);

/// Column names shared by the discriminate and sweep CSV outputs.
std::vector<std::string> result_csv_columns();
std::vector<std::string> result_csv_cells(const ScenarioResult &r);

/// 17 significant digits, '.' decimal separator.
std::string format_real(double v);
/// Comma-delimited, LF-terminated; cells containing ',' '"' or a newline are quoted.
std::string csv_line(const std::vector<std::string> &cells);

}  // namespace cbd

#endif
