#ifndef CBDISCRIM_SCENARIO_H
#define CBDISCRIM_SCENARIO_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cbdiscrim/channel.h"
#include "cbdiscrim/problem.h"
#include "json.hpp"

namespace cbd {

enum class ChannelKind { Cbc1, Cbc2, Cbc3, Pauli, Kraus };

std::string to_string(ChannelKind kind);

/// One side of a scenario as written in the input file.
struct ChannelSpec {
    ChannelKind kind = ChannelKind::Cbc1;
    double phi = 0;
    double xi = 0;
    std::array<double, 4> q{1, 0, 0, 0};
    std::vector<Matrix> ops;

    /// The CBC family, when kind is one of cbc1/cbc2/cbc3.
    std::optional<CbcSpec> cbc() const;
    KrausChannel channel() const;
};

struct Scenario {
    double p1 = 0.5;
    ChannelSpec channel_a;
    ChannelSpec channel_b;
    OptimizerConfig optimizer;

    DiscriminationProblem problem() const;
};

/// Overrides from the command line; unset fields keep the file's values.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> grid_points;
    std::optional<double> tolerance;

    void apply(OptimizerConfig &cfg) const;
};

/// Errors carry a field path, e.g. "channel_a.ops[1][0][1]: expected [re, im]".
/// Optimizer fields absent from the file take their values from `defaults`.
Scenario scenario_from_json(
    const nlohmann::json &j, const std::string &path = "", const OptimizerConfig &defaults = {});
nlohmann::json scenario_to_json(const Scenario &s);

ChannelSpec channel_from_json(const nlohmann::json &j, const std::string &path);
nlohmann::json channel_to_json(const ChannelSpec &c);

/// Parses text as JSON; syntax errors are reported with line and column.
nlohmann::json parse_json_text(const std::string &text, const std::string &source);
nlohmann::json read_json_file(const std::string &filename);

}  // namespace cbd

#endif
