#ifndef CBDISCRIM_SWEEP_H
#define CBDISCRIM_SWEEP_H

#include <functional>
#include <string>
#include <vector>

#include "cbdiscrim/report.h"
#include "cbdiscrim/scenario.h"
#include "json.hpp"

namespace cbd {

struct SweepAxis {
    std::string name;
    double start = 0;
    double stop = 0;
    int steps = 2;

    /// start + k (stop - start) / (steps - 1); the last point is exactly stop.
    double value(int k) const;
};

struct SweepSpec {
    Scenario base;
    /// One or two axes; with two, the first varies slowest.
    std::vector<SweepAxis> axes;
};

/// Names accepted in an axis: "p1", "channel_a.phi", "channel_a.xi",
/// "channel_b.phi", "channel_b.xi".
const std::vector<std::string> &sweep_parameter_names();

/// Sets a named parameter; throws ValidationError listing the valid names
/// for an unknown one, or when the channel kind has no such field.
void set_parameter(Scenario &s, const std::string &name, double value);

double get_parameter(const Scenario &s, const std::string &name);

/// {"v": 1, "scenario": {...}, "sweep": [{"name", "start", "stop", "steps"}, ...]}
SweepSpec sweep_from_json(const nlohmann::json &j, const OptimizerConfig &defaults = {});

/// Scenarios in row order.
std::vector<Scenario> expand(const SweepSpec &spec);

/// Evaluates every row with up to `jobs` worker threads. The text is
/// identical for every value of `jobs`.
std::string run_sweep_csv(const SweepSpec &spec, int jobs = 1);

/// Evaluates `count` independent tasks on up to `jobs` threads; exceptions
/// from the lowest failing index are rethrown after all workers finish.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)> &task);

}  // namespace cbd

#endif
