#include "cbdiscrim/sweep.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "cbdiscrim/errors.h"

namespace cbd {

using nlohmann::json;

double SweepAxis::value(int k) const {
    if (k == steps - 1) {
        return stop;
    }
    return start + k * (stop - start) / (steps - 1);
}

const std::vector<std::string> &sweep_parameter_names() {
    static const std::vector<std::string> names{"p1", "channel_a.phi", "channel_a.xi", "channel_b.phi", "channel_b.xi"};
    return names;
}

namespace {

std::string valid_names() {
    std::string out;
    for (const std::string &n : sweep_parameter_names()) {
        out += (out.empty() ? "" : ", ") + n;
    }
    return out;
}

}  // namespace

void set_parameter(Scenario &s, const std::string &name, double value) {
    if (name == "p1") {
        s.p1 = value;
        return;
    }
    auto side = [&](ChannelSpec &c, const std::string &field) {
        bool has_xi = c.kind == ChannelKind::Cbc2 || c.kind == ChannelKind::Cbc3;
        bool has_phi = c.kind == ChannelKind::Cbc3;
        if ((field == "xi" && !has_xi) || (field == "phi" && !has_phi)) {
            throw ValidationError("parameter '" + name + "' does not apply to a " + to_string(c.kind) + " channel");
        }
        (field == "xi" ? c.xi : c.phi) = value;
    };
    if (name == "channel_a.phi") return side(s.channel_a, "phi");
    if (name == "channel_a.xi") return side(s.channel_a, "xi");
    if (name == "channel_b.phi") return side(s.channel_b, "phi");
    if (name == "channel_b.xi") return side(s.channel_b, "xi");
    throw ValidationError("unknown sweep parameter '" + name + "' (valid: " + valid_names() + ")");
}

double get_parameter(const Scenario &s, const std::string &name) {
    if (name == "p1") return s.p1;
    if (name == "channel_a.phi") return s.channel_a.phi;
    if (name == "channel_a.xi") return s.channel_a.xi;
    if (name == "channel_b.phi") return s.channel_b.phi;
    if (name == "channel_b.xi") return s.channel_b.xi;
    throw ValidationError("unknown sweep parameter '" + name + "' (valid: " + valid_names() + ")");
}

SweepSpec sweep_from_json(const json &j, const OptimizerConfig &defaults) {
    if (!j.is_object()) {
        throw ValidationError("<root>: expected an object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "v" && it.key() != "scenario" && it.key() != "sweep") {
            throw ValidationError(it.key() + ": unknown field");
        }
    }
    if (!j.contains("v") || !j["v"].is_number_integer() || j["v"].get<int>() != 1) {
        throw ValidationError("v: unsupported schema version (expected 1)");
    }
    if (!j.contains("scenario")) {
        throw ValidationError("<root>: missing field 'scenario'");
    }
    if (!j.contains("sweep")) {
        throw ValidationError("<root>: missing field 'sweep'");
    }
    SweepSpec spec;
    spec.base = scenario_from_json(j["scenario"], "scenario", defaults);
    const json &axes = j["sweep"];
    if (!axes.is_array() || axes.empty() || axes.size() > 2) {
        throw ValidationError("sweep: expected one or two axes");
    }
    for (std::size_t i = 0; i < axes.size(); i++) {
        std::string path = "sweep[" + std::to_string(i) + "]";
        const json &a = axes[i];
        if (!a.is_object()) {
            throw ValidationError(path + ": expected an object");
        }
        SweepAxis axis;
        for (const char *key : {"name", "start", "stop", "steps"}) {
            if (!a.contains(key)) {
                throw ValidationError(path + ": missing field '" + key + "'");
            }
        }
        if (!a["name"].is_string()) {
            throw ValidationError(path + ".name: expected a string");
        }
        axis.name = a["name"].get<std::string>();
        if (!a["start"].is_number() || !a["stop"].is_number()) {
            throw ValidationError(path + ": start and stop must be numbers");
        }
        axis.start = a["start"].get<double>();
        axis.stop = a["stop"].get<double>();
        if (!a["steps"].is_number_integer() || a["steps"].get<int>() < 2) {
            throw ValidationError(path + ".steps: expected an integer >= 2");
        }
        axis.steps = a["steps"].get<int>();
        for (const SweepAxis &prev : spec.axes) {
            if (prev.name == axis.name) {
                throw ValidationError(path + ".name: '" + axis.name + "' is already swept");
            }
        }
        // Fail before any evaluation if the name does not resolve.
        Scenario probe = spec.base;
        try {
            set_parameter(probe, axis.name, axis.start);
        } catch (const ValidationError &e) {
            throw ValidationError(path + ".name: " + e.what());
        }
        spec.axes.push_back(axis);
    }
    return spec;
}

std::vector<Scenario> expand(const SweepSpec &spec) {
    std::vector<Scenario> rows;
    const SweepAxis &outer = spec.axes.front();
    int inner_steps = spec.axes.size() > 1 ? spec.axes[1].steps : 1;
    for (int i = 0; i < outer.steps; i++) {
        for (int k = 0; k < inner_steps; k++) {
            Scenario s = spec.base;
            set_parameter(s, outer.name, outer.value(i));
            if (spec.axes.size() > 1) {
                set_parameter(s, spec.axes[1].name, spec.axes[1].value(k));
            }
            if (s.p1 < 0 || s.p1 > 1) {
                throw ValidationError("p1: swept value " + format_real(s.p1) + " leaves [0, 1]");
            }
            rows.push_back(std::move(s));
        }
    }
    return rows;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)> &task) {
    std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(count, 1));
    std::vector<std::exception_ptr> errors(count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; i++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; w++) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    for (const std::exception_ptr &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::string run_sweep_csv(const SweepSpec &spec, int jobs) {
    std::vector<Scenario> rows = expand(spec);
    std::vector<ScenarioResult> results(rows.size());
    parallel_for(rows.size(), jobs, [&](std::size_t i) { results[i] = run_discriminate(rows[i]); });

    std::vector<std::string> header;
    for (const SweepAxis &a : spec.axes) {
        header.push_back(a.name);
    }
    for (const std::string &c : result_csv_columns()) {
        header.push_back(c);
    }
    std::string out = csv_line(header);
    for (std::size_t i = 0; i < rows.size(); i++) {
        std::vector<std::string> cells;
        for (const SweepAxis &a : spec.axes) {
            cells.push_back(format_real(get_parameter(rows[i], a.name)));
        }
        for (std::string &c : result_csv_cells(results[i])) {
            cells.push_back(std::move(c));
        }
        out += csv_line(cells);
    }
    return out;
}

}  // namespace cbd
