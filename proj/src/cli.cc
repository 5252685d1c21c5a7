#include "cbdiscrim/cli.h"

#include <cerrno>
#include <cstdlib>
#include <sstream>
#include <ostream>

#include "CLI11.hpp"
#include "cbdiscrim/claims.h"
#include "cbdiscrim/errors.h"
#include "cbdiscrim/oracle.h"
#include "cbdiscrim/report.h"
#include "cbdiscrim/scenario.h"
#include "cbdiscrim/sweep.h"

namespace cbd {

using nlohmann::json;

namespace {

struct GlobalOptions {
    ConfigOverrides overrides;
    std::string output;
    int jobs = 1;
};

/// Built-in defaults, with the seed taken from CBDISCRIM_SEED when set.
OptimizerConfig base_config() {
    OptimizerConfig cfg;
    if (const char *env = std::getenv("CBDISCRIM_SEED"); env && *env) {
        char *end = nullptr;
        errno = 0;
        unsigned long long v = std::strtoull(env, &end, 0);
        if (errno != 0 || *end != '\0' || env[0] == '-') {
            throw ValidationError(std::string("CBDISCRIM_SEED: not an unsigned integer: '") + env + "'");
        }
        cfg.seed = v;
    }
    return cfg;
}

std::string output_or(const GlobalOptions &g, const char *fallback) {
    return g.output.empty() ? fallback : g.output;
}

int cmd_discriminate(const std::string &file, const GlobalOptions &g, std::ostream &out) {
    Scenario s = scenario_from_json(read_json_file(file), "", base_config());
    g.overrides.apply(s.optimizer);
    ScenarioResult r = run_discriminate(s);
    std::string fmt = output_or(g, "text");
    if (fmt == "json") {
        out << result_to_json(r).dump(2) << "\n";
    } else if (fmt == "csv") {
        std::vector<std::string> header{"p1"};
        std::vector<std::string> cells{format_real(s.p1)};
        for (const std::string &c : result_csv_columns()) header.push_back(c);
        for (std::string &c : result_csv_cells(r)) cells.push_back(std::move(c));
        out << csv_line(header) << csv_line(cells);
    } else {
        out << result_to_text(r);
    }
    return kExitOk;
}

int cmd_sweep(const std::string &file, const GlobalOptions &g, std::ostream &out) {
    SweepSpec spec = sweep_from_json(read_json_file(file), base_config());
    g.overrides.apply(spec.base.optimizer);
    std::string fmt = output_or(g, "csv");
    if (fmt == "json") {
        std::vector<Scenario> rows = expand(spec);
        std::vector<ScenarioResult> results(rows.size());
        parallel_for(rows.size(), g.jobs, [&](std::size_t i) { results[i] = run_discriminate(rows[i]); });
        json arr = json::array();
        for (const ScenarioResult &r : results) {
            arr.push_back(result_to_json(r));
        }
        out << json{{"v", 1}, {"rows", arr}}.dump(2) << "\n";
    } else {
        out << run_sweep_csv(spec, g.jobs);
    }
    return kExitOk;
}

int cmd_verify(const GlobalOptions &g, std::ostream &out) {
    OptimizerConfig cfg = base_config();
    g.overrides.apply(cfg);
    std::vector<ClaimRow> rows = audit_claims(cfg);
    std::string fmt = output_or(g, "text");
    if (fmt == "json") {
        out << claims_to_json(rows).dump(2) << "\n";
    } else if (fmt == "csv") {
        out << claims_to_csv(rows);
    } else {
        out << claims_to_text(rows);
    }
    // The scorecard reports; it does not gate.
    return kExitOk;
}

json check_channel(const std::string &name, const ChannelSpec &spec, Rng &rng) {
    KrausChannel ch = spec.channel();
    double worst = 0;
    for (int k = 0; k < 1000; k++) {
        worst = std::max(worst, std::abs(apply_channel(ch, random_pure_qubit(rng)).mat()(0, 1)));
    }
    json j{
        {"name", name},
        {"kind", to_string(spec.kind)},
        {"cptp_residual", validate_cptp(ch).residual},
        {"coherence_breaking", is_coherence_breaking(ch, kDefaultTolerances.psd)},
        {"max_sampled_off_diagonal", worst},
        {"pauli_constraints", nullptr},
    };
    if (spec.kind == ChannelKind::Pauli) {
        j["pauli_constraints"] = cbc_pauli_check(PauliSpec(spec.q));
    }
    return j;
}

int cmd_check_cbc(const std::string &file, const GlobalOptions &g, std::ostream &out) {
    json doc = read_json_file(file);
    OptimizerConfig cfg = base_config();
    std::vector<std::pair<std::string, ChannelSpec>> channels;
    if (doc.is_object() && doc.contains("kind")) {
        channels.emplace_back("channel", channel_from_json(doc, ""));
    } else {
        Scenario s = scenario_from_json(doc, "", cfg);
        cfg = s.optimizer;
        channels.emplace_back("channel_a", s.channel_a);
        channels.emplace_back("channel_b", s.channel_b);
    }
    g.overrides.apply(cfg);
    Rng rng(cfg.seed);
    json results = json::array();
    for (const auto &[name, spec] : channels) {
        results.push_back(check_channel(name, spec, rng));
    }
    std::string fmt = output_or(g, "text");
    if (fmt == "json") {
        out << json{{"v", 1}, {"channels", results}}.dump(2) << "\n";
    } else if (fmt == "csv") {
        out << csv_line({"name", "kind", "cptp_residual", "coherence_breaking", "max_sampled_off_diagonal", "pauli_constraints"});
        for (const json &r : results) {
            out << csv_line({
                r["name"].get<std::string>(),
                r["kind"].get<std::string>(),
                format_real(r["cptp_residual"].get<double>()),
                r["coherence_breaking"].get<bool>() ? "1" : "0",
                format_real(r["max_sampled_off_diagonal"].get<double>()),
                r["pauli_constraints"].is_null() ? "" : (r["pauli_constraints"].get<bool>() ? "1" : "0"),
            });
        }
    } else {
        for (const json &r : results) {
            out << r["name"].get<std::string>() << " (" << r["kind"].get<std::string>() << "): "
                << (r["coherence_breaking"].get<bool>() ? "coherence-breaking" : "not coherence-breaking")
                << ", cptp residual " << format_real(r["cptp_residual"].get<double>())
                << ", max sampled off-diagonal " << format_real(r["max_sampled_off_diagonal"].get<double>());
            if (!r["pauli_constraints"].is_null()) {
                out << ", pauli constraints " << (r["pauli_constraints"].get<bool>() ? "hold" : "fail");
            }
            out << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Minimal-error discrimination of qubit channel pairs", "cbdiscrim"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::uint64_t seed = 0;
    int grid_points = 0;
    double tolerance = 0;
    CLI::Option *seed_opt = app.add_option("--seed", seed, "Seed for sampled checks (default: CBDISCRIM_SEED or built-in)");
    CLI::Option *grid_opt =
        app.add_option("--grid-points", grid_points, "Polar grid points of the product-probe scan")->check(CLI::Range(2, 100000));
    CLI::Option *tol_opt =
        app.add_option("--tolerance", tolerance, "Refinement stopping tolerance")->check(CLI::PositiveNumber);
    app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

    std::string file;
    CLI::App *disc = app.add_subcommand("discriminate", "Analyze one scenario file");
    disc->add_option("file", file, "Scenario JSON")->required();
    CLI::App *sweep = app.add_subcommand("sweep", "Evaluate a parameter sweep");
    sweep->add_option("file", file, "Sweep JSON")->required();
    sweep->add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 1024));
    CLI::App *verify = app.add_subcommand("verify-paper", "Score the published statements against computed values");
    CLI::App *check = app.add_subcommand("check-cbc", "Check whether channels are coherence-breaking");
    check->add_option("file", file, "Scenario or channel JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o;
        std::ostringstream e2;
        int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitInput;
    }

    if (*seed_opt) g.overrides.seed = seed;
    if (*grid_opt) g.overrides.grid_points = grid_points;
    if (*tol_opt) g.overrides.tolerance = tolerance;

    try {
        if (disc->parsed()) return cmd_discriminate(file, g, out);
        if (sweep->parsed()) return cmd_sweep(file, g, out);
        if (verify->parsed()) return cmd_verify(g, out);
        if (check->parsed()) return cmd_check_cbc(file, g, out);
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}

}  // namespace cbd
