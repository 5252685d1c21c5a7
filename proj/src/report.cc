#include "cbdiscrim/report.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cbd {

using nlohmann::json;

namespace {

std::string yes_no(bool b) {
    return b ? "true" : "false";
}

void add_type3_notes(ScenarioResult &r) {
    const Scenario &s = r.scenario;
    const ChannelSpec &a = s.channel_a;
    const ChannelSpec &b = s.channel_b;
    DiscriminationReport &rep = r.report;

    Type3Spectrum spec = same_type3_singulars(s.p1, a.phi, a.xi, b.phi, b.xi);
    r.formula_sum = spec.sum();
    double numeric = 0;
    for (double v : rep.delta_singulars) {
        numeric += v;
    }
    if (std::abs(numeric - spec.sum()) > 1e-10) {
        rep.audit_notes.push_back(
            "closed-form singular-value sum " + format_real(spec.sum()) + " differs from numeric " +
            format_real(numeric));
    }

    EnhancementPredicate pred = enhancement_condition_type3(s.p1, a.phi, a.xi, b.phi, b.xi);
    r.type3_predicate = pred;
    rep.audit_notes.push_back(
        "type3 enhancement predicate: cos(phi1 - phi2) form " + yes_no(pred.printed) + ", cos(xi1 - xi2) form " +
        yes_no(pred.xi_variant));

    Complex full = type3_coupling(s.p1, a.phi, a.xi, b.phi, b.xi, true);
    Complex bare = type3_coupling(s.p1, a.phi, a.xi, b.phi, b.xi, false);
    if (std::abs(full - bare) > 1e-12) {
        rep.audit_notes.push_back(
            "coupling r without e^{i xi2} on the second term: |r| = " + format_real(std::abs(bare)) +
            " instead of " + format_real(std::abs(full)));
    }

    double unassisted_norm = type3_unassisted_norm(s.p1, a.phi, a.xi, b.phi, b.xi);
    double printed_norm = type3_unassisted_norm_as_printed(s.p1, a.phi, a.xi, b.phi, b.xi);
    if (std::abs(unassisted_norm - printed_norm) > 1e-9) {
        rep.audit_notes.push_back(
            "product-probe norm closed form " + format_real(printed_norm) + " (quadratic form) vs " +
            format_real(unassisted_norm) + " (max(|p1 - p2|, M))");
    }
}

json predicate_json(const std::optional<EnhancementPredicate> &p) {
    if (!p) {
        return nullptr;
    }
    return json{{"printed", p->printed}, {"xi_variant", p->xi_variant}};
}

json pauli_json(const std::optional<PauliCriterion> &p) {
    if (!p) {
        return nullptr;
    }
    return json{{"r", p->r}, {"product", p->product}, {"enhances", p->enhances}};
}

}  // namespace

ScenarioResult run_discriminate(const Scenario &s) {
    s.optimizer.validate();
    ScenarioResult r{s, {}, std::nullopt, std::nullopt, std::nullopt};
    std::optional<CbcSpec> ca = s.channel_a.cbc();
    std::optional<CbcSpec> cb = s.channel_b.cbc();

    if (ca && cb && ca->family != cb->family) {
        r.report = cross_type_report(*ca, *cb, s.p1, s.optimizer);
        std::array<double, 4> sv = cross_type_singulars(ca->family, cb->family, s.p1);
        r.formula_sum = sv[0] + sv[1] + sv[2] + sv[3];
        return r;
    }

    r.report = discriminate(s.problem(), s.optimizer);
    if (ca && cb && ca->family == CbcFamily::Type3) {
        add_type3_notes(r);
    } else if (ca && cb) {
        // Same family Type1 or Type2: Delta = (2 p1 - 1) Choi(Phi), all analytic.
        r.formula_sum = 2 * std::abs(2 * s.p1 - 1);
    }
    if (s.channel_a.kind == ChannelKind::Pauli && s.channel_b.kind == ChannelKind::Pauli) {
        r.pauli = pauli_criterion(PauliSpec(s.channel_a.q), PauliSpec(s.channel_b.q), s.p1);
    }
    return r;
}

json result_to_json(const ScenarioResult &r) {
    const DiscriminationReport &rep = r.report;
    ProbeP p = rep.best_p;
    json report{
        {"p1", rep.p1},
        {"p_err_unassisted", rep.p_err_unassisted},
        {"p_err_assisted", rep.p_err_assisted},
        {"bound", rep.bound},
        {"best_bloch", {{"theta", rep.best_bloch.theta}, {"phi", rep.best_bloch.phi}}},
        {"best_p", {{"x", p.x()}, {"y", p.y()}, {"z", json::array({p.z().real(), p.z().imag()})}}},
        {"delta_singulars", rep.delta_singulars},
        {"enhancement_flag", rep.enhancement_flag},
        {"formula_sum", r.formula_sum ? json(*r.formula_sum) : json(nullptr)},
        {"type3_predicate", predicate_json(r.type3_predicate)},
        {"pauli_criterion", pauli_json(r.pauli)},
        {"audit_notes", rep.audit_notes},
    };
    return json{{"v", 1}, {"scenario", scenario_to_json(r.scenario)}, {"report", report}};
}

std::string result_to_text(const ScenarioResult &r) {
    const DiscriminationReport &rep = r.report;
    std::ostringstream out;
    out << "channels        " << to_string(r.scenario.channel_a.kind) << " vs " << to_string(r.scenario.channel_b.kind)
        << ", p1 = " << format_real(rep.p1) << "\n";
    out << "p_err unassisted " << format_real(rep.p_err_unassisted) << "\n";
    out << "p_err assisted   " << format_real(rep.p_err_assisted) << "\n";
    out << "bound            " << format_real(rep.bound) << "\n";
    out << "singulars        ";
    for (std::size_t k = 0; k < 4; k++) {
        out << (k ? " " : "") << format_real(rep.delta_singulars[k]);
    }
    out << "\n";
    if (r.formula_sum) {
        out << "formula sum      " << format_real(*r.formula_sum) << "\n";
    }
    out << "best product     theta " << format_real(rep.best_bloch.theta) << ", phi " << format_real(rep.best_bloch.phi)
        << "\n";
    out << "best P           x " << format_real(rep.best_p.x()) << ", y " << format_real(rep.best_p.y()) << ", z ("
        << format_real(rep.best_p.z().real()) << ", " << format_real(rep.best_p.z().imag()) << ")\n";
    out << "enhancement      " << yes_no(rep.enhancement_flag) << "\n";
    if (r.pauli) {
        out << "pauli product    " << format_real(r.pauli->product) << " (enhances: " << yes_no(r.pauli->enhances)
            << ")\n";
    }
    for (const std::string &note : rep.audit_notes) {
        out << "note: " << note << "\n";
    }
    return out.str();
}

std::vector<std::string> result_csv_columns() {
    return {"p_err_unassisted",
            "p_err_assisted",
            "bound",
            "sum_singulars",
            "formula_sum",
            "enhancement",
            "type3_predicate_printed",
            "type3_predicate_xi",
            "pauli_enhances"};
}

std::vector<std::string> result_csv_cells(const ScenarioResult &r) {
    const DiscriminationReport &rep = r.report;
    double sum = 0;
    for (double v : rep.delta_singulars) {
        sum += v;
    }
    auto opt_bool = [](bool has, bool v) { return has ? std::string(v ? "1" : "0") : std::string(); };
    return {
        format_real(rep.p_err_unassisted),
        format_real(rep.p_err_assisted),
        format_real(rep.bound),
        format_real(sum),
        r.formula_sum ? format_real(*r.formula_sum) : std::string(),
        rep.enhancement_flag ? "1" : "0",
        opt_bool(r.type3_predicate.has_value(), r.type3_predicate && r.type3_predicate->printed),
        opt_bool(r.type3_predicate.has_value(), r.type3_predicate && r.type3_predicate->xi_variant),
        opt_bool(r.pauli.has_value(), r.pauli && r.pauli->enhances),
    };
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_line(const std::vector<std::string> &cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); i++) {
        if (i) {
            out += ',';
        }
        const std::string &c = cells[i];
        if (c.find_first_of(",\"\n") == std::string::npos) {
            out += c;
            continue;
        }
        out += '"';
        for (char ch : c) {
            if (ch == '"') {
                out += '"';
            }
            out += ch;
        }
        out += '"';
    }
    out += '\n';
    return out;
}

}  // namespace cbd
