#include "cbdiscrim/claims.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cbdiscrim/discrimination.h"
#include "cbdiscrim/oracle.h"
#include "cbdiscrim/report.h"

namespace cbd {

namespace {

constexpr double kPi = std::numbers::pi;

KrausChannel type3(double xi, double phi) {
    return cbc_kraus({CbcFamily::Type3, xi, phi});
}

double sum_of(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return s;
}

/// The same-type example: p1 = 1/2, phi1 = pi/8, phi2 = -pi/8, xi1 = xi2 = 0.
DiscriminationProblem worked_example() {
    return DiscriminationProblem(type3(0, kPi / 8), type3(0, -kPi / 8), 0.5);
}

struct Type3Draw {
    double p1, phi1, xi1, phi2, xi2;
};

Type3Draw draw_type3(Rng &rng) {
    return {rng.uniform(), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
}

PauliSpec cbc_pauli(Rng &rng) {
    double q0 = rng.uniform(0, 0.5);
    return PauliSpec({q0, 0.5 - q0, 0.5 - q0, q0});
}

ClaimRow row(std::string id, std::string statement, std::string claimed) {
    ClaimRow r;
    r.id = std::move(id);
    r.statement = std::move(statement);
    r.claimed = std::move(claimed);
    return r;
}

void judge(ClaimRow &r, bool holds) {
    r.status = holds ? ClaimStatus::Pass : ClaimStatus::FailAsPrinted;
}

ClaimRow cbc1_vs_cbc2(const OptimizerConfig &cfg) {
    ClaimRow r = row("cbc1_vs_cbc2", "cbc1 and cbc2 are perfectly distinguishable for every prior", "p_E = p_E' = 0");
    double worst = 0;
    for (double p1 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        DiscriminationReport rep =
            discriminate(DiscriminationProblem(cbc_kraus({CbcFamily::Type1}), cbc_kraus({CbcFamily::Type2}), p1), cfg);
        worst = std::max({worst, rep.p_err_unassisted, rep.p_err_assisted, rep.bound});
    }
    r.claimed_value = 0;
    r.computed_value = worst;
    r.computed = "max error over p1 in {0.1, 0.3, 0.5, 0.7, 0.9}: " + format_real(worst);
    judge(r, worst <= 1e-7);
    return r;
}

/// Random cbc1-or-cbc2 vs cbc3 problems.
DiscriminationProblem draw_cross_type(Rng &rng, std::size_t k) {
    CbcSpec first{k % 2 ? CbcFamily::Type2 : CbcFamily::Type1, rng.uniform(-kPi, kPi), 0};
    CbcSpec second{CbcFamily::Type3, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
    return DiscriminationProblem(cbc_kraus(first), cbc_kraus(second), rng.uniform());
}

ClaimRow cross_type_sum(Rng &rng) {
    ClaimRow r = row(
        "cross_type_sum", "cbc1 or cbc2 vs cbc3: the singular values of Delta sum to 1 + |p1 - p2|", "1 + |p1 - p2|");
    double worst = 0;
    for (std::size_t k = 0; k < 200; k++) {
        DiscriminationProblem prob = draw_cross_type(rng, k);
        double expect = 1 + std::abs(prob.p1() - prob.p2());
        worst = std::max(worst, std::abs(sum_of(delta_singular_values(prob)) - expect));
    }
    r.computed_value = worst;
    r.computed = "max deviation over 200 draws: " + format_real(worst);
    judge(r, worst <= 1e-10);
    return r;
}

ClaimRow cross_type_unassisted(Rng &rng, const OptimizerConfig &cfg) {
    ClaimRow r = row(
        "cross_type_unassisted", "cbc1 or cbc2 vs cbc3: a single-system probe already discriminates perfectly",
        "p_E' = 0 (no gain from entanglement)");
    double worst = 0;
    for (std::size_t k = 0; k < 10; k++) {
        DiscriminationReport rep = discriminate(draw_cross_type(rng, k), cfg);
        worst = std::max({worst, rep.p_err_unassisted, rep.p_err_assisted});
    }
    r.claimed_value = 0;
    r.computed_value = worst;
    r.computed = "max error over 10 draws: " + format_real(worst);
    judge(r, worst <= 1e-6);
    return r;
}

ClaimRow cross_type_bound(Rng &rng) {
    ClaimRow r = row(
        "cross_type_bound", "cbc1 or cbc2 vs cbc3: the entangled-probe bound is 1/4 - 1/4 |p1 - p2|",
        "1/4 - 1/4 |p1 - p2|");
    double worst = 0;
    for (std::size_t k = 0; k < 200; k++) {
        DiscriminationProblem prob = draw_cross_type(rng, k);
        worst = std::max(worst, std::abs(entanglement_bound(prob) - (0.25 - 0.25 * std::abs(prob.p1() - prob.p2()))));
    }
    r.computed_value = worst;
    r.computed = "max deviation over 200 draws: " + format_real(worst);
    judge(r, worst <= 1e-12);
    return r;
}

ClaimRow type3_spectrum(Rng &rng) {
    ClaimRow r = row(
        "type3_spectrum", "cbc3 vs cbc3: the singular values of Delta are |p1 - p2 +- M| / 2, each twice",
        "closed form with the cos(xi1 - xi2) sin2phi1 sin2phi2 cross term");
    int deviations = 0;
    double worst = 0;
    for (int k = 0; k < 500; k++) {
        Type3Draw d = draw_type3(rng);
        std::array<double, 4> formula = same_type3_singulars(d.p1, d.phi1, d.xi1, d.phi2, d.xi2).singulars;
        std::vector<double> numeric =
            delta_singular_values(DiscriminationProblem(type3(d.xi1, d.phi1), type3(d.xi2, d.phi2), d.p1));
        for (std::size_t i = 0; i < 4; i++) {
            double dev = std::abs(formula[i] - numeric[i]);
            worst = std::max(worst, dev);
            deviations += dev > 1e-10;
        }
    }
    r.computed_value = worst;
    r.computed = std::to_string(deviations) + " deviations above 1e-10 in 500 draws (max " + format_real(worst) + ")";
    judge(r, deviations == 0);
    return r;
}

ClaimRow example_sum() {
    ClaimRow r = row("example_sum", "same-type example: the singular values of Delta sum to 1", "1");
    double computed = sum_of(delta_singular_values(worked_example()));
    r.claimed_value = 1;
    r.computed_value = computed;
    r.computed = format_real(computed);
    judge(r, std::abs(computed - 1) <= 1e-6);
    return r;
}

ClaimRow example_bound() {
    ClaimRow r = row("example_bound", "same-type example: the entangled-probe bound 1/2 (1 - sum / 2) equals 1/4", "1/4");
    double computed = entanglement_bound(worked_example());
    r.claimed_value = 0.25;
    r.computed_value = computed;
    r.computed = format_real(computed);
    judge(r, std::abs(computed - 0.25) <= 1e-6);
    return r;
}

ClaimRow example_unassisted(const DiscriminationReport &rep) {
    ClaimRow r = row("example_unassisted", "same-type example: the best single-system error is 1/2", "p_E' = 1/2");
    r.claimed_value = 0.5;
    r.computed_value = rep.p_err_unassisted;
    r.computed = format_real(rep.p_err_unassisted);
    judge(r, std::abs(rep.p_err_unassisted - 0.5) <= 1e-6);
    return r;
}

ClaimRow example_enhancement(const DiscriminationReport &rep) {
    ClaimRow r = row(
        "example_enhancement", "same-type example: entanglement strictly lowers the error", "p_E <= 1/4 < p_E' = 1/2");
    r.computed_value = rep.p_err_unassisted - rep.p_err_assisted;
    r.computed = "p_E = " + format_real(rep.p_err_assisted) + ", p_E' = " + format_real(rep.p_err_unassisted) +
                 ", bound = " + format_real(rep.bound);
    judge(r, rep.p_err_assisted < rep.p_err_unassisted - 1e-6);
    return r;
}

ClaimRow product_norm_form(Rng &rng, const DiscriminationReport &example, const OptimizerConfig &cfg) {
    ClaimRow r = row(
        "product_norm_form",
        "cbc3 vs cbc3: the best product-probe trace norm is "
        "p1^2 + p2^2 - 2 p1 p2 cos2phi1 cos2phi2 + 2 p1 p2 sin2phi1 sin2phi2 cos(xi1 - xi2)",
        "value at the same-type example: " + format_real(type3_unassisted_norm_as_printed(0.5, kPi / 8, 0, -kPi / 8, 0)));
    r.claimed_value = type3_unassisted_norm_as_printed(0.5, kPi / 8, 0, -kPi / 8, 0);
    double at_example = 1 - 2 * example.p_err_unassisted;
    double worst = std::abs(at_example - *r.claimed_value);
    for (int k = 0; k < 10; k++) {
        Type3Draw d = draw_type3(rng);
        UnassistedResult u =
            unassisted_error(DiscriminationProblem(type3(d.xi1, d.phi1), type3(d.xi2, d.phi2), d.p1), cfg);
        worst = std::max(worst, std::abs(u.trace_norm - type3_unassisted_norm_as_printed(d.p1, d.phi1, d.xi1, d.phi2, d.xi2)));
    }
    r.computed_value = at_example;
    r.computed = "optimized value at the example " + format_real(at_example) + "; max deviation incl. 10 draws " +
                 format_real(worst);
    judge(r, worst <= 1e-6);
    return r;
}

ClaimRow type3_predicate(Rng &rng, bool xi_form) {
    ClaimRow r = xi_form ? row("type3_predicate_xi",
                               "cbc3 vs cbc3 with sin2phi1 sin2phi2 cos(xi1 - xi2) < 0 (phase variant): bound < p_E'",
                               "holds for every such pair")
                         : row("type3_predicate",
                               "cbc3 vs cbc3 with sin2phi1 sin2phi2 cos(phi1 - phi2) < 0: bound < p_E'",
                               "holds for every such pair");
    int trials = 0;
    int holds = 0;
    while (trials < 200) {
        Type3Draw d = draw_type3(rng);
        EnhancementPredicate pred = enhancement_condition_type3(d.p1, d.phi1, d.xi1, d.phi2, d.xi2);
        if (!(xi_form ? pred.xi_variant : pred.printed)) {
            continue;
        }
        trials++;
        double bound = entanglement_bound(DiscriminationProblem(type3(d.xi1, d.phi1), type3(d.xi2, d.phi2), d.p1));
        double unassisted = error_from_norm(type3_unassisted_norm(d.p1, d.phi1, d.xi1, d.phi2, d.xi2));
        holds += bound < unassisted - 1e-9;
    }
    r.computed_value = holds;
    r.computed = std::to_string(holds) + " of " + std::to_string(trials) + " pairs satisfying the predicate";
    judge(r, holds == trials);
    return r;
}

ClaimRow coupling_phase(Rng &rng) {
    ClaimRow r = row(
        "coupling_phase", "cbc3 vs cbc3: r = p1 e^{i xi1} sin phi1 cos phi1 - p2 sin phi2 cos phi2",
        "|r| depends on the phases only through the channels");
    // Shifting both phases by c leaves the spectrum of Delta unchanged, so any
    // physically meaningful |r| must be invariant too.
    double printed_shift = 0;
    double full_shift = 0;
    double spectrum_shift = 0;
    for (int k = 0; k < 100; k++) {
        Type3Draw d = draw_type3(rng);
        double c = rng.uniform(-kPi, kPi);
        printed_shift = std::max(
            printed_shift, std::abs(std::abs(type3_coupling(d.p1, d.phi1, d.xi1, d.phi2, d.xi2, false)) -
                                    std::abs(type3_coupling(d.p1, d.phi1, d.xi1 + c, d.phi2, d.xi2 + c, false))));
        full_shift = std::max(
            full_shift, std::abs(std::abs(type3_coupling(d.p1, d.phi1, d.xi1, d.phi2, d.xi2)) -
                                 std::abs(type3_coupling(d.p1, d.phi1, d.xi1 + c, d.phi2, d.xi2 + c))));
        double a = sum_of(delta_singular_values(DiscriminationProblem(type3(d.xi1, d.phi1), type3(d.xi2, d.phi2), d.p1)));
        double b = sum_of(
            delta_singular_values(DiscriminationProblem(type3(d.xi1 + c, d.phi1), type3(d.xi2 + c, d.phi2), d.p1)));
        spectrum_shift = std::max(spectrum_shift, std::abs(a - b));
    }
    r.computed_value = printed_shift;
    r.computed = "common phase shift changes |r| by up to " + format_real(printed_shift) + " (with e^{i xi2}: " +
                 format_real(full_shift) + ", spectrum: " + format_real(spectrum_shift) + ")";
    judge(r, printed_shift <= 1e-9);
    return r;
}

ClaimRow pauli_cbc_product(Rng &rng) {
    ClaimRow r = row(
        "pauli_cbc_product", "coherence-breaking Pauli pairs (q0 = q3, q1 = q2): prod r_a >= 0", "prod r_a >= 0");
    double lowest = INFINITY;
    for (int k = 0; k < 1000; k++) {
        lowest = std::min(lowest, pauli_criterion(cbc_pauli(rng), cbc_pauli(rng), rng.uniform()).product);
    }
    r.computed_value = lowest;
    r.computed = "min product over 1000 pairs: " + format_real(lowest);
    judge(r, lowest >= 0);
    return r;
}

ClaimRow pauli_cbc_no_gain(Rng &rng, const OptimizerConfig &cfg) {
    ClaimRow r = row(
        "pauli_cbc_no_gain", "coherence-breaking Pauli pairs: entanglement cannot improve the error", "p_E = p_E'");
    double worst = 0;
    for (int k = 0; k < 20; k++) {
        PauliSpec a = cbc_pauli(rng);
        PauliSpec b = cbc_pauli(rng);
        DiscriminationReport rep = discriminate(DiscriminationProblem(pauli_kraus(a), pauli_kraus(b), rng.uniform()), cfg);
        worst = std::max(worst, rep.p_err_unassisted - rep.p_err_assisted);
    }
    r.computed_value = worst;
    r.computed = "max p_E' - p_E over 20 pairs: " + format_real(worst);
    judge(r, worst <= 5e-6);
    return r;
}

ClaimRow sacchi(Rng &rng, const OptimizerConfig &cfg) {
    ClaimRow r = row(
        "pauli_sacchi", "Pauli pairs: entanglement strictly helps iff prod (p1 q1_a - p2 q2_a) < 0",
        "numeric gain iff prod r_a < 0");
    int agree = 0;
    int total = 0;
    int negative = 0;
    while (total < 40) {
        PauliSpec a(random_simplex4(rng));
        PauliSpec b(random_simplex4(rng));
        double p1 = rng.uniform(0.1, 0.9);
        PauliCriterion c = pauli_criterion(a, b, p1);
        double smallest = INFINITY;
        for (double v : c.r) {
            smallest = std::min(smallest, std::abs(v));
        }
        // Pairs with some r_a near zero sit on the boundary of the criterion.
        if (smallest < 1e-3) {
            continue;
        }
        total++;
        negative += c.enhances;
        DiscriminationReport rep = discriminate(DiscriminationProblem(pauli_kraus(a), pauli_kraus(b), p1), cfg);
        bool gain = rep.p_err_assisted < rep.p_err_unassisted - 1e-6;
        agree += gain == c.enhances;
    }
    r.computed_value = agree;
    r.computed = std::to_string(agree) + " of " + std::to_string(total) + " pairs agree (" + std::to_string(negative) +
                 " with prod r_a < 0)";
    judge(r, agree == total);
    return r;
}

ClaimRow pauli_bound(Rng &rng, const OptimizerConfig &cfg) {
    ClaimRow r =
        row("pauli_bound", "Pauli pairs: the maximally entangled probe is optimal", "p_E = 1/2 (1 - ||Delta||_1 / 2)");
    double worst = 0;
    for (int k = 0; k < 20; k++) {
        DiscriminationProblem prob(
            pauli_kraus(PauliSpec(random_simplex4(rng))), pauli_kraus(PauliSpec(random_simplex4(rng))), rng.uniform());
        DiscriminationReport rep = discriminate(prob, cfg);
        worst = std::max(worst, std::abs(rep.p_err_assisted - rep.bound));
    }
    r.computed_value = worst;
    r.computed = "max |p_E - bound| over 20 pairs: " + format_real(worst);
    judge(r, worst <= 5e-6);
    return r;
}

ClaimRow path_equivalence(Rng &rng) {
    ClaimRow r = row(
        "path_equivalence", "||(I (x) P) Delta (I (x) P)||_1 equals the direct (Phi (x) I) trace norm",
        "agreement on every probe state");
    double worst = 0;
    for (int k = 0; k < 20; k++) {
        auto spec = [&] {
            return CbcSpec{static_cast<CbcFamily>(rng.next_u64() % 3), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
        };
        DiscriminationProblem prob(cbc_kraus(spec()), cbc_kraus(spec()), rng.uniform());
        worst = std::max(worst, crosscheck_delta_path(prob, 1000, rng, 1e-9).max_deviation);
    }
    r.computed_value = worst;
    r.computed = "max deviation over 20 pairs x 1000 states: " + format_real(worst);
    judge(r, worst <= 1e-9);
    return r;
}

ClaimRow coherence_breaking(Rng &rng) {
    ClaimRow r = row(
        "coherence_breaking", "cbc1, cbc2 and cbc3 map every input to a diagonal state", "off-diagonal output = 0");
    double worst = 0;
    bool all = true;
    for (CbcFamily f : {CbcFamily::Type1, CbcFamily::Type2, CbcFamily::Type3}) {
        KrausChannel ch = cbc_kraus({f, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)});
        all = all && is_coherence_breaking(ch, 1e-12);
        for (int k = 0; k < 1000; k++) {
            worst = std::max(worst, std::abs(apply_channel(ch, random_pure_qubit(rng)).mat()(0, 1)));
        }
    }
    r.computed_value = worst;
    r.computed = "max |off-diagonal| over 3000 Haar inputs: " + format_real(worst);
    judge(r, all && worst < 1e-12);
    return r;
}

}  // namespace

std::string to_string(ClaimStatus s) {
    return s == ClaimStatus::Pass ? "PASS" : "FAIL-AS-PRINTED";
}

std::vector<ClaimRow> audit_claims(const OptimizerConfig &cfg) {
    cfg.validate();
    std::uint64_t stream = 0;
    auto rng = [&] { return Rng(stream_seed(cfg.seed, stream++)); };
    DiscriminationReport example = discriminate(worked_example(), cfg);

    std::vector<ClaimRow> rows;
    rows.push_back(cbc1_vs_cbc2(cfg));
    Rng r1 = rng();
    rows.push_back(cross_type_sum(r1));
    Rng r2 = rng();
    rows.push_back(cross_type_unassisted(r2, cfg));
    Rng r3 = rng();
    rows.push_back(cross_type_bound(r3));
    Rng r4 = rng();
    rows.push_back(type3_spectrum(r4));
    rows.push_back(example_sum());
    rows.push_back(example_bound());
    rows.push_back(example_unassisted(example));
    rows.push_back(example_enhancement(example));
    Rng r5 = rng();
    rows.push_back(product_norm_form(r5, example, cfg));
    Rng r6 = rng();
    rows.push_back(type3_predicate(r6, false));
    Rng r7 = rng();
    rows.push_back(type3_predicate(r7, true));
    Rng r8 = rng();
    rows.push_back(coupling_phase(r8));
    Rng r9 = rng();
    rows.push_back(pauli_cbc_product(r9));
    Rng r10 = rng();
    rows.push_back(pauli_cbc_no_gain(r10, cfg));
    Rng r11 = rng();
    rows.push_back(sacchi(r11, cfg));
    Rng r12 = rng();
    rows.push_back(pauli_bound(r12, cfg));
    Rng r13 = rng();
    rows.push_back(path_equivalence(r13));
    Rng r14 = rng();
    rows.push_back(coherence_breaking(r14));
    return rows;
}

std::string claims_to_text(const std::vector<ClaimRow> &rows) {
    std::ostringstream out;
    std::size_t width = 0;
    for (const ClaimRow &r : rows) {
        width = std::max(width, r.id.size());
    }
    int passed = 0;
    for (const ClaimRow &r : rows) {
        std::string status = to_string(r.status);
        passed += r.status == ClaimStatus::Pass;
        out << status << std::string(16 - status.size(), ' ') << r.id << std::string(width + 2 - r.id.size(), ' ')
            << r.statement << "\n";
        out << std::string(16 + width + 2, ' ') << "claimed:  " << r.claimed << "\n";
        out << std::string(16 + width + 2, ' ') << "computed: " << r.computed << "\n";
    }
    out << passed << " of " << rows.size() << " statements hold as printed\n";
    return out.str();
}

nlohmann::json claims_to_json(const std::vector<ClaimRow> &rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const ClaimRow &r : rows) {
        out.push_back({
            {"id", r.id},
            {"statement", r.statement},
            {"claimed", r.claimed},
            {"computed", r.computed},
            {"claimed_value", r.claimed_value ? nlohmann::json(*r.claimed_value) : nlohmann::json(nullptr)},
            {"computed_value", r.computed_value ? nlohmann::json(*r.computed_value) : nlohmann::json(nullptr)},
            {"status", to_string(r.status)},
        });
    }
    return nlohmann::json{{"v", 1}, {"claims", out}};
}

std::string claims_to_csv(const std::vector<ClaimRow> &rows) {
    std::string out = csv_line({"id", "status", "claimed_value", "computed_value", "claimed", "computed"});
    for (const ClaimRow &r : rows) {
        out += csv_line({
            r.id,
            to_string(r.status),
            r.claimed_value ? format_real(*r.claimed_value) : "",
            r.computed_value ? format_real(*r.computed_value) : "",
            r.claimed,
            r.computed,
        });
    }
    return out;
}

}  // namespace cbd
