#include "cbdiscrim/discrimination.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace cbd;
using cbd::testing::ket_bra;
using cbd::testing::kPi;

namespace {

const double kH = 1 / std::sqrt(2.0);

KrausChannel t1() {
    return cbc_kraus({CbcFamily::Type1});
}

KrausChannel t2(double xi = 0) {
    return cbc_kraus({CbcFamily::Type2, xi});
}

KrausChannel t3(double xi, double phi) {
    return cbc_kraus({CbcFamily::Type3, xi, phi});
}

std::array<double, 4> sorted_abs_eigs(const DiscriminationProblem &prob) {
    DeltaOperator d = build_delta(prob.ch1(), prob.ch2(), prob.p1());
    std::vector<double> ev = hermitian_eigenvalues(d.mat);
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; k++) {
        out[k] = std::abs(ev[k]);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

PauliSpec cbc_pauli(Rng &rng) {
    double q0 = rng.uniform(0, 0.5);
    return PauliSpec({q0, 0.5 - q0, 0.5 - q0, q0});
}

}  // namespace

TEST(discrimination, helstrom_examples) {
    DensityMatrix zero(ket_bra({1, 0}));
    DensityMatrix one(ket_bra({0, 1}));
    DensityMatrix plus(ket_bra({kH, kH}));
    EXPECT_NEAR(helstrom_error(zero, one, 0.5), 0, 1e-15);
    EXPECT_NEAR(helstrom_error(plus, plus, 0.5), 0.5, 1e-15);
    EXPECT_NEAR(helstrom_error(plus, plus, 0.8), 0.5 * (1 - 0.6), 1e-15);
    // p1 rho1 - p2 rho2 has eigenvalues +-sqrt(2)/4.
    EXPECT_NEAR(helstrom_error(zero, plus, 0.5), 0.5 * (1 - std::sqrt(2.0) / 2), 1e-14);
    Rng rng(1);
    EXPECT_THROW(helstrom_error(zero, random_pure_bipartite(rng), 0.5), ValidationError);
    EXPECT_THROW(helstrom_error(zero, one, 1.5), ValidationError);
}

TEST(discrimination, error_from_norm_clamps) {
    EXPECT_EQ(error_from_norm(1.0), 0);
    EXPECT_EQ(error_from_norm(1 + 1e-15), 0);
    EXPECT_EQ(error_from_norm(0), 0.5);
    EXPECT_EQ(error_from_norm(-1e-15), 0.5);
}

TEST(discrimination, bloch_probe_normalization) {
    BlochProbe p = BlochProbe::normalized(-0.5, 7.0);
    EXPECT_GE(p.theta, 0);
    EXPECT_LE(p.theta, kPi);
    EXPECT_GE(p.phi, 0);
    EXPECT_LT(p.phi, 2 * kPi);
    Rng rng(2);
    for (int k = 0; k < 100; k++) {
        double th = rng.uniform(-10, 10);
        double ph = rng.uniform(-10, 10);
        Matrix raw = ket_bra({std::cos(th / 2), std::polar(std::sin(th / 2), ph)});
        EXPECT_LE(max_abs_diff(BlochProbe::normalized(th, ph).density().mat(), raw), 1e-12);
    }
}

TEST(discrimination, unassisted_examples) {
    OptimizerConfig cfg;
    for (double p1 : {0.1, 0.5, 0.9}) {
        EXPECT_NEAR(unassisted_error(DiscriminationProblem(t1(), t2(0.3), p1), cfg).p_err, 0, 1e-7);
    }
    UnassistedResult r = unassisted_error(DiscriminationProblem(t1(), t3(0.4, kPi / 3), 0.5), cfg);
    EXPECT_NEAR(r.p_err, 0, 1e-7);
    // The maximizing probe is annihilated by E32 = [[cos phi, e^{i xi} sin phi], [0, 0]].
    std::array<Complex, 2> psi = r.probe.state();
    Complex e32_psi = std::cos(kPi / 3) * psi[0] + std::polar(std::sin(kPi / 3), 0.4) * psi[1];
    EXPECT_LT(std::abs(e32_psi), 1e-3);

    Rng rng(3);
    KrausChannel ch = random_kraus_channel(rng, 2);
    EXPECT_NEAR(unassisted_error(DiscriminationProblem(ch, ch, 0.7), cfg).p_err, 0.3, 1e-12);
}

TEST(discrimination, unassisted_is_deterministic) {
    Rng rng(4);
    DiscriminationProblem prob(random_kraus_channel(rng, 3), random_kraus_channel(rng, 2), 0.45);
    OptimizerConfig cfg;
    UnassistedResult a = unassisted_error(prob, cfg);
    UnassistedResult b = unassisted_error(prob, cfg);
    EXPECT_EQ(a.p_err, b.p_err);
    EXPECT_EQ(a.probe.theta, b.probe.theta);
    EXPECT_EQ(a.probe.phi, b.probe.phi);
}

TEST(discrimination, assisted_examples) {
    OptimizerConfig cfg;
    EXPECT_NEAR(assisted_error(DiscriminationProblem(t1(), t2(), 0.5), cfg).p_err, 0, 1e-7);
    KrausChannel same = t3(0.2, 0.9);
    EXPECT_NEAR(assisted_error(DiscriminationProblem(same, same, 0.5), cfg).p_err, 0.5, 1e-12);

    DiscriminationProblem worked(t3(0, kPi / 8), t3(0, -kPi / 8), 0.5);
    EXPECT_LE(assisted_error(worked, cfg).p_err, entanglement_bound(worked) + 1e-6);
}

TEST(discrimination, entanglement_bound_examples) {
    EXPECT_NEAR(entanglement_bound(DiscriminationProblem(t1(), t2(), 0.5)), 0, 1e-15);
    for (double p1 : {0.1, 0.5, 0.8}) {
        double expect = 0.25 - 0.25 * std::abs(2 * p1 - 1);
        EXPECT_NEAR(entanglement_bound(DiscriminationProblem(t1(), t3(1.0, 0.7), p1)), expect, 1e-12);
        EXPECT_NEAR(entanglement_bound(DiscriminationProblem(t2(0.3), t3(1.0, 0.7), p1)), expect, 1e-12);
    }
    KrausChannel same = t3(0.2, 0.9);
    EXPECT_NEAR(entanglement_bound(DiscriminationProblem(same, same, 0.5)), 0.5, 1e-15);
}

TEST(discrimination, bound_equals_maximally_mixed_probe_value) {
    Rng rng(5);
    for (int k = 0; k < 50; k++) {
        DiscriminationProblem prob(random_kraus_channel(rng, 1 + k % 4), random_kraus_channel(rng, 2), rng.uniform());
        DeltaOperator d = build_delta(prob.ch1(), prob.ch2(), prob.p1());
        double via_probe = error_from_norm(trace_norm(sandwich(d, ProbeP::maximally_mixed())));
        EXPECT_NEAR(entanglement_bound(prob), via_probe, 1e-12);
        std::vector<Complex> bell{kH, 0, 0, kH};
        EXPECT_NEAR(entanglement_bound(prob), error_from_norm(direct_assisted_value(prob, DensityMatrix::pure(bell))), 1e-12);
    }
}

TEST(discrimination, same_type3_singular_examples) {
    Type3Spectrum zero = same_type3_singulars(0.5, 0.4, 0.1, 0.4, 0.1);
    EXPECT_NEAR(zero.m, 0, 1e-7);
    for (double s : zero.singulars) {
        EXPECT_NEAR(s, 0, 1e-7);
    }

    Type3Spectrum ex = same_type3_singulars(0.5, kPi / 8, 0, -kPi / 8, 0);
    EXPECT_NEAR(ex.m, std::sqrt(2.0) / 2, 1e-12);
    for (double s : ex.singulars) {
        EXPECT_NEAR(s, std::sqrt(2.0) / 4, 1e-12);
    }
    EXPECT_NEAR(ex.sum(), std::sqrt(2.0), 1e-12);
    EXPECT_THROW(same_type3_singulars(1.5, 0, 0, 0, 0), ValidationError);
}

TEST(discrimination, same_type3_singulars_match_numeric_spectrum) {
    Rng rng(6);
    int mismatches = 0;
    for (int k = 0; k < 500; k++) {
        double p1 = rng.uniform();
        double f1 = rng.uniform(-kPi, kPi);
        double x1 = rng.uniform(-kPi, kPi);
        double f2 = rng.uniform(-kPi, kPi);
        double x2 = rng.uniform(-kPi, kPi);
        std::array<double, 4> formula = same_type3_singulars(p1, f1, x1, f2, x2).singulars;
        std::array<double, 4> numeric = sorted_abs_eigs(DiscriminationProblem(t3(x1, f1), t3(x2, f2), p1));
        for (std::size_t i = 0; i < 4; i++) {
            mismatches += std::abs(formula[i] - numeric[i]) > 1e-10;
        }
    }
    EXPECT_EQ(mismatches, 0);
}

TEST(discrimination, delta_singular_values_sorted) {
    std::vector<double> s = delta_singular_values(DiscriminationProblem(t1(), t2(), 0.3));
    ASSERT_EQ(s.size(), 4u);
    EXPECT_NEAR(s[0], 0.7, 1e-15);
    EXPECT_NEAR(s[1], 0.7, 1e-15);
    EXPECT_NEAR(s[2], 0.3, 1e-15);
    EXPECT_NEAR(s[3], 0.3, 1e-15);
}

TEST(discrimination, enhancement_predicate_examples) {
    EnhancementPredicate ex = enhancement_condition_type3(0.5, kPi / 8, 0, -kPi / 8, 0);
    EXPECT_TRUE(ex.printed);
    EXPECT_TRUE(ex.xi_variant);
    EnhancementPredicate pos = enhancement_condition_type3(0.5, kPi / 8, 0, kPi / 8, 0);
    EXPECT_FALSE(pos.printed);
    EXPECT_FALSE(pos.xi_variant);
    EnhancementPredicate edge = enhancement_condition_type3(0.5, kPi / 8, 0, 0, 0);
    EXPECT_FALSE(edge.printed);
    EXPECT_FALSE(edge.xi_variant);
    // The two forms differ when cos(phi1 - phi2) and cos(xi1 - xi2) have opposite signs.
    EnhancementPredicate split = enhancement_condition_type3(0.5, kPi / 8, kPi, -kPi / 8, 0);
    EXPECT_TRUE(split.printed);
    EXPECT_FALSE(split.xi_variant);
}

TEST(discrimination, type3_unassisted_norm_matches_optimizer) {
    Rng rng(7);
    OptimizerConfig cfg;
    for (int k = 0; k < 20; k++) {
        double p1 = rng.uniform();
        double f1 = rng.uniform(-kPi, kPi);
        double x1 = rng.uniform(-kPi, kPi);
        double f2 = rng.uniform(-kPi, kPi);
        double x2 = rng.uniform(-kPi, kPi);
        DiscriminationProblem prob(t3(x1, f1), t3(x2, f2), p1);
        double formula = type3_unassisted_norm(p1, f1, x1, f2, x2);
        EXPECT_NEAR(unassisted_error(prob, cfg).trace_norm, formula, 1e-6);
    }
}

TEST(discrimination, type3_coupling_and_printed_forms) {
    // The printed form drops e^{i xi2}, so the two agree only for xi2 = 0.
    Complex a = type3_coupling(0.4, 0.3, 0.5, 1.1, 0, true);
    Complex b = type3_coupling(0.4, 0.3, 0.5, 1.1, 0, false);
    EXPECT_LT(std::abs(a - b), 1e-15);
    Complex c = type3_coupling(0.4, 0.3, 0.5, 1.1, 0.5, false);
    EXPECT_GT(std::abs(type3_coupling(0.4, 0.3, 0.5, 1.1, 0.5, true) - c), 1e-3);
    // At the worked example the printed closed form vanishes while the
    // optimizer-level value is sqrt(2)/2.
    EXPECT_NEAR(type3_unassisted_norm_as_printed(0.5, kPi / 8, 0, -kPi / 8, 0), 0, 1e-15);
    EXPECT_NEAR(type3_unassisted_norm(0.5, kPi / 8, 0, -kPi / 8, 0), std::sqrt(2.0) / 2, 1e-12);
}

TEST(discrimination, discriminate_ordering_chain) {
    Rng rng(8);
    OptimizerConfig cfg;
    for (int k = 0; k < 30; k++) {
        DiscriminationProblem prob(random_kraus_channel(rng, 1 + k % 4), random_kraus_channel(rng, 1 + (k / 4) % 4), rng.uniform());
        DiscriminationReport rep = discriminate(prob, cfg);
        EXPECT_GE(rep.p_err_assisted, 0);
        EXPECT_LE(rep.p_err_unassisted, 0.5);
        EXPECT_LE(rep.p_err_assisted, rep.p_err_unassisted + 2 * cfg.tolerance);
        EXPECT_LE(rep.p_err_assisted, rep.bound + 2 * cfg.tolerance);
        EXPECT_EQ(rep.enhancement_flag, rep.p_err_assisted < rep.p_err_unassisted - cfg.tolerance);
        // Enhancement existence: a bound below the unassisted error forces an improvement.
        if (rep.bound < rep.p_err_unassisted - 2 * cfg.tolerance) {
            EXPECT_TRUE(rep.enhancement_flag);
        }
    }
}

TEST(discrimination, prior_symmetry) {
    Rng rng(9);
    OptimizerConfig cfg;
    for (int k = 0; k < 10; k++) {
        DiscriminationProblem prob(random_kraus_channel(rng, 2), random_kraus_channel(rng, 3), rng.uniform());
        DiscriminationReport a = discriminate(prob, cfg);
        DiscriminationReport b = discriminate(prob.swapped(), cfg);
        EXPECT_NEAR(a.p_err_unassisted, b.p_err_unassisted, 1e-9);
        EXPECT_NEAR(a.p_err_assisted, b.p_err_assisted, 1e-9);
        EXPECT_NEAR(a.bound, b.bound, 1e-9);
    }
}

TEST(discrimination, degenerate_priors_are_exactly_zero) {
    Rng rng(10);
    OptimizerConfig cfg;
    for (double p1 : {0.0, 1.0}) {
        DiscriminationReport rep = discriminate(DiscriminationProblem(random_kraus_channel(rng, 2), t1(), p1), cfg);
        EXPECT_EQ(rep.p_err_unassisted, 0);
        EXPECT_EQ(rep.p_err_assisted, 0);
        EXPECT_EQ(rep.bound, 0);
        EXPECT_FALSE(rep.audit_notes.empty());
        EXPECT_EQ(unassisted_error(DiscriminationProblem(t1(), t2(), p1), cfg).p_err, 0);
        EXPECT_EQ(assisted_error(DiscriminationProblem(t1(), t2(), p1), cfg).p_err, 0);
        EXPECT_EQ(entanglement_bound(DiscriminationProblem(t1(), t2(), p1)), 0);
    }
}

TEST(discrimination, worked_type3_example_has_no_enhancement) {
    OptimizerConfig cfg;
    DiscriminationReport rep = discriminate(DiscriminationProblem(t3(0, kPi / 8), t3(0, -kPi / 8), 0.5), cfg);
    double expect = 0.5 * (1 - std::sqrt(2.0) / 2);
    EXPECT_NEAR(rep.p_err_unassisted, expect, 1e-6);
    EXPECT_NEAR(rep.p_err_assisted, expect, 1e-6);
    EXPECT_NEAR(rep.bound, expect, 1e-12);
    EXPECT_FALSE(rep.enhancement_flag);
}

TEST(discrimination, cross_type_report_examples) {
    OptimizerConfig cfg;
    DiscriminationReport a = cross_type_report({CbcFamily::Type1}, {CbcFamily::Type2}, 0.3, cfg);
    EXPECT_EQ(a.delta_singulars, (std::array<double, 4>{0.7, 0.7, 0.3, 0.3}));
    EXPECT_EQ(a.p_err_unassisted, 0);
    EXPECT_EQ(a.p_err_assisted, 0);
    EXPECT_TRUE(a.audit_notes.empty());

    DiscriminationReport b = cross_type_report({CbcFamily::Type1}, {CbcFamily::Type3, kPi / 5, kPi / 3}, 0.5, cfg);
    double sum = 0;
    for (double s : b.delta_singulars) {
        sum += s;
    }
    EXPECT_NEAR(sum, 1, 1e-12);
    EXPECT_NEAR(b.bound, 0.25, 1e-12);
    EXPECT_EQ(b.p_err_unassisted, 0);
    EXPECT_TRUE(b.audit_notes.empty());

    DiscriminationReport c = cross_type_report({CbcFamily::Type2, 0.4}, {CbcFamily::Type3, 0.9, 0.2}, 0.6, cfg);
    std::array<double, 4> expect{0.6, 0.4, 0.2, 0};
    for (std::size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(c.delta_singulars[i], expect[i], 1e-12);
    }
    EXPECT_TRUE(c.audit_notes.empty());

    EXPECT_THROW(cross_type_report({CbcFamily::Type3}, {CbcFamily::Type3, 0.1, 0.2}, 0.5, cfg), ValidationError);
}

TEST(discrimination, cross_type_singulars_match_numeric_spectrum) {
    Rng rng(11);
    for (int k = 0; k < 500; k++) {
        CbcFamily fa = static_cast<CbcFamily>(rng.next_u64() % 3);
        CbcFamily fb = static_cast<CbcFamily>((static_cast<int>(fa) + 1 + rng.next_u64() % 2) % 3);
        CbcSpec a{fa, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
        CbcSpec b{fb, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
        double p1 = rng.uniform();
        std::array<double, 4> formula = cross_type_singulars(fa, fb, p1);
        std::array<double, 4> numeric = sorted_abs_eigs(DiscriminationProblem(cbc_kraus(a), cbc_kraus(b), p1));
        for (std::size_t i = 0; i < 4; i++) {
            EXPECT_NEAR(formula[i], numeric[i], 1e-10);
        }
    }
}

TEST(discrimination, pauli_criterion_examples) {
    PauliCriterion a = pauli_criterion(PauliSpec({1, 0, 0, 0}), PauliSpec({0, 1.0 / 3, 1.0 / 3, 1.0 / 3}), 0.5);
    EXPECT_NEAR(a.r[0], 0.5, 1e-15);
    for (int i = 1; i < 4; i++) {
        EXPECT_NEAR(a.r[i], -1.0 / 6, 1e-15);
    }
    EXPECT_NEAR(a.product, -1.0 / 432, 1e-15);
    EXPECT_TRUE(a.enhances);

    PauliSpec q({0.1, 0.2, 0.3, 0.4});
    PauliCriterion b = pauli_criterion(q, q, 0.5);
    EXPECT_EQ(b.product, 0);
    EXPECT_FALSE(b.enhances);

    PauliCriterion c = pauli_criterion(PauliSpec({0.25, 0.25, 0.25, 0.25}), PauliSpec({0.5, 0, 0, 0.5}), 0.5);
    std::array<double, 4> r{-0.125, 0.125, 0.125, -0.125};
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(c.r[i], r[i], 1e-15);
    }
    EXPECT_NEAR(c.product, std::pow(0.125, 4), 1e-15);
    EXPECT_FALSE(c.enhances);
}

TEST(discrimination, cbc_pauli_check_examples) {
    EXPECT_TRUE(cbc_pauli_check(PauliSpec({0.25, 0.25, 0.25, 0.25})));
    EXPECT_TRUE(cbc_pauli_check(PauliSpec({0.5, 0, 0, 0.5})));
    EXPECT_FALSE(cbc_pauli_check(PauliSpec({1, 0, 0, 0})));
}

TEST(discrimination, cbc_pauli_pairs_never_enhance) {
    Rng rng(12);
    for (int k = 0; k < 1000; k++) {
        PauliSpec a = cbc_pauli(rng);
        PauliSpec b = cbc_pauli(rng);
        ASSERT_TRUE(cbc_pauli_check(a));
        PauliCriterion c = pauli_criterion(a, b, rng.uniform());
        EXPECT_GE(c.product, 0);
        EXPECT_FALSE(c.enhances);
    }
}

TEST(discrimination, pauli_numerics_follow_product_sign) {
    Rng rng(13);
    OptimizerConfig cfg;
    int positive = 0;
    int negative = 0;
    while (positive < 10 || negative < 10) {
        PauliSpec a(random_simplex4(rng));
        PauliSpec b(random_simplex4(rng));
        double p1 = rng.uniform(0.1, 0.9);
        PauliCriterion c = pauli_criterion(a, b, p1);
        DiscriminationReport rep = discriminate(DiscriminationProblem(pauli_kraus(a), pauli_kraus(b), p1), cfg);
        if (!c.enhances && positive < 10) {
            positive++;
            EXPECT_NEAR(rep.p_err_assisted, rep.p_err_unassisted, 5 * cfg.tolerance);
        } else if (c.enhances && negative < 10) {
            negative++;
            EXPECT_LT(rep.p_err_assisted, rep.p_err_unassisted - cfg.tolerance);
        }
    }
}

TEST(discrimination, pauli_constructed_enhancing_pair) {
    OptimizerConfig cfg;
    DiscriminationProblem prob(pauli_kraus(PauliSpec({1, 0, 0, 0})), pauli_kraus(PauliSpec({0, 1.0 / 3, 1.0 / 3, 1.0 / 3})), 0.5);
    DiscriminationReport rep = discriminate(prob, cfg);
    EXPECT_NEAR(rep.p_err_unassisted, 1.0 / 6, 1e-7);
    EXPECT_NEAR(rep.p_err_assisted, 0, 1e-7);
    EXPECT_TRUE(rep.enhancement_flag);
}
