#include "cbdiscrim/discrimination.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cbdiscrim/oracle.h"

namespace cbd {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double angle, double period) {
    double r = std::fmod(angle, period);
    if (r < 0) {
        r += period;
    }
    return r;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

// Scan candidates ordered by value; earlier scan positions win ties.
struct TopK {
    struct Entry {
        double value;
        std::vector<double> point;
    };
    std::size_t k;
    std::vector<Entry> entries;

    void offer(double value, std::vector<double> point) {
        if (entries.size() == k && !(value > entries.back().value)) {
            return;
        }
        auto pos = std::find_if(entries.begin(), entries.end(), [&](const Entry &e) { return value > e.value; });
        entries.insert(pos, Entry{value, std::move(point)});
        if (entries.size() > k) {
            entries.pop_back();
        }
    }
};

Matrix kraus_sum_difference(const DiscriminationProblem &prob, const Matrix &x) {
    return prob.ch1().apply_raw(x) * prob.p1() - prob.ch2().apply_raw(x) * prob.p2();
}

Matrix bloch_density(double theta, double phi) {
    Complex a = std::cos(theta / 2);
    Complex b = std::polar(std::sin(theta / 2), phi);
    return Matrix({{a * std::conj(a), a * std::conj(b)}, {b * std::conj(a), b * std::conj(b)}});
}

double unassisted_norm_at(const DiscriminationProblem &prob, double theta, double phi) {
    return trace_norm(HermitianMatrix::from_trusted(kraus_sum_difference(prob, bloch_density(theta, phi))));
}

double assisted_norm_at(const HermitianMatrix &delta, std::span<const double> params) {
    Matrix p = ProbeP::from_spectral(params[0], params[1], params[2], params[3]).mat();
    return trace_norm(sandwich(delta, p));
}

}  // namespace

BlochProbe BlochProbe::normalized(double theta, double phi) {
    theta = wrap(theta, 2 * kPi);
    if (theta > kPi) {
        theta = 2 * kPi - theta;
        phi += kPi;
    }
    return BlochProbe{theta, wrap(phi, 2 * kPi)};
}

std::array<Complex, 2> BlochProbe::state() const {
    return {Complex(std::cos(theta / 2)), std::polar(std::sin(theta / 2), phi)};
}

DensityMatrix BlochProbe::density() const {
    return DensityMatrix(bloch_density(theta, phi));
}

double error_from_norm(double trace_norm_value) {
    return std::clamp(0.5 * (1 - trace_norm_value), 0.0, 0.5);
}

double helstrom_error(const DensityMatrix &rho1, const DensityMatrix &rho2, double p1) {
    check_prior(p1);
    if (rho1.dim() != rho2.dim()) {
        throw ValidationError("helstrom_error: state dimensions differ");
    }
    Matrix diff = rho1.mat() * p1 - rho2.mat() * (1 - p1);
    return error_from_norm(trace_norm(HermitianMatrix::from_trusted(diff)));
}

UnassistedResult unassisted_error(const DiscriminationProblem &prob, const OptimizerConfig &cfg) {
    cfg.validate();
    if (prob.is_degenerate()) {
        return {0.0, 1.0, BlochProbe{}};
    }
    int n_theta = cfg.grid_points;
    int n_phi = 2 * cfg.grid_points - 1;
    double d_theta = kPi / (n_theta - 1);
    double d_phi = 2 * kPi / (n_phi - 1);

    TopK top{3, {}};
    for (int i = 0; i < n_theta; i++) {
        for (int j = 0; j < n_phi; j++) {
            double theta = i * d_theta;
            double phi = j * d_phi;
            top.offer(unassisted_norm_at(prob, theta, phi), {theta, phi});
        }
    }

    Objective objective = [&](std::span<const double> x) { return unassisted_norm_at(prob, x[0], x[1]); };
    Box box{{-kPi, -2 * kPi}, {2 * kPi, 4 * kPi}};
    std::vector<double> step{d_theta, d_phi};

    double best_value = top.entries.front().value;
    std::vector<double> best_point = top.entries.front().point;
    for (const TopK::Entry &e : top.entries) {
        RefineResult r = refine_max(objective, e.point, box, cfg, step);
        if (r.value > best_value) {
            best_value = r.value;
            best_point = r.point;
        }
    }
    return {error_from_norm(best_value), best_value, BlochProbe::normalized(best_point[0], best_point[1])};
}

AssistedResult assisted_error(
    const DiscriminationProblem &prob, const OptimizerConfig &cfg, std::optional<BlochProbe> seed) {
    cfg.validate();
    if (prob.is_degenerate()) {
        return {0.0, 1.0, ProbeP::maximally_mixed()};
    }
    if (!seed) {
        seed = unassisted_error(prob, cfg).probe;
    }
    DeltaOperator delta = build_delta(prob.ch1(), prob.ch2(), prob.p1());

    int n_alpha = std::max(2, cfg.grid_points / 18 + 1);
    int n_b = std::max(3, cfg.grid_points / 9 + 1);
    int n_a = 2 * n_b - 1;
    double d_alpha = (kPi / 4) / (n_alpha - 1);
    double d_b = kPi / (n_b - 1);
    double d_a = 2 * kPi / (n_a - 1);

    TopK top{3, {}};
    for (int i = 0; i < n_alpha; i++) {
        for (int j = 0; j < n_b; j++) {
            for (int l = 0; l < n_a; l++) {
                std::vector<double> params{i * d_alpha, l * d_a, j * d_b, 0.0};
                double value = assisted_norm_at(delta.mat, params);
                top.offer(value, std::move(params));
            }
        }
    }

    // Rank-1 probe conj(|psi><psi|) for psi = (cos t/2, e^{i f} sin t/2) is
    // alpha = 0, a = -f, b = t.
    std::vector<std::vector<double>> starts{
        {0.0, -seed->phi, seed->theta, 0.0},
        {kPi / 4, 0.0, 0.0, 0.0},
    };
    for (const TopK::Entry &e : top.entries) {
        starts.push_back(e.point);
    }

    Objective objective = [&](std::span<const double> x) { return assisted_norm_at(delta.mat, x); };
    Box box{{0.0, -2 * kPi, -kPi, -2 * kPi}, {kPi / 4, 4 * kPi, 2 * kPi, 4 * kPi}};
    std::vector<double> step{d_alpha, d_a, d_b, d_b};

    double best_value = -1;
    std::vector<double> best_point;
    for (const std::vector<double> &s : starts) {
        RefineResult r = refine_max(objective, s, box, cfg, step);
        if (r.value > best_value) {
            best_value = r.value;
            best_point = r.point;
        }
    }
    ProbeP p = ProbeP::from_spectral(best_point[0], best_point[1], best_point[2], best_point[3]);
    return {error_from_norm(best_value), best_value, p};
}

std::vector<double> delta_singular_values(const DiscriminationProblem &prob) {
    DeltaOperator delta = build_delta(prob.ch1(), prob.ch2(), prob.p1());
    return singular_values(delta.mat.mat());
}

double entanglement_bound(const DiscriminationProblem &prob) {
    DeltaOperator delta = build_delta(prob.ch1(), prob.ch2(), prob.p1());
    return error_from_norm(trace_norm(delta.mat) / 2);
}

Type3Spectrum same_type3_singulars(double p1, double phi1, double xi1, double phi2, double xi2) {
    check_prior(p1);
    double p2 = 1 - p1;
    double radicand = p1 * p1 + p2 * p2 -
                      2 * p1 * p2 *
                          (std::cos(2 * phi1) * std::cos(2 * phi2) +
                           std::cos(xi1 - xi2) * std::sin(2 * phi1) * std::sin(2 * phi2));
    if (radicand < -kDefaultTolerances.formula_domain) {
        throw NumericalError("Type3 spectrum: negative radicand " + fmt(radicand));
    }
    double m = std::sqrt(std::max(0.0, radicand));
    double hi = 0.5 * std::abs(p1 - p2 + m);
    double lo = 0.5 * std::abs(p1 - p2 - m);
    if (lo > hi) {
        std::swap(lo, hi);
    }
    return {m, {hi, hi, lo, lo}};
}

EnhancementPredicate enhancement_condition_type3(double p1, double phi1, double xi1, double phi2, double xi2) {
    check_prior(p1);
    double sines = std::sin(2 * phi1) * std::sin(2 * phi2);
    return {sines * std::cos(phi1 - phi2) < 0, sines * std::cos(xi1 - xi2) < 0};
}

Complex type3_coupling(double p1, double phi1, double xi1, double phi2, double xi2, bool with_second_phase) {
    check_prior(p1);
    double p2 = 1 - p1;
    Complex second = p2 * std::sin(phi2) * std::cos(phi2);
    if (with_second_phase) {
        second *= std::polar(1.0, xi2);
    }
    return p1 * std::polar(1.0, xi1) * std::sin(phi1) * std::cos(phi1) - second;
}

double type3_unassisted_norm(double p1, double phi1, double xi1, double phi2, double xi2) {
    Type3Spectrum s = same_type3_singulars(p1, phi1, xi1, phi2, xi2);
    return std::max(std::abs(2 * p1 - 1), s.m);
}

double type3_unassisted_norm_as_printed(double p1, double phi1, double xi1, double phi2, double xi2) {
    check_prior(p1);
    double p2 = 1 - p1;
    return p1 * p1 + p2 * p2 - 2 * p1 * p2 * std::cos(2 * phi1) * std::cos(2 * phi2) +
           2 * p1 * p2 * std::sin(2 * phi1) * std::sin(2 * phi2) * std::cos(xi1 - xi2);
}

DiscriminationReport discriminate(const DiscriminationProblem &prob, const OptimizerConfig &cfg) {
    cfg.validate();
    DiscriminationReport rep;
    rep.p1 = prob.p1();
    std::vector<double> sv = delta_singular_values(prob);
    std::copy(sv.begin(), sv.end(), rep.delta_singulars.begin());
    rep.bound = entanglement_bound(prob);

    if (prob.is_degenerate()) {
        rep.p_err_unassisted = 0;
        rep.p_err_assisted = 0;
        rep.bound = 0;
        rep.audit_notes.push_back("prior is 0 or 1: discrimination is vacuous, all error probabilities are 0");
        return rep;
    }

    UnassistedResult un = unassisted_error(prob, cfg);
    AssistedResult as = assisted_error(prob, cfg, un.probe);
    rep.p_err_unassisted = un.p_err;
    rep.best_bloch = un.probe;
    if (as.trace_norm >= un.trace_norm) {
        rep.p_err_assisted = as.p_err;
        rep.best_p = as.probe;
    } else {
        std::array<Complex, 2> psi = un.probe.state();
        rep.p_err_assisted = un.p_err;
        rep.best_p = ProbeP::product(psi);
    }
    rep.enhancement_flag = rep.p_err_assisted < rep.p_err_unassisted - cfg.tolerance;
    if (rep.p_err_assisted > rep.bound + cfg.tolerance) {
        rep.audit_notes.push_back(
            "assisted optimum " + fmt(rep.p_err_assisted) + " exceeds the maximally-mixed probe bound " +
            fmt(rep.bound));
    }
    return rep;
}

std::array<double, 4> cross_type_singulars(CbcFamily a, CbcFamily b, double p1) {
    check_prior(p1);
    if (a == b) {
        throw ValidationError("cross_type_singulars needs channels of different families");
    }
    double p2 = 1 - p1;
    std::array<double, 4> s{};
    bool one_two = (a == CbcFamily::Type1 && b == CbcFamily::Type2) || (a == CbcFamily::Type2 && b == CbcFamily::Type1);
    if (one_two) {
        s = {p1, p1, p2, p2};
    } else {
        s = {p1, p2, std::abs(p1 - p2), 0.0};
    }
    std::stable_sort(s.begin(), s.end(), std::greater<>());
    return s;
}

DiscriminationReport cross_type_report(const CbcSpec &a, const CbcSpec &b, double p1, const OptimizerConfig &cfg) {
    if (a.family == b.family) {
        throw ValidationError("cross_type_report needs channels of different families; use same_type3_singulars");
    }
    DiscriminationProblem prob(cbc_kraus(a), cbc_kraus(b), p1);
    DiscriminationReport numeric = discriminate(prob, cfg);

    std::array<double, 4> analytic = cross_type_singulars(a.family, b.family, p1);
    double sum = analytic[0] + analytic[1] + analytic[2] + analytic[3];

    DiscriminationReport rep = numeric;
    rep.delta_singulars = analytic;
    rep.p_err_unassisted = 0;
    rep.p_err_assisted = 0;
    rep.bound = prob.is_degenerate() ? 0.0 : error_from_norm(sum / 2);
    rep.enhancement_flag = false;

    constexpr double kSpectrumTol = 1e-9;
    constexpr double kOptimizerTol = 1e-6;
    for (std::size_t k = 0; k < 4; k++) {
        if (std::abs(analytic[k] - numeric.delta_singulars[k]) > kSpectrumTol) {
            rep.audit_notes.push_back(
                "singular value " + std::to_string(k) + ": analytic " + fmt(analytic[k]) + " vs numeric " +
                fmt(numeric.delta_singulars[k]));
        }
    }
    if (std::abs(rep.bound - numeric.bound) > kSpectrumTol) {
        rep.audit_notes.push_back("bound: analytic " + fmt(rep.bound) + " vs numeric " + fmt(numeric.bound));
    }
    if (numeric.p_err_unassisted > kOptimizerTol) {
        rep.audit_notes.push_back("unassisted error: analytic 0 vs numeric " + fmt(numeric.p_err_unassisted));
    }
    if (numeric.p_err_assisted > kOptimizerTol) {
        rep.audit_notes.push_back("assisted error: analytic 0 vs numeric " + fmt(numeric.p_err_assisted));
    }
    return rep;
}

PauliCriterion pauli_criterion(const PauliSpec &q1, const PauliSpec &q2, double p1) {
    check_prior(p1);
    double p2 = 1 - p1;
    PauliCriterion out{};
    out.product = 1;
    for (int a = 0; a < 4; a++) {
        out.r[a] = p1 * q1[a] - p2 * q2[a];
        out.product *= out.r[a];
    }
    out.enhances = out.product < 0;
    return out;
}

bool cbc_pauli_check(const PauliSpec &q) {
    double tol = kDefaultTolerances.pauli_constraint;
    return std::abs(q[0] + q[1] - q[2] - q[3]) <= tol && std::abs(q[0] - q[1] + q[2] - q[3]) <= tol;
}

}  // namespace cbd
