#ifndef CBDISCRIM_DISCRIMINATION_H
#define CBDISCRIM_DISCRIMINATION_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cbdiscrim/channel.h"
#include "cbdiscrim/choi.h"
#include "cbdiscrim/problem.h"

namespace cbd {

/// Pure qubit probe cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct BlochProbe {
    double theta = 0;  // [0, pi]
    double phi = 0;    // [0, 2 pi)

    /// Maps any (theta, phi) to the same state with canonical ranges.
    static BlochProbe normalized(double theta, double phi);
    std::array<Complex, 2> state() const;
    DensityMatrix density() const;
};

/// 1/2 (1 - ||p1 rho1 - p2 rho2||_1), clamped to [0, 1/2] against round-off.
double helstrom_error(const DensityMatrix &rho1, const DensityMatrix &rho2, double p1);

/// Error probability for a trace-norm value t: 1/2 (1 - t), clamped to [0, 1/2].
double error_from_norm(double trace_norm_value);

struct UnassistedResult {
    double p_err;
    double trace_norm;
    BlochProbe probe;
};

struct AssistedResult {
    double p_err;
    double trace_norm;
    ProbeP probe;
};

/// Best single-system probe: a (grid_points x 2 grid_points - 1) scan over
/// (theta, phi), then simplex refinement from the three best grid points.
/// Ties keep the first point in scan order.
UnassistedResult unassisted_error(const DiscriminationProblem &prob, const OptimizerConfig &cfg);

/// Best entangled probe over P = V diag(cos a, sin a) V^dagger.
///
/// The scan covers alpha in [0, pi/4] and two Euler angles of V; refinement
/// runs over all four parameters from the three best grid points plus two
/// feasible witnesses: the product probe `seed` (or the unassisted optimum,
/// computed here when no seed is given) and P = I/sqrt(2). The result is
/// therefore never worse than either witness.
AssistedResult assisted_error(
    const DiscriminationProblem &prob,
    const OptimizerConfig &cfg,
    std::optional<BlochProbe> seed = std::nullopt);

/// 1/2 (1 - ||Delta||_1 / 2): the error achieved by the probe I/sqrt(2).
double entanglement_bound(const DiscriminationProblem &prob);

/// |eigenvalues(Delta)| in descending order.
std::vector<double> delta_singular_values(const DiscriminationProblem &prob);

/// Closed-form spectrum of Delta for two Type3 channels.
struct Type3Spectrum {
    /// M = sqrt(p1^2 + p2^2 - 2 p1 p2 (cos2phi1 cos2phi2 + cos(xi1 - xi2) sin2phi1 sin2phi2)).
    double m;
    /// {|p1 - p2 + M|/2 x2, |p1 - p2 - M|/2 x2}, descending.
    std::array<double, 4> singulars;
    double sum() const { return singulars[0] + singulars[1] + singulars[2] + singulars[3]; }
};

/// Throws NumericalError if the radicand of M is below -formula_domain.
Type3Spectrum same_type3_singulars(double p1, double phi1, double xi1, double phi2, double xi2);

struct EnhancementPredicate {
    /// sin 2phi1 sin 2phi2 cos(phi1 - phi2) < 0, the form as printed.
    bool printed;
    /// sin 2phi1 sin 2phi2 cos(xi1 - xi2) < 0.
    bool xi_variant;
};

EnhancementPredicate enhancement_condition_type3(double p1, double phi1, double xi1, double phi2, double xi2);

/// Off-diagonal coupling r of the product-probe spectrum for two Type3
/// channels. `with_second_phase` keeps e^{i xi2} on the second term; without
/// it this is the form as printed.
Complex type3_coupling(double p1, double phi1, double xi1, double phi2, double xi2, bool with_second_phase = true);

/// Maximum product-probe trace norm for two Type3 channels: max(|p1 - p2|, M).
double type3_unassisted_norm(double p1, double phi1, double xi1, double phi2, double xi2);

/// The printed closed form for the product-probe trace-norm sum,
/// p1^2 + p2^2 - 2 p1 p2 cos2phi1 cos2phi2 + 2 p1 p2 sin2phi1 sin2phi2 cos(xi1 - xi2).
double type3_unassisted_norm_as_printed(double p1, double phi1, double xi1, double phi2, double xi2);

struct DiscriminationReport {
    double p1 = 0.5;
    double p_err_unassisted = 0.5;
    double p_err_assisted = 0.5;
    double bound = 0.5;
    BlochProbe best_bloch;
    ProbeP best_p = ProbeP::maximally_mixed();
    std::array<double, 4> delta_singulars{};
    /// Numerically, assisted < unassisted - tolerance.
    bool enhancement_flag = false;
    std::vector<std::string> audit_notes;
};

/// Numeric discrimination of an arbitrary qubit-channel pair.
DiscriminationReport discriminate(const DiscriminationProblem &prob, const OptimizerConfig &cfg);

/// Analytic report for a pair of coherence-breaking channels of different
/// families, cross-checked against the numeric routes (deviations above 1e-9
/// become audit notes). Throws ValidationError for same-family input.
DiscriminationReport cross_type_report(const CbcSpec &a, const CbcSpec &b, double p1, const OptimizerConfig &cfg);

/// Analytic singular values for different-family pairs, descending.
std::array<double, 4> cross_type_singulars(CbcFamily a, CbcFamily b, double p1);

struct PauliCriterion {
    /// r_a = p1 q1_a - p2 q2_a.
    std::array<double, 4> r;
    double product;
    /// product < 0.
    bool enhances;
};

PauliCriterion pauli_criterion(const PauliSpec &q1, const PauliSpec &q2, double p1);

/// q0 + q1 - q2 - q3 = 0 and q0 - q1 + q2 - q3 = 0 (within 1e-12).
bool cbc_pauli_check(const PauliSpec &q);

}  // namespace cbd

#endif
