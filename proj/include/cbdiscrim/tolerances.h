#ifndef CBDISCRIM_TOLERANCES_H
#define CBDISCRIM_TOLERANCES_H

namespace cbd {

/// Every numeric tolerance used by library validation, in one place.
struct Tolerances {
    double hermiticity = 1e-10;
    double cptp = 1e-10;
    double trace = 1e-10;
    /// Eigenvalues >= -psd are accepted as non-negative.
    double psd = 1e-10;
    double pauli_sum = 1e-12;
    double pauli_constraint = 1e-12;
    double probe_norm = 1e-10;
    double probe_positivity = 1e-12;
    /// Smallest radicand allowed in closed-form spectra before flagging.
    double formula_domain = 1e-12;
    /// Jacobi stops once off-diagonal Frobenius mass <= jacobi_offdiag * ||m||_F.
    double jacobi_offdiag = 1e-14;
    int jacobi_max_sweeps = 100;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace cbd

#endif
