#ifndef CBDISCRIM_CHANNEL_H
#define CBDISCRIM_CHANNEL_H

#include <array>
#include <span>
#include <string>
#include <vector>

#include "cbdiscrim/cmat.h"

namespace cbd {

const Matrix &pauli(int alpha);  // 0..3 -> I, X, Y, Z

/// A quantum channel given by Kraus operators, rho -> sum_n K_n rho K_n^dagger.
///
/// Construction checks only that the operator list is non-empty and that all
/// operators share one square shape. Trace preservation is checked by
/// validate_cptp, or up front by KrausChannel::cptp().
class KrausChannel {
   public:
    KrausChannel(std::vector<Matrix> ops, std::string label);

    /// Same as the constructor, plus a ValidationError unless
    /// validate_cptp passes at `tol`.
    static KrausChannel cptp(std::vector<Matrix> ops, std::string label, double tol = kDefaultTolerances.cptp);

    const std::vector<Matrix> &ops() const { return ops_; }
    const std::string &label() const { return label_; }
    std::size_t dim() const { return ops_.front().rows(); }

    /// Applies the Kraus sum to an arbitrary operator (not necessarily a state).
    Matrix apply_raw(const Matrix &x) const;

   private:
    std::vector<Matrix> ops_;
    std::string label_;
};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
   public:
    explicit DensityMatrix(const Matrix &m, const Tolerances &tol = kDefaultTolerances);
    /// |psi><psi| / <psi|psi>.
    static DensityMatrix pure(std::span<const Complex> psi);

    const Matrix &mat() const { return mat_; }
    std::size_t dim() const { return mat_.rows(); }
    HermitianMatrix hermitian() const { return HermitianMatrix::from_trusted(mat_); }

   private:
    Matrix mat_;
};

enum class CbcFamily { Type1, Type2, Type3 };

const char *to_string(CbcFamily family);

/// One of the three qubit coherence-breaking Kraus families.
/// Type1 ignores both angles, Type2 uses xi only, Type3 uses phi and xi.
struct CbcSpec {
    CbcFamily family = CbcFamily::Type1;
    double xi = 0;
    double phi = 0;
};

/// Weights (q0, q1, q2, q3) on (I, X, Y, Z).
class PauliSpec {
   public:
    explicit PauliSpec(std::array<double, 4> q, double tol = kDefaultTolerances.pauli_sum);
    const std::array<double, 4> &q() const { return q_; }
    double operator[](int alpha) const { return q_[alpha]; }

   private:
    std::array<double, 4> q_;
};

KrausChannel cbc_kraus(const CbcSpec &spec);
KrausChannel pauli_kraus(const PauliSpec &spec);

struct CptpCheck {
    bool pass;
    /// max |sum K^dagger K - I| over entries.
    double residual;
};

CptpCheck validate_cptp(std::span<const Matrix> ops, double tol = kDefaultTolerances.cptp);
CptpCheck validate_cptp(const KrausChannel &ch, double tol = kDefaultTolerances.cptp);

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho);

/// {K_n (x) I_2}: the channel acting on the first qubit of a two-qubit system.
KrausChannel extend_with_identity(const KrausChannel &ch);

/// Diagonal in the computational basis up to `tol` per off-diagonal entry.
bool is_incoherent(const DensityMatrix &rho, double tol);

/// By linearity it suffices that every Phi(|m><n|) is diagonal.
bool is_coherence_breaking(const KrausChannel &ch, double tol);

}  // namespace cbd

#endif
