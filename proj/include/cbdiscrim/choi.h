#ifndef CBDISCRIM_CHOI_H
#define CBDISCRIM_CHOI_H

#include <array>

#include "cbdiscrim/channel.h"
#include "cbdiscrim/cmat.h"

namespace cbd {

/// |A>> for a 2x2 operator A, with vec[2n + m] = <n|A|m> (the first tensor
/// factor carries the row index). Not normalized: <<A|A>> = Tr A^dagger A.
struct VecOperator {
    std::array<Complex, 4> vec{};

    Matrix column() const { return Matrix::column(vec); }
};

VecOperator vectorize(const Matrix &a);

/// |I>> = (1, 0, 0, 1).
VecOperator vectorized_identity();

/// Positive 2x2 probe operator [[x, z], [conj z, y]] with Tr P^2 = 1.
///
/// A pure bipartite probe |zeta>> with Tr zeta^dagger zeta = 1 corresponds to
/// P = conj(sqrt(zeta zeta^dagger)); rank-1 P are exactly the product probes.
class ProbeP {
   public:
    ProbeP(double x, double y, Complex z, const Tolerances &tol = kDefaultTolerances);

    /// Reads x, y, z off a 2x2 matrix (which must be Hermitian).
    static ProbeP from_matrix(const Matrix &p);
    /// V diag(cos alpha, sin alpha) V^dagger with V = Rz(a) Ry(b) Rz(c).
    /// |cos| and |sin| are used so every alpha yields a valid probe.
    static ProbeP from_spectral(double alpha, double a, double b, double c);
    /// I / sqrt(2): the probe that realizes the ||Delta||_1 / 2 value.
    static ProbeP maximally_mixed();
    /// Rank-1 probe for the bipartite product state |psi> (x) |anything>.
    static ProbeP product(std::span<const Complex, 2> psi);

    double x() const { return x_; }
    double y() const { return y_; }
    Complex z() const { return z_; }
    Matrix mat() const;
    bool is_rank_one(double tol = 1e-9) const;

   private:
    double x_;
    double y_;
    Complex z_;
};

/// Delta = p1 sum_n |K1_n>><<K1_n| - p2 sum_m |K2_m>><<K2_m|, with p2 = 1 - p1.
struct DeltaOperator {
    HermitianMatrix mat;
    double p1;
};

/// sum_n |K_n>><<K_n| for a qubit channel (its unnormalized Choi matrix).
Matrix choi_matrix(const KrausChannel &ch);

DeltaOperator build_delta(const KrausChannel &ch1, const KrausChannel &ch2, double p1);

/// (I (x) P) Delta (I (x) P).
HermitianMatrix sandwich(const DeltaOperator &delta, const ProbeP &p);
HermitianMatrix sandwich(const HermitianMatrix &delta, const Matrix &p);

/// Throws ValidationError unless 0 <= p1 <= 1.
void check_prior(double p1);

}  // namespace cbd

#endif
