#include "cbdiscrim/choi.h"

#include <cmath>

namespace cbd {

VecOperator vectorize(const Matrix &a) {
    if (a.rows() != 2 || a.cols() != 2) {
        throw ValidationError("vectorize expects a 2x2 operator");
    }
    VecOperator v;
    for (std::size_t n = 0; n < 2; n++) {
        for (std::size_t m = 0; m < 2; m++) {
            v.vec[2 * n + m] = a(n, m);
        }
    }
    return v;
}

VecOperator vectorized_identity() {
    return VecOperator{{1, 0, 0, 1}};
}

ProbeP::ProbeP(double x, double y, Complex z, const Tolerances &tol) : x_(x), y_(y), z_(z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ValidationError("probe entries must be finite");
    }
    if (x < 0 || y < 0) {
        throw ValidationError("probe diagonal must be non-negative");
    }
    if (x * y < std::norm(z) - tol.probe_positivity) {
        throw ValidationError("probe is not positive semidefinite (xy < |z|^2)");
    }
    double norm = x * x + y * y + 2 * std::norm(z);
    if (std::abs(norm - 1) > tol.probe_norm) {
        throw ValidationError("probe must satisfy Tr P^2 = 1 (got " + std::to_string(norm) + ")");
    }
}

ProbeP ProbeP::from_matrix(const Matrix &p) {
    if (p.rows() != 2 || p.cols() != 2) {
        throw ValidationError("probe must be 2x2");
    }
    if (hermiticity_residual(p) > kDefaultTolerances.hermiticity) {
        throw ValidationError("probe must be Hermitian");
    }
    // Round-off can push a vanishing diagonal entry just below zero.
    auto clamp = [](double v) { return (v < 0 && v > -kDefaultTolerances.probe_positivity) ? 0.0 : v; };
    return ProbeP(clamp(p(0, 0).real()), clamp(p(1, 1).real()), 0.5 * (p(0, 1) + std::conj(p(1, 0))));
}

ProbeP ProbeP::from_spectral(double alpha, double a, double b, double c) {
    Matrix rz_a = Matrix::diagonal({std::polar(1.0, -a / 2), std::polar(1.0, a / 2)});
    Matrix rz_c = Matrix::diagonal({std::polar(1.0, -c / 2), std::polar(1.0, c / 2)});
    Matrix ry = Matrix({{std::cos(b / 2), -std::sin(b / 2)}, {std::sin(b / 2), std::cos(b / 2)}});
    Matrix v = rz_a * ry * rz_c;
    Matrix d = Matrix::diagonal({std::abs(std::cos(alpha)), std::abs(std::sin(alpha))});
    return from_matrix(v * d * v.adjoint());
}

ProbeP ProbeP::maximally_mixed() {
    return ProbeP(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0);
}

ProbeP ProbeP::product(std::span<const Complex, 2> psi) {
    double norm2 = std::norm(psi[0]) + std::norm(psi[1]);
    if (!(norm2 > 0)) {
        throw ValidationError("product probe from zero vector");
    }
    return ProbeP(std::norm(psi[0]) / norm2, std::norm(psi[1]) / norm2, std::conj(psi[0] * std::conj(psi[1])) / norm2);
}

Matrix ProbeP::mat() const {
    return Matrix({{x_, z_}, {std::conj(z_), y_}});
}

bool ProbeP::is_rank_one(double tol) const {
    return std::abs(x_ * y_ - std::norm(z_)) <= tol;
}

void check_prior(double p1) {
    if (!std::isfinite(p1) || p1 < 0 || p1 > 1) {
        throw ValidationError("prior p1 must lie in [0, 1], got " + std::to_string(p1));
    }
}

Matrix choi_matrix(const KrausChannel &ch) {
    if (ch.dim() != 2) {
        throw ValidationError("choi_matrix expects a qubit channel");
    }
    Matrix out(4, 4);
    for (const Matrix &k : ch.ops()) {
        Matrix v = vectorize(k).column();
        out += v * v.adjoint();
    }
    return out;
}

DeltaOperator build_delta(const KrausChannel &ch1, const KrausChannel &ch2, double p1) {
    check_prior(p1);
    for (const KrausChannel *ch : {&ch1, &ch2}) {
        CptpCheck check = validate_cptp(*ch);
        if (!check.pass) {
            throw ValidationError("channel '" + ch->label() + "' is not trace preserving");
        }
    }
    double p2 = 1 - p1;
    Matrix d = choi_matrix(ch1) * p1 - choi_matrix(ch2) * p2;
    return DeltaOperator{HermitianMatrix(d), p1};
}

HermitianMatrix sandwich(const HermitianMatrix &delta, const Matrix &p) {
    Matrix ip = kron(Matrix::identity(2), p);
    return HermitianMatrix::from_trusted(ip * delta.mat() * ip);
}

HermitianMatrix sandwich(const DeltaOperator &delta, const ProbeP &p) {
    return sandwich(delta.mat, p.mat());
}

}  // namespace cbd
