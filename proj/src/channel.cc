#include "cbdiscrim/channel.h"

#include <cmath>
#include <numeric>

namespace cbd {

const Matrix &pauli(int alpha) {
    static const std::array<Matrix, 4> paulis{
        Matrix({{1, 0}, {0, 1}}),
        Matrix({{0, 1}, {1, 0}}),
        Matrix({{0, Complex(0, -1)}, {Complex(0, 1), 0}}),
        Matrix({{1, 0}, {0, -1}}),
    };
    if (alpha < 0 || alpha > 3) {
        throw ValidationError("Pauli index must be 0..3");
    }
    return paulis[alpha];
}

KrausChannel::KrausChannel(std::vector<Matrix> ops, std::string label) : ops_(std::move(ops)), label_(std::move(label)) {
    if (ops_.empty()) {
        throw ValidationError("channel needs at least one Kraus operator");
    }
    for (const Matrix &k : ops_) {
        if (!k.is_square() || k.rows() != ops_.front().rows()) {
            throw ValidationError("Kraus operators must share one square shape");
        }
    }
}

KrausChannel KrausChannel::cptp(std::vector<Matrix> ops, std::string label, double tol) {
    KrausChannel ch(std::move(ops), std::move(label));
    CptpCheck check = validate_cptp(ch, tol);
    if (!check.pass) {
        throw ValidationError(
            "channel '" + ch.label() + "' is not trace preserving (residual " + std::to_string(check.residual) + ")");
    }
    return ch;
}

Matrix KrausChannel::apply_raw(const Matrix &x) const {
    if (x.rows() != dim() || x.cols() != dim()) {
        throw ValidationError("channel input dimension mismatch");
    }
    Matrix out(dim(), dim());
    for (const Matrix &k : ops_) {
        out += k * x * k.adjoint();
    }
    return out;
}

DensityMatrix::DensityMatrix(const Matrix &m, const Tolerances &tol) : mat_(m) {
    if (!m.is_square() || (m.rows() != 2 && m.rows() != 4)) {
        throw ValidationError("density matrix must be 2x2 or 4x4");
    }
    HermitianMatrix h(m, tol.hermiticity);
    Complex tr = m.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw ValidationError("density matrix trace " + std::to_string(tr.real()) + " != 1");
    }
    std::vector<double> ev = hermitian_eigenvalues(h);
    if (ev.back() < -tol.psd) {
        throw ValidationError("density matrix has negative eigenvalue " + std::to_string(ev.back()));
    }
    mat_ = h.mat();
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    double norm2 = 0;
    for (Complex v : psi) {
        norm2 += std::norm(v);
    }
    if (!(norm2 > 0)) {
        throw ValidationError("pure state vector is zero");
    }
    Matrix m(psi.size(), psi.size());
    for (std::size_t r = 0; r < psi.size(); r++) {
        for (std::size_t c = 0; c < psi.size(); c++) {
            m(r, c) = psi[r] * std::conj(psi[c]) / norm2;
        }
    }
    return DensityMatrix(m);
}

const char *to_string(CbcFamily family) {
    switch (family) {
        case CbcFamily::Type1:
            return "cbc1";
        case CbcFamily::Type2:
            return "cbc2";
        case CbcFamily::Type3:
            return "cbc3";
    }
    return "?";
}

PauliSpec::PauliSpec(std::array<double, 4> q, double tol) : q_(q) {
    double total = 0;
    for (double x : q) {
        if (!std::isfinite(x) || x < 0) {
            throw ValidationError("Pauli weights must be finite and non-negative");
        }
        total += x;
    }
    if (std::abs(total - 1) > tol) {
        throw ValidationError("Pauli weights sum to " + std::to_string(total) + ", expected 1");
    }
}

KrausChannel cbc_kraus(const CbcSpec &spec) {
    if (!std::isfinite(spec.phi) || !std::isfinite(spec.xi)) {
        throw ValidationError("CBC angles must be finite");
    }
    Complex phase = std::polar(1.0, spec.xi);
    switch (spec.family) {
        case CbcFamily::Type1:
            return KrausChannel({Matrix({{1, 0}, {0, 0}}), Matrix({{0, 1}, {0, 0}})}, "cbc1");
        case CbcFamily::Type2:
            return KrausChannel({Matrix({{0, 0}, {0, phase}}), Matrix({{0, 0}, {phase, 0}})}, "cbc2");
        case CbcFamily::Type3: {
            double s = std::sin(spec.phi);
            double c = std::cos(spec.phi);
            return KrausChannel({Matrix({{0, 0}, {-s, phase * c}}), Matrix({{c, phase * s}, {0, 0}})}, "cbc3");
        }
    }
    throw ValidationError("unknown CBC family");
}

KrausChannel pauli_kraus(const PauliSpec &spec) {
    std::vector<Matrix> ops;
    for (int a = 0; a < 4; a++) {
        if (spec[a] > 0) {
            ops.push_back(pauli(a) * std::sqrt(spec[a]));
        }
    }
    return KrausChannel(std::move(ops), "pauli");
}

CptpCheck validate_cptp(std::span<const Matrix> ops, double tol) {
    if (ops.empty()) {
        throw ValidationError("channel needs at least one Kraus operator");
    }
    std::size_t d = ops.front().rows();
    Matrix sum(d, d);
    for (const Matrix &k : ops) {
        if (!k.is_square() || k.rows() != d) {
            throw ValidationError("Kraus operators have mismatched dimensions");
        }
        sum += k.adjoint() * k;
    }
    double residual = max_abs_diff(sum, Matrix::identity(d));
    return {residual <= tol, residual};
}

CptpCheck validate_cptp(const KrausChannel &ch, double tol) {
    return validate_cptp(std::span<const Matrix>(ch.ops()), tol);
}

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho) {
    if (rho.dim() != ch.dim()) {
        throw ValidationError(
            "channel acts on dimension " + std::to_string(ch.dim()) + ", state has dimension " +
            std::to_string(rho.dim()));
    }
    return DensityMatrix(ch.apply_raw(rho.mat()));
}

KrausChannel extend_with_identity(const KrausChannel &ch) {
    if (ch.dim() != 2) {
        throw ValidationError("extend_with_identity expects a qubit channel");
    }
    std::vector<Matrix> ops;
    ops.reserve(ch.ops().size());
    Matrix id = Matrix::identity(2);
    for (const Matrix &k : ch.ops()) {
        ops.push_back(kron(k, id));
    }
    return KrausChannel(std::move(ops), ch.label() + "(x)I");
}

bool is_incoherent(const DensityMatrix &rho, double tol) {
    if (rho.dim() != 2) {
        throw ValidationError("is_incoherent expects a qubit state");
    }
    return std::abs(rho.mat()(0, 1)) <= tol && std::abs(rho.mat()(1, 0)) <= tol;
}

bool is_coherence_breaking(const KrausChannel &ch, double tol) {
    if (ch.dim() != 2) {
        throw ValidationError("is_coherence_breaking expects a qubit channel");
    }
    for (std::size_t m = 0; m < 2; m++) {
        for (std::size_t n = 0; n < 2; n++) {
            Matrix basis(2, 2);
            basis(m, n) = 1;
            Matrix out = ch.apply_raw(basis);
            if (std::abs(out(0, 1)) > tol || std::abs(out(1, 0)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace cbd
