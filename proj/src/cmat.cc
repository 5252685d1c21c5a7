#include "cbdiscrim/cmat.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cbd {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows < 1 || cols < 1 || rows > kMaxDim || cols > kMaxDim) {
        throw SizeError(
            "matrix shape " + std::to_string(rows) + "x" + std::to_string(cols) +
            " outside supported range 1..8");
    }
}

void check_finite(Complex v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw ValidationError("matrix entry is not finite");
    }
}

void check_same_shape(const Matrix &a, const Matrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError(std::string(what) + ": shape mismatch");
    }
}

// Entries below this fraction of the scale are considered to be round-off
// when deciding whether a general matrix is really Hermitian.
constexpr double kHermitianFastPathRel = 1e-14;

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::span<const Complex> row_major) : Matrix(rows, cols) {
    if (row_major.size() != rows * cols) {
        throw ValidationError("matrix entry count does not match shape");
    }
    for (std::size_t k = 0; k < row_major.size(); k++) {
        check_finite(row_major[k]);
        data_[k] = row_major[k];
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : Matrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
    std::size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw ValidationError("ragged matrix literal");
        }
        std::size_t c = 0;
        for (Complex v : row) {
            check_finite(v);
            (*this)(r, c++) = v;
        }
        r++;
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t k = 0; k < diag.size(); k++) {
        check_finite(diag[k]);
        m(k, k) = diag[k];
    }
    return m;
}

Matrix Matrix::diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

Matrix Matrix::column(std::span<const Complex> entries) {
    return Matrix(entries.size(), 1, entries);
}

Matrix Matrix::column(std::initializer_list<Complex> entries) {
    return column(std::span<const Complex>(entries.begin(), entries.size()));
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

Matrix Matrix::conj() const {
    Matrix out = *this;
    for (std::size_t k = 0; k < rows_ * cols_; k++) {
        out.data_[k] = std::conj(out.data_[k]);
    }
    return out;
}

Complex Matrix::trace() const {
    if (!is_square()) {
        throw ValidationError("trace of non-square matrix");
    }
    Complex t = 0;
    for (std::size_t k = 0; k < rows_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0;
    for (Complex v : entries()) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0;
    for (Complex v : entries()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Matrix &Matrix::operator+=(const Matrix &other) {
    check_same_shape(*this, other, "matrix addition");
    for (std::size_t k = 0; k < rows_ * cols_; k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &other) {
    check_same_shape(*this, other, "matrix subtraction");
    for (std::size_t k = 0; k < rows_ * cols_; k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

Matrix &Matrix::operator*=(Complex scale) {
    check_finite(scale);
    for (std::size_t k = 0; k < rows_ * cols_; k++) {
        data_[k] *= scale;
    }
    return *this;
}

bool Matrix::operator==(const Matrix &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        return false;
    }
    return std::equal(entries().begin(), entries().end(), other.entries().begin());
}

std::string Matrix::str() const {
    std::ostringstream out;
    out.precision(6);
    out << "[";
    for (std::size_t r = 0; r < rows_; r++) {
        out << (r ? ",\n [" : "[");
        for (std::size_t c = 0; c < cols_; c++) {
            Complex v = (*this)(r, c);
            out << (c ? ", " : "") << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
        }
        out << "]";
    }
    out << "]";
    return out.str();
}

Matrix operator+(Matrix a, const Matrix &b) {
    a += b;
    return a;
}

Matrix operator-(Matrix a, const Matrix &b) {
    a -= b;
    return a;
}

Matrix operator-(Matrix a) {
    a *= -1.0;
    return a;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("matrix product: inner dimensions differ");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            Complex v = a(r, k);
            if (v == Complex(0)) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); c++) {
                out(r, c) += v * b(k, c);
            }
        }
    }
    return out;
}

Matrix operator*(Matrix a, Complex scale) {
    a *= scale;
    return a;
}

Matrix operator*(Complex scale, Matrix a) {
    a *= scale;
    return a;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    std::size_t rows = a.rows() * b.rows();
    std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxDim || cols > kMaxDim) {
        throw SizeError("kron result " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds 8x8");
    }
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            for (std::size_t k = 0; k < b.rows(); k++) {
                for (std::size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    check_same_shape(a, b, "max_abs_diff");
    double m = 0;
    for (std::size_t k = 0; k < a.entries().size(); k++) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

double hermiticity_residual(const Matrix &m) {
    if (!m.is_square()) {
        throw ValidationError("hermiticity check on non-square matrix");
    }
    double res = 0;
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = r; c < m.cols(); c++) {
            res = std::max(res, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return res;
}

HermitianMatrix::HermitianMatrix(const Matrix &m, double tol) : HermitianMatrix(m, Trusted{}) {
    double res = hermiticity_residual(m);
    if (res > tol) {
        throw ValidationError("matrix is not Hermitian (residual " + std::to_string(res) + ")");
    }
}

HermitianMatrix HermitianMatrix::from_trusted(const Matrix &m) {
    if (!m.is_square()) {
        throw ValidationError("Hermitian matrix must be square");
    }
    return HermitianMatrix(m, Trusted{});
}

HermitianMatrix::HermitianMatrix(const Matrix &m, Trusted) : mat_(m) {
    if (!m.is_square()) {
        throw ValidationError("Hermitian matrix must be square");
    }
    for (std::size_t r = 0; r < m.rows(); r++) {
        mat_(r, r) = m(r, r).real();
        for (std::size_t c = r + 1; c < m.cols(); c++) {
            Complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
            mat_(r, c) = v;
            mat_(c, r) = std::conj(v);
        }
    }
}

namespace {

double offdiag_norm(const Matrix &a) {
    double s = 0;
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(s);
}

// Cyclic Jacobi. Each rotation G = D R, with D a phase on column q making
// a(p,q) real and R a real plane rotation, zeroes a(p,q) in G^dagger a G.
EigenSystem jacobi(const HermitianMatrix &h, bool want_vectors) {
    const Tolerances &tol = kDefaultTolerances;
    Matrix a = h.mat();
    std::size_t n = a.rows();
    Matrix v = Matrix::identity(n);

    double scale = a.frobenius_norm();
    double threshold = tol.jacobi_offdiag * scale;
    bool converged = false;
    for (int sweep = 0; sweep < tol.jacobi_max_sweeps; sweep++) {
        if (offdiag_norm(a) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                Complex apq = a(p, q);
                double mag = std::abs(apq);
                if (mag == 0) {
                    continue;
                }
                Complex phase = apq / mag;
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = (aqq - app) / (2 * mag);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;

                Complex gpp = c;
                Complex gpq = s;
                Complex gqp = -s * std::conj(phase);
                Complex gqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                if (want_vectors) {
                    for (std::size_t k = 0; k < n; k++) {
                        Complex vkp = v(k, p);
                        Complex vkq = v(k, q);
                        v(k, p) = vkp * gpp + vkq * gqp;
                        v(k, q) = vkp * gpq + vkq * gqq;
                    }
                }
            }
        }
    }
    if (!converged && offdiag_norm(a) > threshold) {
        throw NumericalError("Jacobi eigensolver did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() > a(y, y).real();
    });

    EigenSystem out{{}, Matrix(n, n)};
    out.values.reserve(n);
    for (std::size_t k = 0; k < n; k++) {
        out.values.push_back(a(order[k], order[k]).real());
        if (want_vectors) {
            for (std::size_t r = 0; r < n; r++) {
                out.vectors(r, k) = v(r, order[k]);
            }
        }
    }
    return out;
}

std::vector<double> sorted_descending(std::vector<double> values) {
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return values;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const HermitianMatrix &m) {
    return jacobi(m, false).values;
}

EigenSystem hermitian_eigensystem(const HermitianMatrix &m) {
    return jacobi(m, true);
}

std::vector<double> singular_values(const Matrix &a) {
    if (a.is_square() && hermiticity_residual(a) <= kHermitianFastPathRel * std::max(1.0, a.max_abs())) {
        std::vector<double> ev = hermitian_eigenvalues(HermitianMatrix::from_trusted(a));
        for (double &x : ev) {
            x = std::abs(x);
        }
        return sorted_descending(std::move(ev));
    }
    Matrix gram = a.cols() <= a.rows() ? a.adjoint() * a : a * a.adjoint();
    std::vector<double> ev = hermitian_eigenvalues(HermitianMatrix::from_trusted(gram));
    for (double &x : ev) {
        x = std::sqrt(std::max(0.0, x));
    }
    return sorted_descending(std::move(ev));
}

double trace_norm(const Matrix &a) {
    if (!a.is_square()) {
        throw ValidationError("trace norm of non-square matrix");
    }
    std::vector<double> s = singular_values(a);
    return std::accumulate(s.begin(), s.end(), 0.0);
}

double trace_norm(const HermitianMatrix &h) {
    std::vector<double> ev = hermitian_eigenvalues(h);
    double total = 0;
    for (double x : ev) {
        total += std::abs(x);
    }
    return total;
}

Matrix psd_sqrt(const HermitianMatrix &m) {
    EigenSystem es = hermitian_eigensystem(m);
    std::size_t n = m.dim();
    if (!es.values.empty() && es.values.back() < -kDefaultTolerances.psd) {
        throw ValidationError("psd_sqrt of matrix with negative eigenvalue " + std::to_string(es.values.back()));
    }
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; k++) {
        double root = std::sqrt(std::max(0.0, es.values[k]));
        for (std::size_t r = 0; r < n; r++) {
            for (std::size_t c = 0; c < n; c++) {
                out(r, c) += root * es.vectors(r, k) * std::conj(es.vectors(c, k));
            }
        }
    }
    return out;
}

}  // namespace cbd
