#ifndef CBDISCRIM_CMAT_H
#define CBDISCRIM_CMAT_H

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cbdiscrim/errors.h"
#include "cbdiscrim/tolerances.h"

namespace cbd {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 8;

/// Dense row-major complex matrix with at most 8 rows and 8 columns.
///
/// Storage is inline (no heap allocation), so matrices are cheap to copy and
/// are plain values. Every constructor rejects non-finite entries.
class Matrix {
   public:
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::span<const Complex> row_major);
    /// Nested-list construction, e.g. `Matrix({{1, 0}, {0, -1}})`.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Complex> diag);
    static Matrix diagonal(std::initializer_list<Complex> diag);
    /// Column vector from its entries.
    static Matrix column(std::span<const Complex> entries);
    static Matrix column(std::initializer_list<Complex> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return {data_.data(), rows_ * cols_}; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;
    Complex trace() const;
    double frobenius_norm() const;
    /// Largest entry magnitude.
    double max_abs() const;

    Matrix &operator+=(const Matrix &other);
    Matrix &operator-=(const Matrix &other);
    Matrix &operator*=(Complex scale);

    bool operator==(const Matrix &other) const;

    std::string str() const;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::array<Complex, kMaxDim * kMaxDim> data_{};
};

Matrix operator+(Matrix a, const Matrix &b);
Matrix operator-(Matrix a, const Matrix &b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix &a, const Matrix &b);
Matrix operator*(Matrix a, Complex scale);
Matrix operator*(Complex scale, Matrix a);

/// Kronecker product; throws SizeError when the result exceeds 8x8.
Matrix kron(const Matrix &a, const Matrix &b);

/// max |a - b| over entries; shapes must match.
double max_abs_diff(const Matrix &a, const Matrix &b);

/// A square matrix checked to be Hermitian on construction.
///
/// The stored matrix is symmetrized, (m + m^dagger)/2, so downstream code sees
/// exactly real diagonals and conjugate-symmetric off-diagonals.
class HermitianMatrix {
   public:
    explicit HermitianMatrix(const Matrix &m, double tol = kDefaultTolerances.hermiticity);

    /// Skips validation; only for products known to be Hermitian up to
    /// round-off (e.g. B^dagger H B). Still symmetrizes.
    static HermitianMatrix from_trusted(const Matrix &m);

    const Matrix &mat() const { return mat_; }
    std::size_t dim() const { return mat_.rows(); }
    Complex operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

   private:
    struct Trusted {};
    HermitianMatrix(const Matrix &m, Trusted);
    Matrix mat_;
};

/// max |m - m^dagger| over entries.
double hermiticity_residual(const Matrix &m);

struct EigenSystem {
    /// Descending.
    std::vector<double> values;
    /// Column k is the unit eigenvector for values[k].
    Matrix vectors;
};

/// Real eigenvalues in descending order (cyclic complex Jacobi).
std::vector<double> hermitian_eigenvalues(const HermitianMatrix &m);
EigenSystem hermitian_eigensystem(const HermitianMatrix &m);

/// Singular values in descending order.
///
/// Hermitian input uses |eigenvalues| directly; everything else goes through
/// the eigenvalues of a^dagger a (negative round-off clamped to zero).
std::vector<double> singular_values(const Matrix &a);

/// Sum of singular values. Throws ValidationError for non-square input.
double trace_norm(const Matrix &a);
double trace_norm(const HermitianMatrix &h);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues down to -psd tolerance are treated as zero.
Matrix psd_sqrt(const HermitianMatrix &m);

}  // namespace cbd

#endif
