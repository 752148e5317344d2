#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace frametk {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Zero-sized shapes are representable
/// (an empty null-space basis is a d x 0 matrix) but rejected by the
/// factorizations.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    /// Throws InvalidInput when entries.size() != rows*cols or an entry is not finite.
    Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix from_real(std::size_t rows, std::size_t cols, std::span<const double> entries);
    static Matrix diagonal(std::span<const double> diag);
    /// Matrix whose j-th column is columns[j]; all columns must share one length.
    static Matrix from_columns(const std::vector<std::vector<cplx>>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const cplx> entries() const noexcept { return data_; }

    std::vector<cplx> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const cplx> values);

    /// Conjugate transpose.
    Matrix adjoint() const;
    /// Leading principal n x n block.
    Matrix leading_block(std::size_t n) const;
    /// Columns [first, first+count).
    Matrix column_block(std::size_t first, std::size_t count) const;

    double frobenius_norm() const;
    double max_abs() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(cplx s);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(cplx s, Matrix m);
std::vector<cplx> operator*(const Matrix& m, std::span<const cplx> x);

/// <x, y> = sum x_i conj(y_i): linear in the first slot.
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> x);

/// Cutoffs shared by rank decisions and identity checks.
struct Tolerance {
    double rank_rel;     ///< singular values <= rank_rel * sigma_max count as zero
    double residual_abs; ///< identity residuals above this fail

    /// Throws InvalidInput unless both values lie in (0, 1).
    Tolerance(double rank_rel, double residual_abs);

    /// rank_rel = 1e-10 * max(rows, cols), residual_abs = 1e-9.
    static Tolerance for_shape(std::size_t rows, std::size_t cols);

    /// Cutoff for operators whose singular values are squares of the
    /// synthesis ones (S = DD^H, G = D^H D): rank_rel' = max(rank_rel^2,
    /// 1e-4 rank_rel). The floor keeps rounding noise of the formed product
    /// (about n * eps relative) out of the rank.
    Tolerance squared_scale() const;
};

struct SvdResult {
    Matrix left;                        ///< rows x r, orthonormal columns
    std::vector<double> singular_values; ///< nonincreasing, length r = min(rows, cols)
    Matrix right;                       ///< cols x r, orthonormal columns

    double sigma_max() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
};

/// Thin SVD by one-sided (Hestenes) Jacobi rotations. Deterministic sweep
/// order; converged when every column pair is orthogonal to 1e-13 relative,
/// capped at 60 sweeps. Throws InvalidInput on a zero-sized matrix.
SvdResult svd(const Matrix& m);

struct EigenResult {
    std::vector<double> values; ///< ascending
    Matrix vectors;             ///< columns are orthonormal eigenvectors
};

/// Cyclic two-sided Jacobi for Hermitian matrices. Only the Hermitian part
/// (M + M^H)/2 is used. Throws InvalidInput if m is not square or is empty.
EigenResult hermitian_eigen(const Matrix& m);

/// Count of singular values above rank_rel * sigma_max; zero for the zero matrix.
std::size_t numerical_rank(const SvdResult& s, const Tolerance& tol);
std::size_t numerical_rank(const Matrix& m, const Tolerance& tol);

/// Moore-Penrose inverse with singular values at or below the rank cutoff dropped.
Matrix pseudo_inverse(const Matrix& m, const Tolerance& tol);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// Smallest singular value above the rank cutoff; 0 for the zero matrix.
double smallest_retained_singular_value(const SvdResult& s, const Tolerance& tol);

enum class Subspace { range, nullspace };

/// Orthonormal basis of ran(m) (rows x rank) or ker(m) (cols x (cols - rank)).
Matrix subspace_basis(const Matrix& m, Subspace which, const Tolerance& tol);

/// Orthonormal basis of the orthogonal complement of the span of the
/// (orthonormal) columns of q inside C^q.rows().
Matrix orthogonal_complement(const Matrix& q, const Tolerance& tol);

/// Sine of the largest principal angle by which span(a) leaves span(b),
/// i.e. ||(I - P_b) a||_2 for orthonormal a. 0 when a has no columns.
double containment_sine(const Matrix& a, const Matrix& b);

/// Largest principal angle (radians) between two subspaces given by
/// orthonormal bases; pi/2 when dimensions differ.
double principal_angle(const Matrix& a, const Matrix& b);

} // namespace frametk
