#include "frametk/linalg.hpp"

#include "frametk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace frametk {

namespace {

constexpr double kJacobiOrthogonality = 1e-13;
constexpr int kMaxSvdSweeps = 60;
constexpr int kMaxEigenSweeps = 100;

using Columns = std::vector<std::vector<cplx>>;

Columns to_columns(const Matrix& m) {
    Columns cols(m.cols(), std::vector<cplx>(m.rows()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) cols[j][i] = m(i, j);
    return cols;
}

Matrix from_cols(const Columns& cols, std::size_t rows) { return Matrix::from_columns(cols, rows); }

// Appends orthonormal columns to `basis` (already orthonormal) until it has
// `target` columns, picking canonical vectors with the largest residual.
void complete_orthonormal(Columns& basis, std::size_t dim, std::size_t target) {
    while (basis.size() < target) {
        std::vector<cplx> best;
        double best_norm = -1.0;
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<cplx> v(dim, cplx{0.0});
            v[i] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& b : basis) {
                    const cplx proj = inner(v, b);
                    for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * b[r];
                }
            }
            const double nv = norm2(v);
            if (nv > best_norm) {
                best_norm = nv;
                best = std::move(v);
            }
        }
        for (auto& x : best) x /= best_norm;
        basis.push_back(std::move(best));
    }
}

// One-sided Jacobi on a tall (rows >= cols) matrix.
SvdResult jacobi_svd_tall(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Columns w = to_columns(a);
    Columns v(n, std::vector<cplx>(n, cplx{0.0}));
    for (std::size_t j = 0; j < n; ++j) v[j][j] = 1.0;

    for (int sweep = 0; sweep < kMaxSvdSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                cplx gamma{0.0};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(w[p][i]);
                    beta += std::norm(w[q][i]);
                    gamma += std::conj(w[p][i]) * w[q][i];
                }
                const double g = std::abs(gamma);
                // Subnormal inner products carry too few bits for a unit phase.
                if (g < std::numeric_limits<double>::min() ||
                    g <= kJacobiOrthogonality * std::sqrt(alpha) * std::sqrt(beta))
                    continue;
                rotated = true;

                const cplx phase = std::polar(1.0, -std::arg(gamma));
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (std::size_t i = 0; i < m; ++i) {
                    const cplx wp = w[p][i];
                    const cplx wq = phase * w[q][i];
                    w[p][i] = c * wp - s * wq;
                    w[q][i] = s * wp + c * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vp = v[p][i];
                    const cplx vq = phase * v[q][i];
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(w[j]);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out;
    out.singular_values.resize(n);
    Columns u_cols;
    Columns v_cols;
    const double smax = n > 0 ? sigma[order[0]] : 0.0;
    const double negligible = smax * static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.singular_values[k] = sigma[j];
        v_cols.push_back(v[j]);
        if (sigma[j] > negligible && sigma[j] > 0.0) {
            std::vector<cplx> u = w[j];
            for (auto& x : u) x /= sigma[j];
            u_cols.push_back(std::move(u));
        }
    }
    // Negligible columns sort last, so completion keeps the column order aligned.
    complete_orthonormal(u_cols, m, n);
    out.left = from_cols(u_cols, m);
    out.right = from_cols(v_cols, n);
    return out;
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw InvalidInput("matrix entry count " + std::to_string(data_.size()) + " does not match shape " +
                           std::to_string(rows_) + "x" + std::to_string(cols_));
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidInput("matrix entry is not finite");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_real(std::size_t rows, std::size_t cols, std::span<const double> entries) {
    std::vector<cplx> z(entries.begin(), entries.end());
    return Matrix(rows, cols, std::move(z));
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<cplx>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw InvalidInput("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

std::vector<cplx> Matrix::column(std::size_t j) const {
    std::vector<cplx> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void Matrix::set_column(std::size_t j, std::span<const cplx> values) {
    if (values.size() != rows_) throw InvalidInput("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::adjoint() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

Matrix Matrix::leading_block(std::size_t n) const {
    if (n > rows_ || n > cols_) throw InvalidInput("leading block larger than matrix");
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(i, j);
    return b;
}

Matrix Matrix::column_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw InvalidInput("column block out of range");
    Matrix b(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
    return b;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double s = 0.0;
    for (const auto& z : data_) s = std::max(s, std::abs(z));
    return s;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInput("shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInput("shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(cplx s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw InvalidInput("shape mismatch in *");
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const cplx a = lhs(i, k);
            if (a == cplx{0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::vector<cplx> operator*(const Matrix& m, std::span<const cplx> x) {
    if (m.cols() != x.size()) throw InvalidInput("shape mismatch in matrix-vector product");
    std::vector<cplx> y(m.rows(), cplx{0.0});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) throw InvalidInput("inner product length mismatch");
    cplx s{0.0};
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

double norm2(std::span<const cplx> x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

Tolerance::Tolerance(double rank_rel_, double residual_abs_) : rank_rel(rank_rel_), residual_abs(residual_abs_) {
    if (!(rank_rel > 0.0 && rank_rel < 1.0)) throw InvalidInput("rank_rel must lie in (0, 1)");
    if (!(residual_abs > 0.0 && residual_abs < 1.0)) throw InvalidInput("residual_abs must lie in (0, 1)");
}

Tolerance Tolerance::for_shape(std::size_t rows, std::size_t cols) {
    return Tolerance(1e-10 * static_cast<double>(std::max<std::size_t>({rows, cols, 1})), 1e-9);
}

Tolerance Tolerance::squared_scale() const {
    return Tolerance(std::max(rank_rel * rank_rel, 1e-4 * rank_rel), residual_abs);
}

SvdResult svd(const Matrix& m) {
    if (m.empty()) throw InvalidInput("svd of a dimension-zero matrix");
    if (m.rows() >= m.cols()) return jacobi_svd_tall(m);
    SvdResult t = jacobi_svd_tall(m.adjoint());
    std::swap(t.left, t.right);
    return t;
}

EigenResult hermitian_eigen(const Matrix& m) {
    if (m.empty() || m.rows() != m.cols()) throw InvalidInput("hermitian_eigen needs a nonempty square matrix");
    const std::size_t n = m.rows();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    Matrix v = Matrix::identity(n);
    const double scale = a.frobenius_norm();

    for (int sweep = 0; sweep < kMaxEigenSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                if (p != q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale || off == 0.0) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= 1e-18 * scale || r < std::numeric_limits<double>::min()) continue;
                const cplx phase = std::polar(1.0, -std::arg(a(p, q)));
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const cplx jpp = c;
                const cplx jpq = s;
                const cplx jqp = -s * phase;
                const cplx jqq = c * phase;

                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p);
                    const cplx aiq = a(i, q);
                    a(i, p) = aip * jpp + aiq * jqp;
                    a(i, q) = aip * jpq + aiq * jqq;
                    const cplx vip = v(i, p);
                    const cplx viq = v(i, q);
                    v(i, p) = vip * jpp + viq * jqp;
                    v(i, q) = vip * jpq + viq * jqq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j);
                    const cplx aqj = a(q, j);
                    a(p, j) = std::conj(jpp) * apj + std::conj(jqp) * aqj;
                    a(q, j) = std::conj(jpq) * apj + std::conj(jqq) * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenResult out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::size_t numerical_rank(const SvdResult& s, const Tolerance& tol) {
    const double smax = s.sigma_max();
    if (smax == 0.0) return 0;
    const double cutoff = tol.rank_rel * smax;
    return static_cast<std::size_t>(
        std::count_if(s.singular_values.begin(), s.singular_values.end(), [&](double x) { return x > cutoff; }));
}

std::size_t numerical_rank(const Matrix& m, const Tolerance& tol) { return numerical_rank(svd(m), tol); }

Matrix pseudo_inverse(const Matrix& m, const Tolerance& tol) {
    const SvdResult s = svd(m);
    const std::size_t r = numerical_rank(s, tol);
    Matrix out(m.cols(), m.rows());
    for (std::size_t k = 0; k < r; ++k) {
        const double inv = 1.0 / s.singular_values[k];
        for (std::size_t i = 0; i < m.cols(); ++i) {
            const cplx vi = s.right(i, k) * inv;
            for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) += vi * std::conj(s.left(j, k));
        }
    }
    return out;
}

double operator_norm(const Matrix& m) { return m.empty() ? 0.0 : svd(m).sigma_max(); }

double smallest_retained_singular_value(const SvdResult& s, const Tolerance& tol) {
    const std::size_t r = numerical_rank(s, tol);
    return r == 0 ? 0.0 : s.singular_values[r - 1];
}

Matrix subspace_basis(const Matrix& m, Subspace which, const Tolerance& tol) {
    const SvdResult s = svd(m);
    const std::size_t r = numerical_rank(s, tol);
    if (which == Subspace::range) return s.left.column_block(0, r);

    Columns right = to_columns(s.right);
    complete_orthonormal(right, m.cols(), m.cols());
    Columns null(right.begin() + static_cast<std::ptrdiff_t>(r), right.end());
    return from_cols(null, m.cols());
}

Matrix orthogonal_complement(const Matrix& q, const Tolerance& tol) {
    if (q.cols() == 0) return Matrix::identity(q.rows());
    return subspace_basis(q.adjoint(), Subspace::nullspace, tol);
}

double containment_sine(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0) return 0.0;
    if (b.cols() == 0) return 1.0;
    const Matrix residual = a - b * (b.adjoint() * a);
    return std::min(1.0, operator_norm(residual));
}

double principal_angle(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) return std::numbers::pi / 2.0;
    if (a.cols() == 0) return 0.0;
    return std::asin(std::max(containment_sine(a, b), containment_sine(b, a)));
}

} // namespace frametk
