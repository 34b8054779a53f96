#include "mvgdp/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mvgdp/errors.hpp"

namespace mvgdp {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw MechanismError("matrix data size does not match shape");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

void Matrix::ensure_finite(const char* context) const {
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw MechanismError(std::string("non-finite entry in ") + context);
        }
    }
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double v = a.data()[i];
        sum += v * v;
    }
    return std::sqrt(sum);
}

double max_abs(const Matrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        best = std::max(best, std::fabs(a.data()[i]));
    }
    return best;
}

bool is_diagonal(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j && std::fabs(a(i, j)) > tol) return false;
        }
    }
    return true;
}

bool is_identity(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            double want = (i == j) ? 1.0 : 0.0;
            if (std::fabs(a(i, j) - want) > tol) return false;
        }
    }
    return true;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

static void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw MechanismError(std::string("shape mismatch in ") + op);
    }
}

Matrix add(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "add");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "sub");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

Matrix scale(const Matrix& a, double k) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] * k;
    return c;
}

// ----- multiplication kernels -------------------------------------------------------

namespace detail {

inline void matmul_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    const std::size_t n = b.cols();
    const std::size_t k = a.cols();
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t l = 0; l < k; ++l) {
        const double av = ai[l];
        const double* bl = b.row(l);
        for (std::size_t j = 0; j < n; ++j) ci[j] += av * bl[j];
    }
}

inline void matmul_nt_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    const std::size_t k = a.cols();
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
        const double* bj = b.row(j);
        double sum = 0.0;
        for (std::size_t l = 0; l < k; ++l) sum += ai[l] * bj[l];
        ci[j] = sum;
    }
}

inline void kron_row_block(const Matrix& a, const Matrix& b, Matrix& k, std::size_t i) {
    // Fills the block row of kron(a, b) owned by row i of a.
    for (std::size_t p = 0; p < b.rows(); ++p) {
        double* dst = k.row(i * b.rows() + p);
        const double* bp = b.row(p);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double av = a(i, j);
            double* cell = dst + j * b.cols();
            for (std::size_t q = 0; q < b.cols(); ++q) cell[q] = av * bp[q];
        }
    }
}

inline void congruence_row(const Matrix& w, const std::vector<double>& d, Matrix& s,
                           std::size_t i) {
    // s(i,j) = sum_k d[k] * (w(i,k) * w(j,k)); the product w(i,k)*w(j,k) commutes
    // exactly in floating point, so s comes out symmetric to the last bit.
    const std::size_t n = w.rows();
    const std::size_t m = w.cols();
    const double* wi = w.row(i);
    for (std::size_t j = i; j < n; ++j) {
        const double* wj = w.row(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k) sum += d[k] * (wi[k] * wj[k]);
        s(i, j) = sum;
        s(j, i) = sum;
    }
}

} // namespace detail

namespace ref {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw MechanismError("shape mismatch in matmul");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) detail::matmul_row(a, b, c, i);
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw MechanismError("shape mismatch in matmul_nt");
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) detail::matmul_nt_row(a, b, c, i);
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) detail::kron_row_block(a, b, k, i);
    return k;
}

Matrix congruence_diag(const Matrix& w, const std::vector<double>& d) {
    if (w.cols() != d.size()) throw MechanismError("shape mismatch in congruence_diag");
    Matrix s(w.rows(), w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) detail::congruence_row(w, d, s, i);
    return s;
}

} // namespace ref

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw MechanismError("shape mismatch in matmul");
    Matrix c(a.rows(), b.cols());
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        detail::matmul_row(a, b, c, static_cast<std::size_t>(i));
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw MechanismError("shape mismatch in matmul_nt");
    Matrix c(a.rows(), b.rows());
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        detail::matmul_nt_row(a, b, c, static_cast<std::size_t>(i));
    }
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        detail::kron_row_block(a, b, k, static_cast<std::size_t>(i));
    }
    return k;
}

Matrix congruence_diag(const Matrix& w, const std::vector<double>& d) {
    if (w.cols() != d.size()) throw MechanismError("shape mismatch in congruence_diag");
    Matrix s(w.rows(), w.rows());
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(w.rows());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        detail::congruence_row(w, d, s, static_cast<std::size_t>(i));
    }
    return s;
}

} // namespace mvgdp
