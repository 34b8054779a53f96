#pragma once

#include <cstddef>
#include <vector>

namespace mvgdp {

// Dense row-major matrix of doubles. All entries are expected to stay finite;
// factory paths that ingest external data call ensure_finite().
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    // Throws MechanismError if any entry is NaN or infinite.
    void ensure_finite(const char* context) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// ----- elementwise and norm helpers -------------------------------------------------

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
bool is_diagonal(const Matrix& a, double tol = 0.0);
bool is_identity(const Matrix& a, double tol = 0.0);

Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double k);

// ----- multiplication kernels -------------------------------------------------------
//
// The parallel kernels split work across independent output rows, so their
// arithmetic matches the serial reference bit for bit at any thread count.
// The `ref` namespace keeps the serial implementations callable on their own
// for testing and benchmarking.

namespace ref {
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b); // a * b^T
Matrix kron(const Matrix& a, const Matrix& b);
// w * diag(d) * w^T evaluated so the result is exactly symmetric.
Matrix congruence_diag(const Matrix& w, const std::vector<double>& d);
} // namespace ref

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix congruence_diag(const Matrix& w, const std::vector<double>& d);

} // namespace mvgdp
