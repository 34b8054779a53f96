#pragma once

#include <cstddef>
#include <vector>

#include "mvgdp/matrix.hpp"

namespace mvgdp {

// Eigendecomposition of a symmetric matrix. Eigenvalues are sorted in
// non-increasing order; column j of `vectors` pairs with values[j]. Each
// eigenvector is normalized so its first entry of non-negligible magnitude
// is positive, which pins an otherwise arbitrary sign.
struct EighResult {
    std::vector<double> values;
    Matrix vectors;
};

EighResult jacobi_eigh(const Matrix& a);

// Thin-plus-completion SVD: u is m-by-m orthogonal, vt is n-by-n orthogonal,
// s holds the min(m, n) singular values in non-increasing order, and
// a = u * diag(s) * vt. Left singular vectors carry the same sign convention
// as eigenvectors above; the paired row of vt flips with its column of u.
struct SvdResult {
    Matrix u;
    std::vector<double> s;
    Matrix vt;
};

SvdResult svd(const Matrix& a);

// Lower Cholesky factor of a positive definite matrix; throws MechanismError
// when a pivot drops below a scale-relative floor.
Matrix cholesky(const Matrix& a);

// Solves a * x = b for symmetric positive definite a.
std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b);

// Symmetric positive semidefinite matrix. Construction checks symmetry to a
// scale-relative tolerance and rejects eigenvalues below -1e-10 times the
// largest one; small negatives inside that band are treated as zero.
class SpdMatrix {
public:
    explicit SpdMatrix(Matrix m);

    static SpdMatrix identity(std::size_t n);
    static SpdMatrix diagonal(const std::vector<double>& d);
    // Skips validation for matrices that are positive semidefinite by
    // construction (congruences of non-negative diagonals, Kronecker products
    // of validated operands).
    static SpdMatrix trusted(Matrix m);

    const Matrix& mat() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    bool diagonal_only() const { return diagonal_; }

    // Eigenvalues clamped to [0, inf), non-increasing.
    std::vector<double> eigenvalues() const;

private:
    SpdMatrix(Matrix m, bool trusted_tag);

    Matrix m_;
    bool diagonal_ = false;
};

// Factor b with b * b^T equal to s: the Cholesky factor when s is strictly
// positive definite, the eigenvector square root otherwise. Diagonal input
// short-circuits to diag(sqrt(d)).
Matrix spd_sqrt(const SpdMatrix& s);

} // namespace mvgdp
