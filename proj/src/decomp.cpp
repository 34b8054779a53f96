#include "mvgdp/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvgdp/errors.hpp"

namespace mvgdp {

namespace {

constexpr int kMaxSweeps = 64;

// Applies the first-significant-entry-positive sign convention to column j.
// Returns true when the column was negated.
bool fix_column_sign(Matrix& m, std::size_t j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) norm = std::max(norm, std::fabs(m(i, j)));
    const double floor = norm * 1e-12;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double v = m(i, j);
        if (std::fabs(v) > floor) {
            if (v < 0.0) {
                for (std::size_t k = 0; k < m.rows(); ++k) m(k, j) = -m(k, j);
                return true;
            }
            return false;
        }
    }
    return false;
}

void negate_row(Matrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

// Orders columns by key descending (stable in the original index on ties).
std::vector<std::size_t> descending_order(const std::vector<double>& key) {
    std::vector<std::size_t> idx(key.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    return idx;
}

} // namespace

EighResult jacobi_eigh(const Matrix& input) {
    if (input.rows() != input.cols()) throw MechanismError("jacobi_eigh needs a square matrix");
    const std::size_t n = input.rows();
    Matrix a = input;
    // Work on the exactly symmetric average so a tiny input asymmetry cannot
    // push the cyclic sweeps out of the symmetric manifold.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    Matrix v = Matrix::identity(n);

    double scale = max_abs(a);
    if (scale == 0.0) scale = 1.0;
    const double tol = 1e-14 * scale;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
        }
        if (off <= tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= tol * 1e-2) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = a(i, i);
    const std::vector<std::size_t> order = descending_order(raw);

    EighResult out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = raw[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    for (std::size_t j = 0; j < n; ++j) fix_column_sign(out.vectors, j);
    return out;
}

namespace {

// One-sided Jacobi on a tall matrix (rows >= cols): rotates column pairs of a
// working copy until they are mutually orthogonal, accumulating the rotations
// into v. The column norms become the singular values.
SvdResult svd_tall(const Matrix& input) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    Matrix w = input;
    Matrix v = Matrix::identity(n);

    const double eps = 1e-15;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += w(i, p) * w(i, p);
                    aqq += w(i, q) * w(i, q);
                    apq += w(i, p) * w(i, q);
                }
                if (std::fabs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < m; ++i) {
                    const double wip = w(i, p);
                    const double wiq = w(i, q);
                    w(i, p) = c * wip - s * wiq;
                    w(i, q) = s * wip + c * wiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) sum += w(i, j) * w(i, j);
        norms[j] = std::sqrt(sum);
    }
    const std::vector<std::size_t> order = descending_order(norms);

    SvdResult out;
    out.s.resize(n);
    out.u = Matrix(m, m);
    Matrix vs(n, n);
    const double smax = norms.empty() ? 0.0 : norms[order[0]];
    const double rank_tol = smax * 1e-13;

    std::size_t filled = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.s[j] = norms[src];
        for (std::size_t i = 0; i < n; ++i) vs(i, j) = v(i, src);
        if (norms[src] > rank_tol && norms[src] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) out.u(i, j) = w(i, src) / norms[src];
            ++filled;
        }
    }

    // Completes rank-deficient or rectangular u to a full orthonormal basis by
    // Gram-Schmidt over the standard basis, picking the largest residual each
    // round for a deterministic, well-conditioned choice.
    for (std::size_t j = filled; j < m; ++j) {
        std::vector<double> best;
        double best_norm = -1.0;
        for (std::size_t e = 0; e < m; ++e) {
            std::vector<double> cand(m, 0.0);
            cand[e] = 1.0;
            for (std::size_t k = 0; k < j; ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < m; ++i) dot += cand[i] * out.u(i, k);
                for (std::size_t i = 0; i < m; ++i) cand[i] -= dot * out.u(i, k);
            }
            double norm2 = 0.0;
            for (double x : cand) norm2 += x * x;
            if (norm2 > best_norm) {
                best_norm = norm2;
                best = std::move(cand);
            }
        }
        const double norm = std::sqrt(best_norm);
        for (std::size_t i = 0; i < m; ++i) out.u(i, j) = best[i] / norm;
        // Re-orthogonalize once to keep the completion tight.
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += out.u(i, j) * out.u(i, k);
            for (std::size_t i = 0; i < m; ++i) out.u(i, j) -= dot * out.u(i, k);
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm2 += out.u(i, j) * out.u(i, j);
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < m; ++i) out.u(i, j) *= inv;
    }

    out.vt = transpose(vs);
    return out;
}

} // namespace

SvdResult svd(const Matrix& a) {
    SvdResult out;
    if (a.rows() >= a.cols()) {
        out = svd_tall(a);
    } else {
        SvdResult t = svd_tall(transpose(a));
        out.u = Matrix(a.rows(), a.rows());
        // a = (a^T)^T = v_t_result^T ... : for b = a^T = ub s vb^T,
        // a = vb s ub^T, so u = vb and vt = ub^T.
        Matrix vb = transpose(t.vt);
        out.u = vb;
        out.s = std::move(t.s);
        out.vt = transpose(t.u);
    }
    const std::size_t r = out.s.size();
    for (std::size_t j = 0; j < out.u.cols(); ++j) {
        if (fix_column_sign(out.u, j) && j < r) negate_row(out.vt, j);
    }
    return out;
}

Matrix cholesky(const Matrix& a) {
    if (a.rows() != a.cols()) throw MechanismError("cholesky needs a square matrix");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    double scale = max_abs(a);
    if (scale == 0.0) scale = 1.0;
    const double floor = scale * 1e-14;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= floor) throw MechanismError("cholesky pivot not positive");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            l(i, j) = sum / ljj;
        }
    }
    return l;
}

std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b) {
    if (a.rows() != b.size()) throw MechanismError("shape mismatch in solve_spd");
    const Matrix l = cholesky(a);
    const std::size_t n = b.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * y[k];
        y[i] = sum / l(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) sum -= l(k, ii) * x[k];
        x[ii] = sum / l(ii, ii);
    }
    return x;
}

// ----- SpdMatrix --------------------------------------------------------------------

SpdMatrix::SpdMatrix(Matrix m, bool) : m_(std::move(m)) {
    diagonal_ = is_diagonal(m_);
}

SpdMatrix::SpdMatrix(Matrix m) : SpdMatrix(std::move(m), true) {
    if (m_.rows() != m_.cols()) throw MechanismError("covariance must be square");
    double scale = max_abs(m_);
    const double sym_tol = 1e-10 * std::max(1.0, scale);
    for (std::size_t i = 0; i < m_.rows(); ++i) {
        for (std::size_t j = i + 1; j < m_.cols(); ++j) {
            if (std::fabs(m_(i, j) - m_(j, i)) > sym_tol) {
                throw MechanismError("covariance is not symmetric");
            }
        }
    }
    std::vector<double> eigs;
    if (diagonal_) {
        eigs.resize(m_.rows());
        for (std::size_t i = 0; i < m_.rows(); ++i) eigs[i] = m_(i, i);
    } else {
        eigs = jacobi_eigh(m_).values;
    }
    double largest = 0.0;
    for (double e : eigs) largest = std::max(largest, e);
    for (double e : eigs) {
        if (e < -1e-10 * std::max(largest, 1.0)) {
            throw MechanismError("covariance has a negative eigenvalue");
        }
    }
}

SpdMatrix SpdMatrix::identity(std::size_t n) { return SpdMatrix(Matrix::identity(n), true); }

SpdMatrix SpdMatrix::diagonal(const std::vector<double>& d) {
    for (double v : d) {
        if (v < 0.0) throw MechanismError("covariance has a negative eigenvalue");
    }
    return SpdMatrix(Matrix::diagonal(d), true);
}

SpdMatrix SpdMatrix::trusted(Matrix m) { return SpdMatrix(std::move(m), true); }

std::vector<double> SpdMatrix::eigenvalues() const {
    std::vector<double> eigs;
    if (diagonal_) {
        eigs.resize(dim());
        for (std::size_t i = 0; i < dim(); ++i) eigs[i] = m_(i, i);
        std::sort(eigs.begin(), eigs.end(), std::greater<double>());
    } else {
        eigs = jacobi_eigh(m_).values;
    }
    for (double& e : eigs) e = std::max(e, 0.0);
    return eigs;
}

Matrix spd_sqrt(const SpdMatrix& s) {
    const std::size_t n = s.dim();
    if (s.diagonal_only()) {
        Matrix b(n, n);
        for (std::size_t i = 0; i < n; ++i) b(i, i) = std::sqrt(std::max(s.mat()(i, i), 0.0));
        return b;
    }
    try {
        return cholesky(s.mat());
    } catch (const MechanismError&) {
        // Semidefinite fallback: eigenvector square root with clamped spectrum.
        EighResult e = jacobi_eigh(s.mat());
        Matrix b(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            const double root = std::sqrt(std::max(e.values[j], 0.0));
            for (std::size_t i = 0; i < n; ++i) b(i, j) = e.vectors(i, j) * root;
        }
        return b;
    }
}

} // namespace mvgdp
