#pragma once

#include <vector>

#include "mvgdp/decomp.hpp"
#include "mvgdp/matrix.hpp"

namespace mvgdp {

// Root-mean-square error between equal-length vectors.
double metric_rmse(const std::vector<double>& predictions, const std::vector<double>& targets);

// Captured-variance deficit of a candidate principal direction: the top
// eigenvalue of s_bar minus the Rayleigh quotient v' * s_bar * v, clamped at
// zero against rounding. v must be unit length within 1e-8.
double metric_delta_rho(const std::vector<double>& v, const SpdMatrix& s_bar);

// Residual sum of squares over the full principal spectrum: eigenvectors are
// taken from the estimate s_tilde, reference eigenvalues from s_bar (both in
// non-increasing order), and each term is the squared gap between the
// reference eigenvalue and the variance the estimated direction captures.
double metric_rss(const SpdMatrix& s_tilde, const SpdMatrix& s_bar);

// Determinant ratio |signal + noise| / |noise| computed through Cholesky
// log-determinants; gaussian_mi = log(pnr) / 2 is the mutual information of
// the matching Gaussian channel.
struct PnrReport {
    double pnr = 0.0;
    double gaussian_mi = 0.0;
};

PnrReport metric_pnr(const SpdMatrix& k_f, const SpdMatrix& noise_cov);

// Ridge regression on sample-major features: solves (F'F + lambda*I) w = F'y.
std::vector<double> ridge_fit(const Matrix& features_by_sample, const std::vector<double>& targets,
                              double lambda_reg);

std::vector<double> ridge_predict(const Matrix& features_by_sample,
                                  const std::vector<double>& weights);

} // namespace mvgdp
