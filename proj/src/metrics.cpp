#include "mvgdp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mvgdp/errors.hpp"

namespace mvgdp {

namespace {

double quadratic_form(const std::vector<double>& v, const Matrix& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) row += s(i, j) * v[j];
        acc += v[i] * row;
    }
    return acc;
}

double log_det_spd(const Matrix& a) {
    const Matrix l = cholesky(a);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc += std::log(l(i, i));
    return 2.0 * acc;
}

} // namespace

double metric_rmse(const std::vector<double>& predictions, const std::vector<double>& targets) {
    if (predictions.size() != targets.size() || predictions.empty())
        throw ParameterError("prediction and target lengths must match and be non-empty");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double diff = predictions[i] - targets[i];
        acc += diff * diff;
    }
    return std::sqrt(acc / static_cast<double>(predictions.size()));
}

double metric_delta_rho(const std::vector<double>& v, const SpdMatrix& s_bar) {
    if (v.size() != s_bar.dim())
        throw ParameterError("direction length must match the covariance dimension");
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-8)
        throw ParameterError("direction must be unit length");
    const double top = s_bar.eigenvalues().front();
    return std::max(top - quadratic_form(v, s_bar.mat()), 0.0);
}

double metric_rss(const SpdMatrix& s_tilde, const SpdMatrix& s_bar) {
    if (s_tilde.dim() != s_bar.dim())
        throw ParameterError("spectra must have matching dimensions");
    const EighResult basis = jacobi_eigh(s_tilde.mat());
    const std::vector<double> reference = s_bar.eigenvalues();
    double acc = 0.0;
    std::vector<double> v(s_bar.dim());
    for (std::size_t k = 0; k < reference.size(); ++k) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = basis.vectors(i, k);
        const double gap = reference[k] - quadratic_form(v, s_bar.mat());
        acc += gap * gap;
    }
    return acc;
}

PnrReport metric_pnr(const SpdMatrix& k_f, const SpdMatrix& noise_cov) {
    if (k_f.dim() != noise_cov.dim())
        throw ParameterError("signal and noise covariances must have matching dimensions");
    const Matrix sum = add(k_f.mat(), noise_cov.mat());
    const double log_ratio = log_det_spd(sum) - log_det_spd(noise_cov.mat());
    return PnrReport{std::exp(log_ratio), 0.5 * log_ratio};
}

std::vector<double> ridge_fit(const Matrix& features_by_sample,
                              const std::vector<double>& targets, double lambda_reg) {
    const std::size_t n = features_by_sample.rows();
    const std::size_t k = features_by_sample.cols();
    if (targets.size() != n) throw ParameterError("target length must match the sample count");
    if (!(std::isfinite(lambda_reg) && lambda_reg >= 0.0))
        throw ParameterError("ridge regularizer must be non-negative");

    Matrix gram = matmul(transpose(features_by_sample), features_by_sample);
    for (std::size_t i = 0; i < k; ++i) gram(i, i) += lambda_reg;
    std::vector<double> rhs(k, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) rhs[j] += features_by_sample(i, j) * targets[i];
    return solve_spd(gram, rhs);
}

std::vector<double> ridge_predict(const Matrix& features_by_sample,
                                  const std::vector<double>& weights) {
    if (weights.size() != features_by_sample.cols())
        throw ParameterError("weight length must match the feature count");
    std::vector<double> out(features_by_sample.rows(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < weights.size(); ++j)
            out[i] += features_by_sample(i, j) * weights[j];
    return out;
}

} // namespace mvgdp
