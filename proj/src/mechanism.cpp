#include "mvgdp/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "mvgdp/errors.hpp"
#include "mvgdp/sampler.hpp"

namespace mvgdp {

namespace {

constexpr double kOrthoTol = 1e-8;

void require(bool ok, const char* msg) {
    if (!ok) throw ParameterError(msg);
}

Matrix add_iid_noise(const Matrix& f_x, double stddev, Rng& rng) {
    Matrix out = f_x;
    double* p = out.data();
    const std::size_t total = out.rows() * out.cols();
    for (std::size_t i = 0; i < total; ++i) p[i] += stddev * rng.normal();
    out.ensure_finite("noisy output");
    return out;
}

} // namespace

NoiseDirections::NoiseDirections(Matrix w) : w_(std::move(w)) {
    require(w_.rows() == w_.cols() && w_.rows() > 0, "direction basis must be square");
    const std::size_t m = w_.rows();
    double err_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < m; ++k) dot += w_(k, i) * w_(k, j);
            const double diff = dot - (i == j ? 1.0 : 0.0);
            err_sq += (i == j ? 1.0 : 2.0) * diff * diff;
        }
    }
    if (std::sqrt(err_sq) > kOrthoTol * std::sqrt(static_cast<double>(m)))
        throw ParameterError("direction basis is not orthonormal");
}

NoiseDirections NoiseDirections::identity(std::size_t m) {
    return NoiseDirections(Matrix::identity(m));
}

PrecisionAllocation::PrecisionAllocation(std::vector<double> theta) : theta_(std::move(theta)) {
    require(!theta_.empty(), "allocation must be non-empty");
    for (double t : theta_)
        require(std::isfinite(t) && t > 0.0 && t < 1.0, "allocation entries must lie in (0, 1)");
    require(total() <= 1.0 + 1e-12, "allocation exceeds the available budget");
}

PrecisionAllocation PrecisionAllocation::uniform(std::size_t m) {
    require(m > 0, "allocation must be non-empty");
    if (m == 1) return PrecisionAllocation(std::vector<double>{1.0 - 1e-15});
    return PrecisionAllocation(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

PrecisionAllocation PrecisionAllocation::binary(std::size_t m,
                                                const std::vector<std::size_t>& flagged,
                                                double tau) {
    require(m > 0, "allocation must be non-empty");
    require(std::isfinite(tau) && tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
    require(!flagged.empty() && flagged.size() <= m, "flagged set must be non-empty and fit");
    std::vector<std::size_t> sorted = flagged;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "flagged indices must be distinct");
    require(sorted.back() < m, "flagged index out of range");

    const std::size_t k = flagged.size();
    std::vector<double> theta(m, 0.0);
    if (k == m) {
        std::fill(theta.begin(), theta.end(), tau / static_cast<double>(m));
    } else {
        const double hot = tau / static_cast<double>(k);
        const double cold = (1.0 - tau) / static_cast<double>(m - k);
        std::fill(theta.begin(), theta.end(), cold);
        for (std::size_t idx : flagged) theta[idx] = hot;
    }
    return PrecisionAllocation(std::move(theta));
}

double PrecisionAllocation::total() const {
    return std::accumulate(theta_.begin(), theta_.end(), 0.0);
}

SpdMatrix compile_covariance(const NoiseDirections& w, const PrecisionAllocation& theta,
                             double budget) {
    if (w.dim() != theta.size())
        throw MechanismError("direction basis and allocation disagree on dimension");
    if (!(std::isfinite(budget) && budget > 0.0))
        throw MechanismError("precision budget must be positive");
    std::vector<double> variance(theta.size());
    for (std::size_t i = 0; i < variance.size(); ++i)
        variance[i] = 1.0 / std::sqrt(theta.theta()[i] * budget);
    Matrix s = congruence_diag(w.mat(), variance);
    return SpdMatrix::trusted(std::move(s));
}

namespace {

MechanismOutput finish(const Matrix& f_x, const QuerySpec& q, SpdMatrix sigma, SpdMatrix psi,
                       double spent, ConditionReport condition, RandomSeed seed) {
    if (f_x.rows() != q.m() || f_x.cols() != q.n())
        throw MechanismError("query output shape does not match the query description");
    if (!condition.holds)
        throw MechanismError("internal error: compiled design violates its privacy condition");
    Matrix noise = sample_auto(MvgSpec(Matrix(q.m(), q.n()), sigma, psi), seed);
    Matrix value = add(f_x, noise);
    value.ensure_finite("mechanism output");
    return MechanismOutput{std::move(value), std::move(sigma), std::move(psi), spent, condition};
}

} // namespace

MechanismOutput mvg_unimodal(const Matrix& f_x, const QuerySpec& q, const PrivacyParams& p,
                             const NoiseDirections& w, const PrecisionAllocation& theta,
                             RandomSeed seed) {
    if (w.dim() != q.m() || theta.size() != q.m())
        throw MechanismError("row design must match the number of query rows");
    const double budget = precision_budget(q, p, BudgetMode::Unimodal);
    SpdMatrix sigma = compile_covariance(w, theta, budget);
    SpdMatrix psi = SpdMatrix::identity(q.n());
    ConditionReport cond = check_sufficient(sigma, psi, q, p);
    return finish(f_x, q, std::move(sigma), std::move(psi), budget * theta.total(), cond, seed);
}

MechanismOutput mvg_equimodal(const Matrix& f_x, const QuerySpec& q, const PrivacyParams& p,
                              const NoiseDirections& w, const PrecisionAllocation& theta,
                              RandomSeed seed, std::optional<DesignTheorem> theorem) {
    if (q.m() != q.n())
        throw MechanismError("matched row/column noise requires a square query");
    if (w.dim() != q.m() || theta.size() != q.m())
        throw MechanismError("row design must match the number of query rows");
    const double budget = precision_budget(q, p, BudgetMode::EquiModal, theorem);
    SpdMatrix sigma = compile_covariance(w, theta, budget);
    ConditionReport cond = check_sufficient(sigma, sigma, q, p, theorem);
    return finish(f_x, q, sigma, sigma, budget * theta.total(), cond, seed);
}

WaterfillResult waterfill_allocation(const std::vector<double>& lambda_f, double d) {
    require(!lambda_f.empty(), "water filling needs at least one direction");
    require(std::isfinite(d) && d > 0.0, "water filling needs a positive budget");
    for (double v : lambda_f)
        require(std::isfinite(v) && v > 0.0, "signal eigenvalues must be positive");

    const std::size_t m = lambda_f.size();
    WaterfillResult res;
    res.active.assign(m, true);
    res.lambda_z_inv.assign(m, 0.0);

    // Each pass lowers the level, so directions dropped once stay dropped.
    while (true) {
        double inv_sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!res.active[i]) continue;
            inv_sum += 1.0 / lambda_f[i];
            ++count;
        }
        const double level = (d + inv_sum) / static_cast<double>(count);
        bool dropped = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (res.active[i] && level - 1.0 / lambda_f[i] <= 0.0) {
                res.active[i] = false;
                dropped = true;
            }
        }
        if (!dropped) {
            res.level = level;
            break;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        if (res.active[i]) res.lambda_z_inv[i] = res.level - 1.0 / lambda_f[i];
    return res;
}

MaxPnrDesign max_pnr_covariance(const SpdMatrix& k_f, double d) {
    EighResult eig = jacobi_eigh(k_f.mat());
    const double lead = eig.values.empty() ? 0.0 : eig.values.front();
    if (!(lead > 0.0)) throw MechanismError("signal covariance has no positive direction");
    // Clamp tiny/negative tail eigenvalues so every direction has a finite
    // precision cost; they get dropped by the fill anyway.
    std::vector<double> clamped = eig.values;
    for (double& v : clamped) v = std::max(v, lead * 1e-15);

    WaterfillResult fill = waterfill_allocation(clamped, d);
    double floor = 0.0;
    for (std::size_t i = 0; i < clamped.size(); ++i)
        if (fill.active[i]) floor = std::max(floor, 1.0 / fill.lambda_z_inv[i]);
    std::vector<double> variances(clamped.size(), floor);
    for (std::size_t i = 0; i < clamped.size(); ++i)
        if (fill.active[i]) variances[i] = 1.0 / fill.lambda_z_inv[i];
    SpdMatrix cov = SpdMatrix::trusted(congruence_diag(eig.vectors, variances));
    return MaxPnrDesign{std::move(cov), std::move(fill), std::move(variances), floor};
}

MaxPnrDesign max_pnr_covariance(const SpdMatrix& k_f, const QuerySpec& q,
                                const PrivacyParams& p) {
    return max_pnr_covariance(k_f, general_bound(budget_terms(q, p), p));
}

PrivateDirections private_directions(const Matrix& x, double frac, const PrivacyParams& p,
                                     RandomSeed seed) {
    require(std::isfinite(frac) && frac > 0.0 && frac < 1.0,
            "direction budget fraction must lie in (0, 1)");
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();
    const double bound = max_abs(x);
    if (!(bound > 0.0)) throw MechanismError("cannot estimate directions of all-zero data");

    const QuerySpec q = covariance_query(bound, m, n);
    const PrivacyParams slice(frac * p.epsilon(), frac * p.delta());
    const double stddev = gaussian_noise_stddev(q.s2(), slice);

    Matrix estimate = matmul_nt(x, x);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) estimate(i, j) *= inv_n;

    // Symmetrized perturbation keeps the release inside the symmetric cone of
    // candidates without spending extra budget.
    Rng rng(seed);
    Matrix noise(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) noise(i, j) = stddev * rng.normal();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            estimate(i, j) += 0.5 * (noise(i, j) + noise(j, i));
    estimate.ensure_finite("perturbed covariance estimate");

    EighResult eig = jacobi_eigh(estimate);
    PrivateDirections out{NoiseDirections(std::move(eig.vectors)), std::move(eig.values),
                          PrivacyParams((1.0 - frac) * p.epsilon(), (1.0 - frac) * p.delta())};
    return out;
}

MechanismOutput mvg_unimodal_maxpnr(const Matrix& f_x, const QuerySpec& q,
                                    const PrivacyParams& p, const PrivateDirections& dirs,
                                    RandomSeed seed) {
    if (q.structure() != QueryStructure::General)
        throw MechanismError("water-filled unimodal design expects a general query");
    if (f_x.rows() != q.m() || f_x.cols() != q.n())
        throw MechanismError("query output shape does not match the query description");
    if (dirs.dirs.dim() != q.m())
        throw MechanismError("direction basis must match the number of query rows");

    const double bound = general_bound(budget_terms(q, p), p);
    // Splitting the L2 design bound evenly across the white columns leaves the
    // row total; the L1 fill below then under-spends the L2 constraint.
    const double d = bound / static_cast<double>(q.n());

    const double lead =
        dirs.spectrum.empty() ? 0.0 : *std::max_element(dirs.spectrum.begin(), dirs.spectrum.end());
    std::vector<double> lambda(q.m(), 1.0);
    if (lead > 0.0)
        for (std::size_t i = 0; i < lambda.size(); ++i)
            lambda[i] = std::max(dirs.spectrum[i], lead * 1e-12);

    WaterfillResult fill = waterfill_allocation(lambda, d);
    double floor = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (fill.active[i]) floor = std::max(floor, 1.0 / fill.lambda_z_inv[i]);
    std::vector<double> variances(lambda.size(), floor);
    double spent = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (fill.active[i]) variances[i] = 1.0 / fill.lambda_z_inv[i];
        spent += 1.0 / variances[i];
    }

    SpdMatrix sigma = SpdMatrix::trusted(congruence_diag(dirs.dirs.mat(), variances));
    SpdMatrix psi = SpdMatrix::identity(q.n());
    ConditionReport cond = check_sufficient(sigma, psi, q, p);
    return finish(f_x, q, std::move(sigma), std::move(psi), spent, cond, seed);
}

double gaussian_noise_stddev(double s2, const PrivacyParams& p) {
    require(std::isfinite(s2) && s2 >= 0.0, "L2 sensitivity must be non-negative");
    return s2 * std::sqrt(2.0 * std::log(1.25 / p.delta())) / p.epsilon();
}

Matrix baseline_gaussian(const Matrix& f_x, double s2, const PrivacyParams& p,
                         RandomSeed seed) {
    const double stddev = gaussian_noise_stddev(s2, p);
    if (stddev == 0.0) return f_x;
    Rng rng(seed);
    return add_iid_noise(f_x, stddev, rng);
}

Matrix baseline_laplace(const Matrix& f_x, double s1, double epsilon, RandomSeed seed) {
    require(std::isfinite(s1) && s1 >= 0.0, "L1 sensitivity must be non-negative");
    require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
    if (s1 == 0.0) return f_x;
    Rng rng(seed);
    Matrix out = f_x;
    const double scale = s1 / epsilon;
    double* ptr = out.data();
    const std::size_t total = out.rows() * out.cols();
    for (std::size_t i = 0; i < total; ++i) ptr[i] += rng.laplace(scale);
    out.ensure_finite("noisy output");
    return out;
}

} // namespace mvgdp
