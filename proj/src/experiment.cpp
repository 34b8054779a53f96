#include "mvgdp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "mvgdp/decomp.hpp"
#include "mvgdp/errors.hpp"
#include "mvgdp/matrix.hpp"
#include "mvgdp/mechanism.hpp"
#include "mvgdp/metrics.hpp"

namespace mvgdp {

namespace {

// Distinct stream ranges keep the per-trial draws, the direction-estimation
// draws, and the one-off holdout shuffle independent.
constexpr std::uint64_t kAuxStreamBase = std::uint64_t{1} << 32;
constexpr std::uint64_t kHoldoutStream = std::uint64_t{1} << 33;

void require_cfg(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

std::vector<double> tau_candidates() { return {0.55, 0.65, 0.75, 0.85, 0.95}; }

void validate_directions(const DirectionSource& source) {
    if (const auto* basis = std::get_if<BasisDirections>(&source)) {
        require_cfg(!basis->indices.empty(), "favored direction list is empty");
        if (basis->tau)
            require_cfg(*basis->tau > 0.0 && *basis->tau < 1.0, "tau must lie in (0, 1)");
    } else if (const auto* svd = std::get_if<PrivateSvdDirections>(&source)) {
        require_cfg(svd->frac > 0.0 && svd->frac < 1.0,
                    "direction budget fraction must lie in (0, 1)");
    }
}

// L1 sensitivity of the identity query for the Laplace baseline: one record
// (column) of m entries changes, each by at most the range width. The
// covariance query's bound 2*(m*c)^2/n is computed at its call site.
double identity_l1(const Dataset& d, std::size_t m) {
    return (d.hi() - d.lo()) * static_cast<double>(m);
}

SpdMatrix scaled_gram(const Matrix& x) {
    Matrix s = matmul_nt(x, x);
    const double inv_n = 1.0 / static_cast<double>(x.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) *= inv_n;
    return SpdMatrix::trusted(std::move(s));
}

// Perturbs f_x under the configured mechanism. `x_data` carries the raw
// records for direction estimation; tau must already be resolved.
Matrix apply_mechanism(const ExperimentConfig& cfg, const Matrix& f_x, const QuerySpec& q,
                       const Matrix& x_data, double laplace_s1,
                       std::optional<double> tau_override, std::uint64_t trial) {
    const RandomSeed main = cfg.seed.with_stream(trial);
    const RandomSeed aux = cfg.seed.with_stream(kAuxStreamBase + trial);
    const std::size_t m = q.m();

    switch (cfg.mechanism) {
    case MechanismKind::Gaussian:
        return baseline_gaussian(f_x, q.s2(), cfg.privacy, main);
    case MechanismKind::Laplace:
        return baseline_laplace(f_x, laplace_s1, cfg.privacy.epsilon(), main);
    case MechanismKind::MvgUnimodal:
        if (std::holds_alternative<PrivateSvdDirections>(cfg.directions)) {
            const auto& svd = std::get<PrivateSvdDirections>(cfg.directions);
            const PrivateDirections dirs =
                private_directions(x_data, svd.frac, cfg.privacy, aux);
            return mvg_unimodal_maxpnr(f_x, q, dirs.remaining, dirs, main).value;
        }
        if (const auto* basis = std::get_if<BasisDirections>(&cfg.directions)) {
            const double tau = tau_override ? *tau_override : basis->tau.value();
            return mvg_unimodal(f_x, q, cfg.privacy, NoiseDirections::identity(m),
                                PrecisionAllocation::binary(m, basis->indices, tau), main)
                .value;
        }
        return mvg_unimodal(f_x, q, cfg.privacy, NoiseDirections::identity(m),
                            PrecisionAllocation::uniform(m), main)
            .value;
    case MechanismKind::MvgEquimodal: {
        if (std::holds_alternative<PrivateSvdDirections>(cfg.directions)) {
            const auto& svd = std::get<PrivateSvdDirections>(cfg.directions);
            const PrivateDirections dirs =
                private_directions(x_data, svd.frac, cfg.privacy, aux);
            return mvg_equimodal(f_x, q, dirs.remaining, dirs.dirs,
                                 PrecisionAllocation::uniform(m), main, cfg.theorem)
                .value;
        }
        if (const auto* basis = std::get_if<BasisDirections>(&cfg.directions)) {
            const double tau = tau_override ? *tau_override : basis->tau.value();
            return mvg_equimodal(f_x, q, cfg.privacy, NoiseDirections::identity(m),
                                 PrecisionAllocation::binary(m, basis->indices, tau), main,
                                 cfg.theorem)
                .value;
        }
        return mvg_equimodal(f_x, q, cfg.privacy, NoiseDirections::identity(m),
                             PrecisionAllocation::uniform(m), main, cfg.theorem)
            .value;
    }
    }
    throw ConfigError("unknown mechanism");
}

std::vector<std::size_t> seeded_shuffle(std::size_t n, const RandomSeed& seed) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = std::min<std::size_t>(
            i - 1, static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i)));
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

struct Standardizer {
    std::vector<double> mean;
    std::vector<double> scale;
};

Standardizer fit_standardizer(const Matrix& samples_by_feature) {
    const std::size_t n = samples_by_feature.rows();
    const std::size_t k = samples_by_feature.cols();
    Standardizer st{std::vector<double>(k, 0.0), std::vector<double>(k, 1.0)};
    for (std::size_t j = 0; j < k; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += samples_by_feature(i, j);
        st.mean[j] = sum / static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = samples_by_feature(i, j) - st.mean[j];
            var += d * d;
        }
        const double dev = std::sqrt(var / static_cast<double>(n));
        st.scale[j] = dev > 1e-12 ? dev : 1.0;
    }
    return st;
}

Matrix standardize(const Matrix& samples_by_feature, const Standardizer& st) {
    Matrix out = samples_by_feature;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out(i, j) = (out(i, j) - st.mean[j]) / st.scale[j];
    return out;
}

double run_regression_trial(const ExperimentConfig& cfg, const Matrix& train,
                            const QuerySpec& q, double laplace_s1,
                            const Matrix& holdout_features, const std::vector<double>& holdout_y,
                            std::size_t target_row, std::optional<double> tau,
                            std::uint64_t trial) {
    const Matrix perturbed = apply_mechanism(cfg, train, q, train, laplace_s1, tau, trial);

    const std::size_t n_train = perturbed.cols();
    const std::size_t k = perturbed.rows() - 1;
    Matrix f(n_train, k);
    std::vector<double> y(n_train);
    for (std::size_t j = 0; j < n_train; ++j) {
        std::size_t col = 0;
        for (std::size_t i = 0; i < perturbed.rows(); ++i) {
            if (i == target_row) continue;
            f(j, col++) = perturbed(i, j);
        }
        y[j] = perturbed(target_row, j);
    }

    const Standardizer st = fit_standardizer(f);
    const std::vector<double> w = ridge_fit(standardize(f, st), y, cfg.ridge_lambda);
    const std::vector<double> pred = ridge_predict(standardize(holdout_features, st), w);
    return metric_rmse(pred, holdout_y);
}

TrialReport run_trials(const ExperimentConfig& cfg, const Dataset& data,
                       std::optional<double> tau);

// Best mean over the tau grid when a favored-direction source leaves tau
// open; candidates share seeds, so this is a paired selection.
TrialReport run_with_tau_policy(const ExperimentConfig& cfg, const Dataset& data) {
    const auto* basis = std::get_if<BasisDirections>(&cfg.directions);
    if (!basis || basis->tau) return run_trials(cfg, data, std::nullopt);
    std::optional<TrialReport> best;
    for (const double tau : tau_candidates()) {
        TrialReport r = run_trials(cfg, data, tau);
        if (!best || r.mean < best->mean) best = std::move(r);
    }
    return *best;
}

TrialReport run_trials(const ExperimentConfig& cfg, const Dataset& data,
                       std::optional<double> tau) {
    const Matrix& x = data.features();
    const std::size_t m = data.num_features();
    const std::size_t n = data.num_samples();
    std::vector<double> values;
    values.reserve(cfg.trials);

    switch (cfg.task) {
    case Task::Regression: {
        require_cfg(m >= 2, "regression needs at least one explanatory feature");
        const std::size_t target_row = data.feature_index(cfg.target_feature);
        const std::size_t holdout =
            cfg.holdout_samples > 0 ? cfg.holdout_samples : std::max<std::size_t>(1, n / 4);
        require_cfg(holdout >= 1 && holdout + 2 <= n,
                    "holdout must leave at least two training samples");

        const std::vector<std::size_t> order =
            seeded_shuffle(n, cfg.seed.with_stream(kHoldoutStream));
        const std::size_t n_train = n - holdout;

        Matrix train(m, n_train);
        Matrix holdout_features(holdout, m - 1);
        std::vector<double> holdout_y(holdout);
        for (std::size_t j = 0; j < n_train; ++j)
            for (std::size_t i = 0; i < m; ++i) train(i, j) = x(i, order[holdout + j]);
        for (std::size_t j = 0; j < holdout; ++j) {
            std::size_t col = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == target_row) continue;
                holdout_features(j, col++) = x(i, order[j]);
            }
            holdout_y[j] = x(target_row, order[j]);
        }

        const QuerySpec q = identity_query(data.lo(), data.hi(), m, n_train);
        const double s1 = identity_l1(data, m);
        for (std::uint64_t t = 0; t < cfg.trials; ++t)
            values.push_back(run_regression_trial(cfg, train, q, s1, holdout_features,
                                                  holdout_y, target_row, tau, t));
        break;
    }
    case Task::FirstPc: {
        const SpdMatrix s_bar = scaled_gram(x);
        const double c = data.abs_bound();
        const QuerySpec q = covariance_query(c, m, n);
        const double mc = static_cast<double>(m) * c;
        const double s1 = 2.0 * mc * mc / static_cast<double>(n);
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            const Matrix noisy = apply_mechanism(cfg, s_bar.mat(), q, x, s1, tau, t);
            const EighResult eig = jacobi_eigh(noisy);
            std::vector<double> v(m);
            for (std::size_t i = 0; i < m; ++i) v[i] = eig.vectors(i, 0);
            values.push_back(metric_delta_rho(v, s_bar));
        }
        break;
    }
    case Task::CovarianceEstimation: {
        const SpdMatrix s_bar = scaled_gram(x);
        const QuerySpec q = identity_query(data.lo(), data.hi(), m, n);
        const double s1 = identity_l1(data, m);
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            const Matrix noisy = apply_mechanism(cfg, x, q, x, s1, tau, t);
            values.push_back(metric_rss(scaled_gram(noisy), s_bar));
        }
        break;
    }
    }
    return aggregate_trials(std::move(values));
}

} // namespace

const Matrix& query_identity(const Dataset& d) { return d.features(); }

SpdMatrix query_covariance(const Dataset& d) { return scaled_gram(d.features()); }

std::string direction_label(const DirectionSource& source) {
    if (std::holds_alternative<IidDirections>(source)) return "iid";
    if (const auto* basis = std::get_if<BasisDirections>(&source)) {
        std::ostringstream out;
        out << "basis[";
        for (std::size_t i = 0; i < basis->indices.size(); ++i) {
            if (i) out << ' ';
            out << basis->indices[i];
        }
        out << "]@";
        if (basis->tau)
            out << format_double(*basis->tau);
        else
            out << "best";
        return out.str();
    }
    const auto& svd = std::get<PrivateSvdDirections>(source);
    return "private-svd(" + format_double(svd.frac) + ")";
}

TrialReport aggregate_trials(std::vector<double> values) {
    TrialReport report;
    report.values = std::move(values);
    const std::size_t t = report.values.size();
    if (t == 0) return report;
    report.mean = std::accumulate(report.values.begin(), report.values.end(), 0.0) /
                  static_cast<double>(t);
    if (t > 1) {
        double var = 0.0;
        for (double v : report.values) {
            const double d = v - report.mean;
            var += d * d;
        }
        var /= static_cast<double>(t - 1);
        report.ci_half = 1.96 * std::sqrt(var / static_cast<double>(t));
    }
    return report;
}

TrialReport run_experiment(const ExperimentConfig& cfg, const Dataset& data) {
    require_cfg(cfg.trials >= 1, "experiment needs at least one trial");
    validate_directions(cfg.directions);
    if (cfg.task == Task::FirstPc)
        require_cfg(cfg.mechanism != MechanismKind::MvgUnimodal,
                    "the first-pc task perturbs a square covariance and needs the matched "
                    "row/column design or a baseline");
    else
        require_cfg(cfg.mechanism != MechanismKind::MvgEquimodal,
                    "matched row/column noise needs the square query of the first-pc task");
    if (cfg.theorem)
        require_cfg(cfg.mechanism == MechanismKind::MvgEquimodal,
                    "the design-theorem switch only affects the matched design");
    return run_with_tau_policy(cfg, data);
}

std::vector<StudyCell> direction_study(const ExperimentConfig& base, const Dataset& data,
                                       const std::vector<DirectionSource>& choices,
                                       const std::vector<double>& epsilons) {
    require_cfg(choices.size() >= 2, "direction study needs at least two choices");
    require_cfg(!epsilons.empty(), "direction study needs at least one epsilon");
    std::vector<StudyCell> cells;
    cells.reserve(choices.size() * epsilons.size());
    for (const DirectionSource& choice : choices) {
        for (const double eps : epsilons) {
            ExperimentConfig cfg = base;
            cfg.directions = choice;
            cfg.privacy = PrivacyParams(eps, base.privacy.delta());
            cells.push_back(StudyCell{direction_label(choice), eps,
                                      run_experiment(cfg, data)});
        }
    }
    return cells;
}

} // namespace mvgdp
