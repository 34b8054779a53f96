#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mvgdp/budget.hpp"
#include "mvgdp/decomp.hpp"
#include "mvgdp/matrix.hpp"
#include "mvgdp/rng.hpp"

namespace mvgdp {

// Orthonormal basis whose columns receive the per-direction noise variances.
class NoiseDirections {
public:
    // square, with ||W^T W - I||_F <= 1e-8 * sqrt(m)
    explicit NoiseDirections(Matrix w);
    static NoiseDirections identity(std::size_t m);

    const Matrix& mat() const { return w_; }
    std::size_t dim() const { return w_.rows(); }

private:
    Matrix w_;
};

// Fractions of the precision budget assigned to each direction. Every entry
// must lie strictly inside (0, 1); the total may stay below 1 (unspent
// precision) but never exceed it.
class PrecisionAllocation {
public:
    explicit PrecisionAllocation(std::vector<double> theta);

    static PrecisionAllocation uniform(std::size_t m);
    // tau of the budget spread evenly over the flagged directions, the rest
    // evenly over the others.
    static PrecisionAllocation binary(std::size_t m, const std::vector<std::size_t>& flagged,
                                      double tau);

    const std::vector<double>& theta() const { return theta_; }
    std::size_t size() const { return theta_.size(); }
    double total() const;

private:
    std::vector<double> theta_;
};

// Every output is produced only after its design condition verified; a
// compiled covariance that fails it indicates an internal bug and throws.
struct MechanismOutput {
    Matrix value;
    SpdMatrix sigma;
    SpdMatrix psi;
    // Total precision drawn from the design budget. Directional designs spend
    // budget * sum(theta); water-filled designs report the total inverse
    // variance, including the floor given to deactivated directions.
    double budget_spent = 0.0;
    ConditionReport condition;
};

// Row covariance with eigenvalue 1/sqrt(theta_i * budget) along direction i.
SpdMatrix compile_covariance(const NoiseDirections& w, const PrecisionAllocation& theta,
                             double budget);

// Directional row noise, white column noise.
MechanismOutput mvg_unimodal(const Matrix& f_x, const QuerySpec& q, const PrivacyParams& p,
                             const NoiseDirections& w, const PrecisionAllocation& theta,
                             RandomSeed seed);

// Matched row and column noise for square queries. The theorem picks the
// design bound and defaults to the tighter branch the structure admits; the
// PSD branch requires a symmetric PSD query.
MechanismOutput mvg_equimodal(const Matrix& f_x, const QuerySpec& q, const PrivacyParams& p,
                              const NoiseDirections& w, const PrecisionAllocation& theta,
                              RandomSeed seed,
                              std::optional<DesignTheorem> theorem = std::nullopt);

// ----- water-filling designs --------------------------------------------------------

// Optimal split of a total precision d across directions with signal
// eigenvalues lambda_f: lambda_z_inv[i] = max(level - 1/lambda_f[i], 0) with
// the level chosen so the active precisions sum to d. Maximizes
// prod_i(lambda_z_inv[i] + 1/lambda_f[i]).
struct WaterfillResult {
    std::vector<double> lambda_z_inv;
    double level = 0.0;
    std::vector<bool> active;
};

WaterfillResult waterfill_allocation(const std::vector<double>& lambda_f, double d);

// Noise covariance aligned with the eigenbasis of the signal covariance k_f,
// water-filled against its spectrum. Deactivated directions receive a
// variance floor equal to the largest active noise variance so no direction
// is ever noise-free; the floor's precision rides on top of d and is reported
// for auditing.
struct MaxPnrDesign {
    SpdMatrix cov;
    WaterfillResult fill;
    std::vector<double> variances;
    double floor_variance = 0.0;
};

MaxPnrDesign max_pnr_covariance(const SpdMatrix& k_f, double d);

// Budget taken from the general design condition for the given query.
MaxPnrDesign max_pnr_covariance(const SpdMatrix& k_f, const QuerySpec& q,
                                const PrivacyParams& p);

// ----- differentially private direction estimation ----------------------------------

// Spends frac of the privacy budget on a Gaussian-perturbed covariance
// estimate of x and returns its eigenvectors plus the leftover budget. The
// entry bound feeding the covariance sensitivity is taken from the data
// itself, which is a pragmatic shortcut: a strict deployment would pass a
// domain bound instead.
struct PrivateDirections {
    NoiseDirections dirs;
    std::vector<double> spectrum; // eigenvalues of the released estimate
    PrivacyParams remaining;
};

PrivateDirections private_directions(const Matrix& x, double frac, const PrivacyParams& p,
                                     RandomSeed seed);

// Unimodal mechanism whose row covariance is water-filled against a
// (privately estimated) signal spectrum instead of an explicit allocation.
MechanismOutput mvg_unimodal_maxpnr(const Matrix& f_x, const QuerySpec& q,
                                    const PrivacyParams& p, const PrivateDirections& dirs,
                                    RandomSeed seed);

// ----- baselines --------------------------------------------------------------------

// Per-entry standard deviation of the classic analytic Gaussian mechanism:
// s2 * sqrt(2*ln(1.25/delta)) / epsilon. Zero sensitivity means zero noise,
// so a degenerate query passes through unchanged.
double gaussian_noise_stddev(double s2, const PrivacyParams& p);

Matrix baseline_gaussian(const Matrix& f_x, double s2, const PrivacyParams& p,
                         RandomSeed seed);

// Per-entry Laplace noise at scale s1/epsilon for L1 sensitivity s1; s1 = 0
// passes through unchanged.
Matrix baseline_laplace(const Matrix& f_x, double s1, double epsilon, RandomSeed seed);

} // namespace mvgdp
