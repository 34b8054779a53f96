#pragma once

#include <cstddef>

#include "mvgdp/decomp.hpp"
#include "mvgdp/matrix.hpp"
#include "mvgdp/rng.hpp"

namespace mvgdp {

// Matrix normal distribution: mean plus row covariance (across the m rows)
// and column covariance (across the n columns).
struct MvgSpec {
    Matrix mean;
    SpdMatrix row_cov;
    SpdMatrix col_cov;

    MvgSpec(Matrix mean_, SpdMatrix row, SpdMatrix col);
    std::size_t rows() const { return mean.rows(); }
    std::size_t cols() const { return mean.cols(); }
};

// The flattened route factorizes the full mn-by-mn covariance, so its memory
// footprint caps the usable size.
constexpr std::size_t kVectorizedCap = 4096;

enum class SamplerRoute { Affine, Vectorized };

// Cost-model dispatch: the affine route factors the larger side at
// max(m, n)^3, the flattened route costs (m*n)^2; ties and over-cap sizes go
// to the affine route.
SamplerRoute plan_sampler(std::size_t m, std::size_t n);

// Factors the covariances once so repeated draws pay only the multiply; draws
// touch immutable state plus a per-call generator, so they are safe to issue
// concurrently.
//   Affine:     Z = mean + B_row * N * B_col^T with B * B^T matching each
//               covariance; identity factors skip their multiplication.
//   Vectorized: stacks columns, samples the mn-dimensional normal with
//               covariance kron(col_cov, row_cov), and unstacks. Throws
//               MechanismError when m*n exceeds kVectorizedCap.
class PreparedSampler {
public:
    PreparedSampler(MvgSpec spec, SamplerRoute route);
    explicit PreparedSampler(MvgSpec spec); // routes per plan_sampler

    SamplerRoute route() const { return route_; }
    Matrix draw(RandomSeed seed) const;
    // Consumes the caller's generator; bulk draws avoid re-seeding an engine
    // per sample.
    Matrix draw(Rng& rng) const;

private:
    void build_factors();

    MvgSpec spec_;
    SamplerRoute route_;
    Matrix row_factor_;   // affine route, empty when the covariance is identity
    Matrix col_factor_;
    Matrix joint_factor_; // vectorized route
};

// One-shot wrappers around PreparedSampler; same arithmetic, same draws.
Matrix sample_affine(const MvgSpec& spec, RandomSeed seed);
Matrix sample_vectorized(const MvgSpec& spec, RandomSeed seed);
Matrix sample_auto(const MvgSpec& spec, RandomSeed seed);

} // namespace mvgdp
