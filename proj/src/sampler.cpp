#include "mvgdp/sampler.hpp"

#include <cmath>

#include "mvgdp/errors.hpp"

namespace mvgdp {

MvgSpec::MvgSpec(Matrix mean_, SpdMatrix row, SpdMatrix col)
    : mean(std::move(mean_)), row_cov(std::move(row)), col_cov(std::move(col)) {
    if (row_cov.dim() != mean.rows() || col_cov.dim() != mean.cols()) {
        throw MechanismError("covariance dimensions do not match the mean");
    }
}

SamplerRoute plan_sampler(std::size_t m, std::size_t n) {
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    if (mn > static_cast<double>(kVectorizedCap)) return SamplerRoute::Affine;
    const double larger = static_cast<double>(m > n ? m : n);
    const double affine_cost = larger * larger * larger;
    const double vectorized_cost = mn * mn;
    return vectorized_cost < affine_cost ? SamplerRoute::Vectorized : SamplerRoute::Affine;
}

namespace {

Matrix standard_normals(std::size_t m, std::size_t n, Rng& rng) {
    Matrix z(m, n);
    for (std::size_t i = 0; i < z.size(); ++i) z.data()[i] = rng.normal();
    return z;
}

} // namespace

PreparedSampler::PreparedSampler(MvgSpec spec, SamplerRoute route)
    : spec_(std::move(spec)), route_(route) {
    build_factors();
}

PreparedSampler::PreparedSampler(MvgSpec spec)
    : spec_(std::move(spec)), route_(plan_sampler(spec_.rows(), spec_.cols())) {
    build_factors();
}

void PreparedSampler::build_factors() {
    if (route_ == SamplerRoute::Vectorized) {
        const std::size_t mn = spec_.rows() * spec_.cols();
        if (mn > kVectorizedCap) {
            throw MechanismError("flattened sampling exceeds the size cap");
        }
        joint_factor_ =
            spd_sqrt(SpdMatrix::trusted(kron(spec_.col_cov.mat(), spec_.row_cov.mat())));
        return;
    }
    if (!is_identity(spec_.row_cov.mat())) row_factor_ = spd_sqrt(spec_.row_cov);
    if (!is_identity(spec_.col_cov.mat())) col_factor_ = spd_sqrt(spec_.col_cov);
}

Matrix PreparedSampler::draw(RandomSeed seed) const {
    Rng rng(seed);
    return draw(rng);
}

Matrix PreparedSampler::draw(Rng& rng) const {
    const std::size_t m = spec_.rows();
    const std::size_t n = spec_.cols();
    if (route_ == SamplerRoute::Affine) {
        Matrix z = standard_normals(m, n, rng);
        if (row_factor_.size() > 0) z = matmul(row_factor_, z);
        if (col_factor_.size() > 0) z = matmul_nt(z, col_factor_);
        return add(spec_.mean, z);
    }
    const std::size_t mn = m * n;
    Matrix g(mn, 1);
    for (std::size_t i = 0; i < mn; ++i) g(i, 0) = rng.normal();
    const Matrix v = matmul(joint_factor_, g);

    // Column-major unstacking: entry (r, c) lives at flat index c*m + r.
    Matrix z(m, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r) z(r, c) = v(c * m + r, 0);
    }
    return add(spec_.mean, z);
}

Matrix sample_affine(const MvgSpec& spec, RandomSeed seed) {
    return PreparedSampler(spec, SamplerRoute::Affine).draw(seed);
}

Matrix sample_vectorized(const MvgSpec& spec, RandomSeed seed) {
    return PreparedSampler(spec, SamplerRoute::Vectorized).draw(seed);
}

Matrix sample_auto(const MvgSpec& spec, RandomSeed seed) {
    return PreparedSampler(spec).draw(seed);
}

} // namespace mvgdp
