#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mvgdp/matrix.hpp"
#include "mvgdp/rng.hpp"

namespace mvgdp {

// Feature matrix with columns as records, plus the declared entry range the
// sensitivity calculus relies on. Entries must stay inside the range.
class Dataset {
public:
    Dataset(Matrix features, std::vector<std::string> feature_names, double lo, double hi);

    const Matrix& features() const { return features_; }
    const std::vector<std::string>& feature_names() const { return names_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t num_features() const { return features_.rows(); }
    std::size_t num_samples() const { return features_.cols(); }
    // Largest entry magnitude the range permits.
    double abs_bound() const;
    std::size_t feature_index(const std::string& name) const;

private:
    Matrix features_;
    std::vector<std::string> names_;
    double lo_;
    double hi_;
};

// Shortest decimal form that parses back to the same double; shared by every
// CSV writer so emitted files round-trip byte-identically.
std::string format_double(double v);

// Headerless numeric CSV.
Matrix load_matrix_csv(const std::string& path);
void save_matrix_csv(const Matrix& m, const std::string& path);

// Dataset CSV: header row of feature names, then one row per sample. The
// declared range is taken from the data itself when not supplied.
Dataset load_dataset_csv(const std::string& path);
Dataset load_dataset_csv(const std::string& path, double lo, double hi);
void save_dataset_csv(const Dataset& d, const std::string& path);

// ----- seeded synthetic datasets ----------------------------------------------------
// Shape-matched stand-ins for the benchmark corpora so every experiment runs
// offline; each has deliberate directional structure so anisotropic noise
// designs have something to exploit.

// Entries in [-1, 1]; last feature is a linear response to the others plus
// mild noise, named "target".
Dataset synthetic_regression(std::size_t features, std::size_t samples, RandomSeed seed);

// Zero-mean features with a steeply decaying covariance spectrum, clipped to
// [-scale, scale].
Dataset synthetic_anisotropic(std::size_t features, std::size_t samples, double scale,
                              RandomSeed seed);

// Entries in [0, 1] around 0.5 with low-rank correlation across features.
Dataset synthetic_bounded01(std::size_t features, std::size_t samples, RandomSeed seed);

} // namespace mvgdp
