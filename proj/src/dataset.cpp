#include "mvgdp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "mvgdp/errors.hpp"

namespace mvgdp {

namespace {

void require_cfg(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

double parse_double(const std::string& token, const std::string& path) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("malformed number '" + token + "' in " + path);
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    require_cfg(static_cast<bool>(in), "cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    require_cfg(!rows.empty(), "empty csv file " + path);
    for (const auto& row : rows)
        require_cfg(row.size() == rows.front().size(), "ragged csv rows in " + path);
    return rows;
}

} // namespace

Dataset::Dataset(Matrix features, std::vector<std::string> feature_names, double lo, double hi)
    : features_(std::move(features)), names_(std::move(feature_names)), lo_(lo), hi_(hi) {
    require_cfg(std::isfinite(lo_) && std::isfinite(hi_) && lo_ < hi_,
                "dataset range must satisfy lo < hi");
    require_cfg(names_.size() == features_.rows(),
                "feature name count must match the feature rows");
    require_cfg(features_.cols() >= 2, "dataset needs at least two samples");
    for (std::size_t i = 0; i < features_.rows(); ++i)
        for (std::size_t j = 0; j < features_.cols(); ++j) {
            const double v = features_(i, j);
            require_cfg(std::isfinite(v) && v >= lo_ && v <= hi_,
                        "dataset entry outside its declared range");
        }
}

double Dataset::abs_bound() const { return std::max(std::abs(lo_), std::abs(hi_)); }

std::size_t Dataset::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw ConfigError("no feature named '" + name + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw ConfigError("cannot format value");
    return std::string(buf, ptr);
}

Matrix load_matrix_csv(const std::string& path) {
    const auto rows = read_csv(path);
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = parse_double(rows[i][j], path);
    return m;
}

void save_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    require_cfg(static_cast<bool>(out), "cannot write " + path);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    require_cfg(static_cast<bool>(out), "failed writing " + path);
}

namespace {

Dataset dataset_from_rows(const std::vector<std::vector<std::string>>& rows,
                          const std::string& path, const double* lo, const double* hi) {
    require_cfg(rows.size() >= 3, "dataset csv needs a header and at least two samples");
    const std::vector<std::string>& names = rows.front();
    const std::size_t m = names.size();
    const std::size_t n = rows.size() - 1;
    Matrix features(m, n);
    double seen_lo = 0.0, seen_hi = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            const double v = parse_double(rows[j + 1][i], path);
            features(i, j) = v;
            if (i == 0 && j == 0) {
                seen_lo = seen_hi = v;
            } else {
                seen_lo = std::min(seen_lo, v);
                seen_hi = std::max(seen_hi, v);
            }
        }
    if (lo && hi) return Dataset(std::move(features), names, *lo, *hi);
    // No declared range: adopt the observed one, widened when degenerate.
    if (seen_lo == seen_hi) {
        seen_lo -= 0.5;
        seen_hi += 0.5;
    }
    return Dataset(std::move(features), names, seen_lo, seen_hi);
}

} // namespace

Dataset load_dataset_csv(const std::string& path) {
    return dataset_from_rows(read_csv(path), path, nullptr, nullptr);
}

Dataset load_dataset_csv(const std::string& path, double lo, double hi) {
    return dataset_from_rows(read_csv(path), path, &lo, &hi);
}

void save_dataset_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    require_cfg(static_cast<bool>(out), "cannot write " + path);
    for (std::size_t i = 0; i < d.num_features(); ++i) {
        if (i) out << ',';
        out << d.feature_names()[i];
    }
    out << '\n';
    const Matrix& f = d.features();
    for (std::size_t j = 0; j < d.num_samples(); ++j) {
        for (std::size_t i = 0; i < d.num_features(); ++i) {
            if (i) out << ',';
            out << format_double(f(i, j));
        }
        out << '\n';
    }
    require_cfg(static_cast<bool>(out), "failed writing " + path);
}

namespace {

std::vector<std::string> default_names(std::size_t m) {
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t i = 0; i < m; ++i) names.push_back("f" + std::to_string(i));
    return names;
}

} // namespace

Dataset synthetic_regression(std::size_t features, std::size_t samples, RandomSeed seed) {
    require_cfg(features >= 2 && samples >= 2, "regression data needs >= 2 features and samples");
    const std::size_t k = features - 1;
    std::vector<double> coeff(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double fall = k > 1 ? static_cast<double>(i) / static_cast<double>(k - 1) : 0.0;
        coeff[i] = (i % 2 == 0 ? 1.0 : -1.0) * (0.9 - 0.6 * fall);
    }
    Rng rng(seed);
    Matrix x(features, samples);
    for (std::size_t j = 0; j < samples; ++j) {
        const double latent = 2.0 * rng.uniform01() - 1.0;
        double response = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double v =
                std::clamp(coeff[i] * latent + 0.35 * rng.normal(), -1.0, 1.0);
            x(i, j) = v;
            response += coeff[i] * v;
        }
        x(k, j) = std::clamp(response / static_cast<double>(k) + 0.05 * rng.normal(),
                             -1.0, 1.0);
    }
    std::vector<std::string> names = default_names(k);
    names.push_back("target");
    return Dataset(std::move(x), std::move(names), -1.0, 1.0);
}

Dataset synthetic_anisotropic(std::size_t features, std::size_t samples, double scale,
                              RandomSeed seed) {
    require_cfg(features >= 1 && samples >= 2 && scale > 0.0,
                "anisotropic data needs features, >= 2 samples, positive scale");
    // Per-direction deviations decay geometrically; a fixed rotation mixes
    // them off the coordinate axes.
    std::vector<double> dev(features);
    for (std::size_t i = 0; i < features; ++i)
        dev[i] = 0.55 * scale * std::pow(0.28, static_cast<double>(i));

    Matrix rot = Matrix::identity(features);
    for (std::size_t i = 0; i + 1 < features; ++i) {
        const double angle = 0.4 + 0.17 * static_cast<double>(i);
        Matrix g = Matrix::identity(features);
        g(i, i) = std::cos(angle);
        g(i + 1, i + 1) = std::cos(angle);
        g(i, i + 1) = -std::sin(angle);
        g(i + 1, i) = std::sin(angle);
        rot = matmul(g, rot);
    }

    Rng rng(seed);
    Matrix x(features, samples);
    std::vector<double> latent(features);
    for (std::size_t j = 0; j < samples; ++j) {
        for (std::size_t i = 0; i < features; ++i) latent[i] = dev[i] * rng.normal();
        for (std::size_t i = 0; i < features; ++i) {
            double v = 0.0;
            for (std::size_t kk = 0; kk < features; ++kk) v += rot(i, kk) * latent[kk];
            x(i, j) = std::clamp(v, -scale, scale);
        }
    }
    return Dataset(std::move(x), default_names(features), -scale, scale);
}

Dataset synthetic_bounded01(std::size_t features, std::size_t samples, RandomSeed seed) {
    require_cfg(features >= 1 && samples >= 2, "bounded data needs features and >= 2 samples");
    const std::size_t rank = std::min<std::size_t>(3, features);
    Matrix loading(features, rank);
    for (std::size_t i = 0; i < features; ++i)
        for (std::size_t kk = 0; kk < rank; ++kk)
            loading(i, kk) = 0.3 / static_cast<double>(kk + 1) *
                             std::sin(0.5 + static_cast<double>((i + 1) * (kk + 1)));

    Rng rng(seed);
    Matrix x(features, samples);
    std::vector<double> u(rank);
    for (std::size_t j = 0; j < samples; ++j) {
        for (std::size_t kk = 0; kk < rank; ++kk) u[kk] = rng.normal();
        for (std::size_t i = 0; i < features; ++i) {
            double v = 0.5;
            for (std::size_t kk = 0; kk < rank; ++kk) v += loading(i, kk) * u[kk];
            v += 0.06 * rng.normal();
            x(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return Dataset(std::move(x), default_names(features), 0.0, 1.0);
}

} // namespace mvgdp
