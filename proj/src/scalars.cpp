#include "mvgdp/scalars.hpp"

#include <cmath>

#include "mvgdp/errors.hpp"

namespace mvgdp {

double harmonic(std::size_t r, HarmonicOrder order) {
    if (r == 0) throw ParameterError("harmonic order count must be at least 1");
    double sum = 0.0;
    // Summing small terms first keeps the rounding error at the last bit.
    if (order == HarmonicOrder::One) {
        for (std::size_t i = r; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
    } else {
        for (std::size_t i = r; i >= 1; --i) sum += 1.0 / std::sqrt(static_cast<double>(i));
    }
    return sum;
}

double zeta(double delta, std::size_t m, std::size_t n) {
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
    if (m == 0 || n == 0) throw ParameterError("matrix dimensions must be positive");
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    const double neg_log = -std::log(delta);
    return 2.0 * std::sqrt(mn * neg_log) + 2.0 * neg_log + mn;
}

} // namespace mvgdp
