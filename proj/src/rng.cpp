#include "mvgdp/rng.hpp"

#include <cmath>

namespace mvgdp {

Rng::Rng(RandomSeed s) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(s.seed & 0xffffffffu),
        static_cast<std::uint32_t>(s.seed >> 32),
        static_cast<std::uint32_t>(s.stream & 0xffffffffu),
        static_cast<std::uint32_t>(s.stream >> 32),
    };
    gen_.seed(seq);
}

double Rng::uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double k = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * k;
    have_spare_ = true;
    return u * k;
}

double Rng::laplace(double scale) {
    // u in (-1/2, 1/2); x = -scale * sgn(u) * ln(1 - 2|u|).
    double u;
    do {
        u = uniform01() - 0.5;
    } while (u == -0.5);
    const double mag = std::log(1.0 - 2.0 * std::fabs(u));
    return (u < 0.0 ? scale : -scale) * mag;
}

} // namespace mvgdp
