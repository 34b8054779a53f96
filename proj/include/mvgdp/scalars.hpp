#pragma once

#include <cstddef>

namespace mvgdp {

enum class HarmonicOrder { One, Half };

// Generalized harmonic number: sum over i in [1, r] of 1/i (order One) or
// 1/sqrt(i) (order Half).
double harmonic(std::size_t r, HarmonicOrder order);

// High-probability radius for the squared Frobenius norm of an m-by-n matrix
// of standard normals at tail mass delta:
//   zeta = 2*sqrt(-m*n*ln(delta)) - 2*ln(delta) + m*n.
// Requires delta in (0, 1).
double zeta(double delta, std::size_t m, std::size_t n);

} // namespace mvgdp
