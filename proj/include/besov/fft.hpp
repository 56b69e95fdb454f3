#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace besov {

using Complex = std::complex<double>;

/// Real-to-half-complex transform on an N-point torus grid with the
/// normalization u_hat(k) = (1/N) sum_x u(x) e^{-ikx}, k = 0..N/2.
/// Plans are cached per thread; plan creation is serialized.
std::vector<Complex> rfft(std::span<const double> samples);
/// Inverse of rfft: u(x) = sum_k u_hat(k) e^{ikx} over the full Hermitian spectrum.
std::vector<double> irfft(std::span<const Complex> half_spectrum, std::size_t grid_size);

}  // namespace besov
