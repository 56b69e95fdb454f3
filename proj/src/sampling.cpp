#include "besov/sampling.hpp"

#include <cmath>

#include "besov/fft.hpp"

namespace besov {

std::vector<double> random_block_norms(Rng& rng, std::size_t max_support) {
  std::uniform_int_distribution<std::size_t> len(1, max_support);
  std::uniform_real_distribution<double> expo(-20.0, 20.0);
  std::vector<double> out(len(rng));
  for (double& v : out) v = std::exp2(expo(rng));
  return out;
}

DyadicSequence random_scalar_sequence(Rng& rng, std::size_t max_support) {
  auto mags = random_block_norms(rng, max_support);
  std::bernoulli_distribution sign(0.5);
  for (double& v : mags) {
    if (sign(rng)) v = -v;
  }
  return scalar_sequence(mags);
}

GridFunction random_grid_function(Rng& rng, std::size_t grid_size) {
  (void)grid_exponent(grid_size);
  const std::size_t half = grid_size / 2;
  std::uniform_int_distribution<std::size_t> cut(1, half);
  std::uniform_real_distribution<double> decay(0.0, 2.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t cutoff = cut(rng);
  const double a = decay(rng);
  std::vector<Complex> c(half + 1, Complex(0.0, 0.0));
  for (std::size_t k = 0; k <= cutoff; ++k) {
    const double amp = std::pow(1.0 + static_cast<double>(k), -a);
    const double re = gauss(rng);
    const double im = (k == 0 || k == half) ? 0.0 : gauss(rng);
    c[k] = amp * Complex(re, im);
  }
  return GridFunction(irfft(c, grid_size));
}

DyadicSequence random_grid_sequence(Rng& rng, std::size_t grid_size, std::size_t blocks) {
  std::vector<Element> entries;
  entries.reserve(blocks);
  for (std::size_t j = 0; j < blocks; ++j) {
    entries.push_back(random_grid_function(rng, grid_size).as_element());
  }
  return DyadicSequence(grid_l2_space(grid_size), std::move(entries));
}

IntegerSequence random_integer_sequence(Rng& rng) {
  std::uniform_int_distribution<int> off(-8, 8);
  std::uniform_int_distribution<std::size_t> len(1, 16);
  std::normal_distribution<double> gauss(0.0, 1.0);
  IntegerSequence u;
  u.first = off(rng);
  u.values.resize(len(rng));
  for (double& v : u.values) v = gauss(rng);
  return u;
}

}  // namespace besov
