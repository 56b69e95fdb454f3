#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "besov/grid.hpp"
#include "besov/sigma.hpp"

namespace besov {

using Rng = std::mt19937_64;

/// Scalar sequence with support length uniform in [1, max_support] and
/// entries of log-uniform magnitude in [2^-20, 2^20] with random sign.
DyadicSequence random_scalar_sequence(Rng& rng, std::size_t max_support = 32);
/// Magnitudes only, same distribution.
std::vector<double> random_block_norms(Rng& rng, std::size_t max_support = 32);

/// Real grid function with Gaussian Fourier coefficients up to a random
/// cutoff in [1, N/2] and a random algebraic decay (1+|xi|)^{-a}, a in [0, 2].
GridFunction random_grid_function(Rng& rng, std::size_t grid_size);

/// Sequence of unrelated random grid functions; not in the range of L.
DyadicSequence random_grid_sequence(Rng& rng, std::size_t grid_size, std::size_t blocks);

/// Integer sequence with random offset in [-8, 8], length in [1, 16], N(0,1) values.
IntegerSequence random_integer_sequence(Rng& rng);

}  // namespace besov
