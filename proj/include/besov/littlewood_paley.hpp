#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "besov/fft.hpp"
#include "besov/grid.hpp"
#include "besov/sigma.hpp"

namespace besov {

// ============================================================================
// Fourier coefficients on integer frequencies -N/2 < xi <= N/2 with
// u_hat(xi) = (1/N) sum_x u(x) e^{-i xi x}.
// ============================================================================
class SpectralCoeffs {
 public:
  static SpectralCoeffs of(const GridFunction& u);

  std::size_t grid_size() const { return N_; }
  std::int64_t min_freq() const { return -static_cast<std::int64_t>(N_ / 2) + 1; }
  std::int64_t max_freq() const { return static_cast<std::int64_t>(N_ / 2); }
  Complex at(std::int64_t xi) const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  bool is_hermitian(double tol = 1e-14) const;

 private:
  SpectralCoeffs(std::size_t N, std::vector<Complex> c) : N_(N), coeffs_(std::move(c)) {}
  std::size_t N_;
  std::vector<Complex> coeffs_;  // index xi - min_freq()
};

// ----------------------------------------------------------------------------
// Radial profiles. psi = 1 on |xi| <= 3/4, 0 on |xi| >= 1, smooth monotone
// transition given by the normalized CDF of the bump exp(-1/(1-t^2)).
// ----------------------------------------------------------------------------
/// Normalized CDF of exp(-1/(1-t^2)) on [-1, 1]; 0 below, 1 above.
double bump_cdf(double t);
double psi_profile(double xi);
double phi_profile(double xi);  // psi(xi/2) - psi(xi)
double psi_fat(double xi);      // psi(xi/2)
double phi_fat(double xi);      // psi(xi/4) - psi(4 xi)

// ============================================================================
// Sampled dyadic multipliers. Block 0 is psi(D), block j >= 1 is
// phi(2^{-(j-1)} D); blocks run 0..j_max with j_max = log2(N), the least
// index for which the blocks sum to the identity on every grid frequency.
// ============================================================================
class FilterBank {
 public:
  static FilterBank build(std::size_t grid_size);

  std::size_t grid_size() const { return N_; }
  std::size_t j_max() const { return j_max_; }
  std::size_t block_count() const { return j_max_ + 1; }

  /// Analysis multiplier of block j at |xi|, for |xi| <= N/2.
  double analysis(std::size_t j, std::size_t abs_xi) const;
  /// Reconstruction multiplier (psi_fat / phi_fat dilate) of block j at |xi|.
  double synthesis(std::size_t j, std::size_t abs_xi) const;

  /// Profile samples at integer frequencies 0..N/2.
  const std::vector<double>& psi() const { return psi_; }
  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& psi_fat_samples() const { return psi_fat_; }
  const std::vector<double>& phi_fat_samples() const { return phi_fat_; }

  /// sum_j m_j(xi) and sum_j m_j(xi)^2 at |xi|.
  double partition_sum(std::size_t abs_xi) const;
  double orthogonality_sum(std::size_t abs_xi) const;

  /// Blocks j whose multiplier does not vanish at |xi|.
  std::vector<std::size_t> active_blocks(std::size_t abs_xi) const;

 private:
  FilterBank() = default;
  std::size_t N_ = 0;
  std::size_t j_max_ = 0;
  std::vector<double> psi_, phi_, psi_fat_, phi_fat_;
  std::vector<std::vector<double>> analysis_;   // [j][abs_xi]
  std::vector<std::vector<double>> synthesis_;  // [j][abs_xi]
};

/// Applies a real even multiplier m(|xi|), |xi| = 0..N/2, to u.
GridFunction apply_multiplier(const GridFunction& u, const std::vector<double>& m);

/// Delta_j u.
GridFunction apply_block(const GridFunction& u, std::size_t j, const FilterBank& bank);

/// L u = (Delta_0 u, ..., Delta_{j_max} u) over the grid L^2 base space.
DyadicSequence decompose(const GridFunction& u, const FilterBank& bank);
/// R f = psi_fat(D) f_0 + sum_{j>=1} phi_fat(2^{-(j-1)} D) f_j.
GridFunction reconstruct(const DyadicSequence& f, const FilterBank& bank);

/// (sum_xi (1+xi^2)^s |u_hat(xi)|^2 * 2 pi)^{1/2}.
double sobolev_norm(const GridFunction& u, double s);
/// (sum_j 2^{qjs} ||Delta_j u||_{L^p}^q)^{1/q}.
double besov_norm(const GridFunction& u, double s, Integrability p, Summability q,
                  const FilterBank& bank);
/// sum_p ||Delta_p <D>^s u||_{L^2}^2.
double blockwise_sobolev_sum(const GridFunction& u, double s, const FilterBank& bank);
/// <D>^s u.
GridFunction bessel_potential(const GridFunction& u, double s);

/// Extremes of (1+xi^2)^s / 2^{2js} over the nonzero support of each block.
struct DyadicWeightRange {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// C >= 1 with 1/C <= ratio <= C.
  double constant() const;
};
DyadicWeightRange dyadic_sobolev_constant(const FilterBank& bank, double s);

/// ||L(R f)||_{Sigma^s_1} / ||f||_{Sigma^s_1}; 0 for f = 0.
double lr_ratio(const DyadicSequence& f, double s, const FilterBank& bank);
/// ||R f||_{H^s} / ||f||_{Sigma^s_q}; 0 for f = 0.
double reconstruction_ratio(const DyadicSequence& f, double s, Summability q,
                            const FilterBank& bank);

}  // namespace besov
