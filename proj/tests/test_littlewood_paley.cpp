#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "besov/errors.hpp"
#include "besov/littlewood_paley.hpp"
#include "besov/sampling.hpp"

using namespace besov;

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// O(N^2) DFT over -N/2 < xi <= N/2, normalized by 1/N.
std::vector<C> naive_dft(const GridFunction& u) {
  const std::size_t N = u.size();
  std::vector<C> c(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double xi = static_cast<double>(k) - static_cast<double>(N / 2) + 1.0;
    C acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += u[i] * std::polar(1.0, -xi * u.node(i));
    c[k] = acc / static_cast<double>(N);
  }
  return c;
}

double naive_xi(std::size_t k, std::size_t N) {
  return static_cast<double>(k) - static_cast<double>(N / 2) + 1.0;
}

// Applies m(|xi|) through the naive transform and its inverse.
GridFunction naive_multiplier(const GridFunction& u, const std::function<double(double)>& m) {
  const std::size_t N = u.size();
  const auto c = naive_dft(u);
  std::vector<double> out(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    C acc = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      const double xi = naive_xi(k, N);
      acc += m(std::abs(xi)) * c[k] * std::polar(1.0, xi * u.node(i));
    }
    out[i] = acc.real();
  }
  return GridFunction(out);
}

double naive_sobolev(const GridFunction& u, double s) {
  const auto c = naive_dft(u);
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double xi = naive_xi(k, u.size());
    acc += std::pow(1.0 + xi * xi, s) * std::norm(c[k]);
  }
  return std::sqrt(2.0 * kPi * acc);
}

// Composite Simpson on the normalized bump, independent of the library quadrature.
double bump_cdf_oracle(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  auto f = [](double x) { return std::abs(x) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - x * x)); };
  auto simpson = [&](double a, double b) {
    const int n = 20000;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };
  return simpson(-1.0, t) / simpson(-1.0, 1.0);
}

}  // namespace

TEST(Profiles, BumpCdf) {
  EXPECT_EQ(bump_cdf(-1.5), 0.0);
  EXPECT_EQ(bump_cdf(1.0), 1.0);
  EXPECT_NEAR(bump_cdf(0.0), 0.5, 1e-15);
  for (double t = -0.95; t < 1.0; t += 0.1) {
    EXPECT_NEAR(bump_cdf(t), bump_cdf_oracle(t), 1e-10) << t;
    EXPECT_NEAR(bump_cdf(t) + bump_cdf(-t), 1.0, 1e-14);
  }
}

TEST(Profiles, PsiSupportAndMonotone) {
  for (double xi = 0.0; xi <= 0.75; xi += 0.01) EXPECT_EQ(psi_profile(xi), 1.0);
  for (double xi = 1.0; xi <= 3.0; xi += 0.01) EXPECT_EQ(psi_profile(xi), 0.0);
  double prev = 1.0;
  for (double xi = 0.75; xi <= 1.0; xi += 0.001) {
    EXPECT_LE(psi_profile(xi), prev);
    prev = psi_profile(xi);
  }
}

TEST(Profiles, PhiSupportAndFatIdentities) {
  for (double xi = 0.0; xi <= 0.75; xi += 0.01) EXPECT_EQ(phi_profile(xi), 0.0);
  for (double xi = 2.0; xi <= 5.0; xi += 0.01) EXPECT_EQ(phi_profile(xi), 0.0);
  for (double xi = 0.0; xi <= 4.0; xi += 0.003) {
    EXPECT_EQ(psi_fat(xi) * psi_profile(xi), psi_profile(xi));
    EXPECT_EQ(phi_fat(xi) * phi_profile(xi), phi_profile(xi));
  }
}

TEST(FilterBank, PartitionAndAlmostOrthogonality) {
  for (std::size_t N : {8u, 64u, 256u, 1024u}) {
    const auto bank = FilterBank::build(N);
    EXPECT_EQ(bank.j_max(), static_cast<std::size_t>(std::log2(N)));
    for (std::size_t k = 0; k <= N / 2; ++k) {
      EXPECT_LE(std::abs(bank.partition_sum(k) - 1.0), 1e-12) << N << " " << k;
      EXPECT_GE(bank.orthogonality_sum(k), 1.0 / 3.0 - 1e-12);
      EXPECT_LE(bank.orthogonality_sum(k), 1.0 + 1e-12);
      EXPECT_LE(bank.active_blocks(k).size(), 3u);
    }
  }
  EXPECT_GE(FilterBank::build(64).orthogonality_sum(1), 1.0 / 3.0);
}

TEST(FilterBank, BlockMultipliersMatchProfiles) {
  const auto bank = FilterBank::build(64);
  for (std::size_t k = 0; k <= 32; ++k) {
    EXPECT_EQ(bank.analysis(0, k), psi_profile(static_cast<double>(k)));
    for (std::size_t j = 1; j <= bank.j_max(); ++j) {
      EXPECT_EQ(bank.analysis(j, k), phi_profile(std::ldexp(static_cast<double>(k), 1 - static_cast<int>(j))));
    }
  }
}

TEST(FilterBank, RejectsBadGrid) {
  EXPECT_THROW(FilterBank::build(4), PreconditionError);
  EXPECT_THROW(FilterBank::build(48), PreconditionError);
}

TEST(Spectral, MatchesNaiveDft) {
  Rng rng(31);
  const auto u = random_grid_function(rng, 32);
  const auto c = SpectralCoeffs::of(u);
  const auto o = naive_dft(u);
  EXPECT_TRUE(c.is_hermitian());
  for (std::size_t k = 0; k < 32; ++k) {
    const auto xi = static_cast<std::int64_t>(naive_xi(k, 32));
    EXPECT_LT(std::abs(c.at(xi) - o[k]), 1e-14);
  }
}

TEST(Blocks, MatchNaiveMultiplier) {
  Rng rng(32);
  const auto bank = FilterBank::build(64);
  const auto u = random_grid_function(rng, 64);
  for (std::size_t j = 0; j <= bank.j_max(); ++j) {
    const auto fast = apply_block(u, j, bank);
    const auto slow = naive_multiplier(u, [&](double a) { return bank.analysis(j, static_cast<std::size_t>(a)); });
    EXPECT_LT(max_abs_diff(fast, slow), 1e-13);
  }
}

TEST(Blocks, ConstantsAndZero) {
  const auto bank = FilterBank::build(32);
  const auto c = GridFunction::sample(32, [](double) { return 2.5; });
  EXPECT_LT(max_abs_diff(apply_block(c, 0, bank), c), 1e-15);
  for (std::size_t j = 1; j <= bank.j_max(); ++j) EXPECT_LT(apply_block(c, j, bank).max_abs(), 1e-15);
  EXPECT_TRUE(decompose(GridFunction::zero(32), bank).is_zero());
  EXPECT_EQ(reconstruct(decompose(GridFunction::zero(32), bank), bank).max_abs(), 0.0);
  EXPECT_EQ(reconstruct(DyadicSequence(grid_l2_space(32)), bank).max_abs(), 0.0);
}

TEST(Decompose, Cos8xLandsInAdjacentBlocks) {
  const auto bank = FilterBank::build(64);
  const auto f = decompose(GridFunction::sample(64, [](double x) { return std::cos(8.0 * x); }), bank);
  const auto norms = f.block_norms();
  std::vector<std::size_t> expected;
  for (std::size_t j = 1; j <= bank.j_max(); ++j) {
    if (phi_profile(std::ldexp(8.0, 1 - static_cast<int>(j))) != 0.0) expected.push_back(j);
  }
  ASSERT_FALSE(expected.empty());
  ASSERT_LE(expected.size(), 2u);
  for (std::size_t j = 0; j < norms.size(); ++j) {
    const bool on = std::find(expected.begin(), expected.end(), j) != expected.end();
    if (on) EXPECT_GT(norms[j], 1e-3) << j;
    else EXPECT_LT(norms[j], 1e-14) << j;
  }
  const double c = lr_ratio(f, 1.0, bank);
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_GT(c, 0.0);
}

TEST(Decompose, ExactInversion) {
  Rng rng(33);
  for (std::size_t N : {8u, 32u, 256u}) {
    const auto bank = FilterBank::build(N);
    for (int t = 0; t < 50; ++t) {
      const auto u = random_grid_function(rng, N);
      EXPECT_LE(max_abs_diff(reconstruct(decompose(u, bank), bank), u), 1e-10 * u.max_abs());
    }
  }
}

TEST(Decompose, BlocksAreContractions) {
  Rng rng(34);
  const auto bank = FilterBank::build(64);
  const auto l2 = grid_l2_space(64);
  for (int t = 0; t < 50; ++t) {
    const auto u = random_grid_function(rng, 64);
    const double n = l2->eval(u.as_element());
    for (double b : decompose(u, bank).block_norms()) EXPECT_LE(b, n * (1.0 + 1e-12));
  }
}

TEST(Sobolev, SingleModeAndOracle) {
  // cos 4x / sqrt(pi) has unit L^2 norm on the torus
  const auto u = GridFunction::sample(32, [](double x) { return std::cos(4.0 * x) / std::sqrt(kPi); });
  EXPECT_NEAR(sobolev_norm(u, 0.0), 1.0, 1e-14);
  EXPECT_NEAR(sobolev_norm(u, 1.0), std::sqrt(17.0), 1e-13);
  EXPECT_EQ(sobolev_norm(GridFunction::zero(32), 2.0), 0.0);
  Rng rng(35);
  for (int t = 0; t < 20; ++t) {
    const auto v = random_grid_function(rng, 32);
    for (double s : {-1.0, 0.0, 1.5}) {
      const double o = naive_sobolev(v, s);
      EXPECT_NEAR(sobolev_norm(v, s), o, 1e-12 * o);
    }
  }
}

TEST(Sobolev, NyquistCountsOnce) {
  const auto u = GridFunction::sample(8, [](double x) { return std::cos(4.0 * x); });
  EXPECT_NEAR(sobolev_norm(u, 0.0), std::sqrt(2.0 * kPi), 1e-14);
  EXPECT_NEAR(sobolev_norm(u, 1.0), naive_sobolev(u, 1.0), 1e-13);
}

TEST(Sobolev, BlockwiseEquivalence) {
  Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    const std::size_t N = 64;
    const auto bank = FilterBank::build(N);
    const auto u = random_grid_function(rng, N);
    for (double s : {-1.0, 0.0, 1.0, 2.0}) {
      const double h = sobolev_norm(u, s);
      const double b = blockwise_sobolev_sum(u, s, bank);
      ASSERT_GE(b, h * h / 3.0 * (1.0 - 1e-9));
      ASSERT_LE(b, 3.0 * h * h * (1.0 + 1e-9));
    }
  }
}

TEST(Besov, DyadicWeightBracket) {
  Rng rng(37);
  const auto bank = FilterBank::build(128);
  for (double s : {-1.0, 0.5, 2.0}) {
    const auto range = dyadic_sobolev_constant(bank, s);
    EXPECT_GE(range.constant(), 1.0);
    for (int t = 0; t < 30; ++t) {
      const auto u = random_grid_function(rng, 128);
      const double b = besov_norm(u, s, Integrability(2.0), Summability(2.0), bank);
      const double sum = blockwise_sobolev_sum(u, s, bank);
      EXPECT_GE(sum, range.min_ratio * b * b * (1.0 - 1e-9));
      EXPECT_LE(sum, range.max_ratio * b * b * (1.0 + 1e-9));
    }
  }
  EXPECT_EQ(besov_norm(GridFunction::zero(16), 1.0, Integrability(2.0), Summability(2.0),
                       FilterBank::build(16)),
            0.0);
}

TEST(Besov, BesselPotentialIsSobolevShift) {
  Rng rng(38);
  const auto u = random_grid_function(rng, 64);
  EXPECT_NEAR(sobolev_norm(bessel_potential(u, 1.5), 0.0), sobolev_norm(u, 1.5),
              1e-12 * sobolev_norm(u, 1.5));
}

TEST(Reconstruction, RatiosAreFinite) {
  Rng rng(39);
  const auto bank = FilterBank::build(64);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_grid_sequence(rng, 64, bank.block_count());
    const double r = reconstruction_ratio(f, 1.0, Summability(2.0), bank);
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_TRUE(std::isfinite(lr_ratio(f, 1.0, bank)));
  }
  EXPECT_EQ(lr_ratio(DyadicSequence(grid_l2_space(64)), 1.0, bank), 0.0);
}
