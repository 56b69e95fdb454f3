#include "besov/littlewood_paley.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>

#include "besov/errors.hpp"

namespace besov {

// ----------------------------------------------------------------------------
// SpectralCoeffs
// ----------------------------------------------------------------------------
SpectralCoeffs SpectralCoeffs::of(const GridFunction& u) {
  const std::size_t N = u.size();
  const auto half = rfft(u.values());
  std::vector<Complex> full(N);
  const auto lo = -static_cast<std::int64_t>(N / 2) + 1;
  for (std::int64_t xi = lo; xi <= static_cast<std::int64_t>(N / 2); ++xi) {
    const Complex c = xi >= 0 ? half[static_cast<std::size_t>(xi)]
                              : std::conj(half[static_cast<std::size_t>(-xi)]);
    full[static_cast<std::size_t>(xi - lo)] = c;
  }
  return SpectralCoeffs(N, std::move(full));
}

Complex SpectralCoeffs::at(std::int64_t xi) const {
  if (xi < min_freq() || xi > max_freq()) return Complex(0.0, 0.0);
  return coeffs_[static_cast<std::size_t>(xi - min_freq())];
}

bool SpectralCoeffs::is_hermitian(double tol) const {
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double bound = tol * std::max(scale, 1.0);
  for (std::int64_t xi = 1; xi < max_freq(); ++xi) {
    if (std::abs(at(xi) - std::conj(at(-xi))) > bound) return false;
  }
  return std::abs(at(0).imag()) <= bound && std::abs(at(max_freq()).imag()) <= bound;
}

// ----------------------------------------------------------------------------
// Profiles
// ----------------------------------------------------------------------------
namespace {

double bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

const gsl_integration_glfixed_table* gauss_table() {
  // Never freed; shared read-only by all threads after initialization.
  static const gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(64);
  return table;
}

// Composite rule: eight 64-node panels on [-1, upper], upper <= 0.
double bump_integral(double upper) {
  gsl_function F;
  F.function = [](double t, void*) { return bump(t); };
  F.params = nullptr;
  constexpr int kPanels = 8;
  const double h = (upper + 1.0) / kPanels;
  double acc = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    acc += gsl_integration_glfixed(&F, -1.0 + i * h, -1.0 + (i + 1) * h, gauss_table());
  }
  return acc;
}

}  // namespace

double bump_cdf(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  static const double half = bump_integral(0.0);
  if (t > 0.0) return 1.0 - bump_cdf(-t);
  return std::clamp(0.5 * bump_integral(t) / half, 0.0, 1.0);
}

double psi_profile(double xi) {
  const double a = std::abs(xi);
  if (a <= 0.75) return 1.0;
  if (a >= 1.0) return 0.0;
  return 1.0 - bump_cdf(8.0 * a - 7.0);
}

double phi_profile(double xi) { return psi_profile(xi / 2.0) - psi_profile(xi); }
double psi_fat(double xi) { return psi_profile(xi / 2.0); }
double phi_fat(double xi) { return psi_profile(xi / 4.0) - psi_profile(4.0 * xi); }

// ----------------------------------------------------------------------------
// FilterBank
// ----------------------------------------------------------------------------
FilterBank FilterBank::build(std::size_t grid_size) {
  FilterBank b;
  b.N_ = grid_size;
  b.j_max_ = grid_exponent(grid_size);
  const std::size_t half = grid_size / 2;
  b.psi_.resize(half + 1);
  b.phi_.resize(half + 1);
  b.psi_fat_.resize(half + 1);
  b.phi_fat_.resize(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const double xi = static_cast<double>(k);
    b.psi_[k] = psi_profile(xi);
    b.phi_[k] = phi_profile(xi);
    b.psi_fat_[k] = psi_fat(xi);
    b.phi_fat_[k] = phi_fat(xi);
  }
  b.analysis_.assign(b.j_max_ + 1, std::vector<double>(half + 1, 0.0));
  b.synthesis_.assign(b.j_max_ + 1, std::vector<double>(half + 1, 0.0));
  b.analysis_[0] = b.psi_;
  b.synthesis_[0] = b.psi_fat_;
  for (std::size_t j = 1; j <= b.j_max_; ++j) {
    const double dilate = std::ldexp(1.0, -static_cast<int>(j - 1));
    for (std::size_t k = 0; k <= half; ++k) {
      const double xi = static_cast<double>(k) * dilate;
      b.analysis_[j][k] = phi_profile(xi);
      b.synthesis_[j][k] = phi_fat(xi);
    }
  }
  return b;
}

double FilterBank::analysis(std::size_t j, std::size_t abs_xi) const {
  if (j > j_max_) throw PreconditionError("block index " + std::to_string(j) + " > j_max");
  if (abs_xi > N_ / 2) throw PreconditionError("frequency outside the grid");
  return analysis_[j][abs_xi];
}

double FilterBank::synthesis(std::size_t j, std::size_t abs_xi) const {
  if (j > j_max_) throw PreconditionError("block index " + std::to_string(j) + " > j_max");
  if (abs_xi > N_ / 2) throw PreconditionError("frequency outside the grid");
  return synthesis_[j][abs_xi];
}

double FilterBank::partition_sum(std::size_t abs_xi) const {
  double acc = 0.0;
  for (std::size_t j = 0; j <= j_max_; ++j) acc += analysis(j, abs_xi);
  return acc;
}

double FilterBank::orthogonality_sum(std::size_t abs_xi) const {
  double acc = 0.0;
  for (std::size_t j = 0; j <= j_max_; ++j) {
    const double m = analysis(j, abs_xi);
    acc += m * m;
  }
  return acc;
}

std::vector<std::size_t> FilterBank::active_blocks(std::size_t abs_xi) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= j_max_; ++j) {
    if (analysis(j, abs_xi) != 0.0) out.push_back(j);
  }
  return out;
}

// ----------------------------------------------------------------------------
// Decomposition and reconstruction
// ----------------------------------------------------------------------------
namespace {

void require_bank(const GridFunction& u, const FilterBank& bank) {
  if (u.size() != bank.grid_size()) {
    throw PreconditionError("grid size " + std::to_string(u.size()) + " does not match bank size " +
                            std::to_string(bank.grid_size()));
  }
}

// Hermitian-half weights: the modes 0 and N/2 appear once in the full sum.
double half_weight(std::size_t k, std::size_t N) { return (k == 0 || k == N / 2) ? 1.0 : 2.0; }

}  // namespace

GridFunction apply_multiplier(const GridFunction& u, const std::vector<double>& m) {
  const std::size_t N = u.size();
  if (m.size() != N / 2 + 1) throw PreconditionError("multiplier length must be N/2 + 1");
  auto c = rfft(u.values());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= m[k];
  return GridFunction(irfft(c, N));
}

GridFunction apply_block(const GridFunction& u, std::size_t j, const FilterBank& bank) {
  require_bank(u, bank);
  if (j > bank.j_max()) throw PreconditionError("block index " + std::to_string(j) + " > j_max");
  auto c = rfft(u.values());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= bank.analysis(j, k);
  return GridFunction(irfft(c, u.size()));
}

DyadicSequence decompose(const GridFunction& u, const FilterBank& bank) {
  require_bank(u, bank);
  const auto c = rfft(u.values());
  std::vector<Element> blocks;
  blocks.reserve(bank.block_count());
  std::vector<Complex> cj(c.size());
  for (std::size_t j = 0; j <= bank.j_max(); ++j) {
    for (std::size_t k = 0; k < c.size(); ++k) cj[k] = c[k] * bank.analysis(j, k);
    blocks.push_back(Element::grid(irfft(cj, u.size())));
  }
  return DyadicSequence(grid_l2_space(u.size()), std::move(blocks));
}

GridFunction reconstruct(const DyadicSequence& f, const FilterBank& bank) {
  const std::size_t N = bank.grid_size();
  if (f.size() > bank.block_count()) {
    throw PreconditionError("sequence has more blocks than the bank");
  }
  std::vector<Complex> acc(N / 2 + 1, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Element& e = f[j];
    if (e.kind() != ElementKind::grid_function || e.cols() != N) {
      throw KindMismatch("block " + std::to_string(j) + " is not a grid function of size " +
                         std::to_string(N));
    }
    const auto c = rfft(e.data());
    for (std::size_t k = 0; k < c.size(); ++k) acc[k] += bank.synthesis(j, k) * c[k];
  }
  return GridFunction(irfft(acc, N));
}

// ----------------------------------------------------------------------------
// Norms
// ----------------------------------------------------------------------------
double sobolev_norm(const GridFunction& u, double s) {
  const std::size_t N = u.size();
  const auto c = rfft(u.values());
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double xi = static_cast<double>(k);
    acc += half_weight(k, N) * std::pow(1.0 + xi * xi, s) * std::norm(c[k]);
  }
  return std::sqrt(kTwoPi * acc);
}

double besov_norm(const GridFunction& u, double s, Integrability p, Summability q,
                  const FilterBank& bank) {
  const auto f = decompose(u, bank);
  std::vector<double> norms;
  norms.reserve(f.size());
  for (const auto& e : f.entries()) norms.push_back(discrete_lp_norm(e.data(), p));
  return sigma_norm(norms, {s, q});
}

double blockwise_sobolev_sum(const GridFunction& u, double s, const FilterBank& bank) {
  require_bank(u, bank);
  const std::size_t N = u.size();
  const auto c = rfft(u.values());
  double total = 0.0;
  for (std::size_t j = 0; j <= bank.j_max(); ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double m = bank.analysis(j, k);
      if (m == 0.0) continue;
      const double xi = static_cast<double>(k);
      acc += half_weight(k, N) * m * m * std::pow(1.0 + xi * xi, s) * std::norm(c[k]);
    }
    total += kTwoPi * acc;
  }
  return total;
}

GridFunction bessel_potential(const GridFunction& u, double s) {
  std::vector<double> m(u.size() / 2 + 1);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double xi = static_cast<double>(k);
    m[k] = std::pow(1.0 + xi * xi, s / 2.0);
  }
  return apply_multiplier(u, m);
}

double DyadicWeightRange::constant() const {
  return std::max(max_ratio, 1.0 / min_ratio);
}

DyadicWeightRange dyadic_sobolev_constant(const FilterBank& bank, double s) {
  DyadicWeightRange out;
  bool first = true;
  for (std::size_t j = 0; j <= bank.j_max(); ++j) {
    for (std::size_t k = 0; k <= bank.grid_size() / 2; ++k) {
      if (bank.analysis(j, k) == 0.0) continue;
      const double xi = static_cast<double>(k);
      const double ratio = std::pow(1.0 + xi * xi, s) / std::exp2(2.0 * static_cast<double>(j) * s);
      if (first) {
        out.min_ratio = out.max_ratio = ratio;
        first = false;
      } else {
        out.min_ratio = std::min(out.min_ratio, ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
      }
    }
  }
  return out;
}

double lr_ratio(const DyadicSequence& f, double s, const FilterBank& bank) {
  const double in = sigma_norm(f, {s, Summability(1.0)});
  if (in == 0.0) return 0.0;
  const auto lrf = decompose(reconstruct(f, bank), bank);
  return sigma_norm(lrf, {s, Summability(1.0)}) / in;
}

double reconstruction_ratio(const DyadicSequence& f, double s, Summability q,
                            const FilterBank& bank) {
  const double in = sigma_norm(f, {s, q});
  if (in == 0.0) return 0.0;
  return sobolev_norm(reconstruct(f, bank), s) / in;
}

}  // namespace besov
