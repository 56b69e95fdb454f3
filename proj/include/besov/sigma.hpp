#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "besov/pseudo_norm.hpp"

namespace besov {

/// Smoothness order s and summability q of the sequence norm on Sigma^s_q(E).
struct ScaleIndex {
  double s;
  Summability q;
};

// ============================================================================
// Finitely supported E-valued sequences (f_0, ..., f_K). Entries past the
// stored list are zero; the zero sequence has no entries.
// ============================================================================
class DyadicSequence {
 public:
  explicit DyadicSequence(SpaceRef base, std::vector<Element> entries = {});

  const PseudoNormedSpace& base() const { return *base_; }
  const SpaceRef& base_ref() const { return base_; }

  /// Number of stored entries (indices >= size() are zero).
  std::size_t size() const { return entries_.size(); }
  /// One past the last nonzero entry.
  std::size_t support_length() const;
  bool is_zero() const { return support_length() == 0; }

  const Element& operator[](std::size_t k) const { return entries_.at(k); }
  const std::vector<Element>& entries() const { return entries_; }

  /// ||f_k||_E for k < size().
  std::vector<double> block_norms() const;

  DyadicSequence operator-() const;
  /// Entrywise sum/difference, padding the shorter sequence with zeros.
  friend DyadicSequence operator+(const DyadicSequence& a, const DyadicSequence& b);
  friend DyadicSequence operator-(const DyadicSequence& a, const DyadicSequence& b);
  friend DyadicSequence operator*(double c, const DyadicSequence& f);

 private:
  SpaceRef base_;
  std::vector<Element> entries_;
};

/// Sequence of scalars in the |.| space.
DyadicSequence scalar_sequence(std::span<const double> values);

// ----------------------------------------------------------------------------
// Norms. The span overloads take the block norms ||f_k||_E directly.
// ----------------------------------------------------------------------------

/// 2^{ks} * a_k, computed in the log domain for large |ks|.
std::vector<double> weighted_blocks(std::span<const double> block_norms, double s);

/// (sum_k 2^{qks} a_k^q)^{1/q}, or sup_k 2^{ks} a_k for q = inf.
/// Throws OverflowError if the result leaves the double range.
double sigma_norm(std::span<const double> block_norms, ScaleIndex idx);
double sigma_norm(const DyadicSequence& f, ScaleIndex idx);

/// Friedrichs mollifier S_n: keeps entries 0..n.
DyadicSequence truncate(const DyadicSequence& f, std::size_t n);

/// ||f - S_n f||_{Sigma^s_q}.
double tail_norm(std::span<const double> block_norms, ScaleIndex idx, std::size_t n);
double tail_norm(const DyadicSequence& f, ScaleIndex idx, std::size_t n);

/// A computed quantity and the bound it is claimed to satisfy.
struct BoundCheck {
  double value = 0.0;
  double bound = 0.0;
  bool holds(double relative_slack = 1e-9) const { return value <= bound * (1.0 + relative_slack); }
};

/// ||S_n f||_{Sigma^{r'}_q} against 2^{n(r'-r)} ||f||_{Sigma^r_q}; needs r <= r'.
BoundCheck smoothing_gain(std::span<const double> block_norms, double r, double rp, Summability q,
                          std::size_t n);
BoundCheck smoothing_gain(const DyadicSequence& f, double r, double rp, Summability q,
                          std::size_t n);

/// Weighted smoothing sum (sum_n 2^{-qn(r'-r)} ||S_n f||_{Sigma^{r'}_1}^q)^{1/q}
/// (sup over n for q = inf) against ||f||_{Sigma^r_q} / (1 - 2^{r-r'}); needs r < r'.
/// Terms past the support are constant in ||S_n f|| and summed in closed form.
BoundCheck weighted_smoothing_sum(std::span<const double> block_norms, double r, double rp,
                                  Summability q, std::size_t guard = 4);
BoundCheck weighted_smoothing_sum(const DyadicSequence& f, double r, double rp, Summability q,
                                  std::size_t guard = 4);

/// The weaker q-th power statement sum_n 2^{-qn(r'-r)} ||S_n f||_{Sigma^{r'}_q}^q
/// <= K ||f||_{Sigma^r_q}^q with K = 1/(1 - 2^{-q(r'-r)}). Finite q, r < r'.
struct PowerSumCheck {
  double value = 0.0;
  double bound = 0.0;
  double constant = 0.0;
  bool holds(double relative_slack = 1e-9) const { return value <= bound * (1.0 + relative_slack); }
};
PowerSumCheck power_smoothing_sum(std::span<const double> block_norms, double r, double rp,
                                  Summability q, std::size_t guard = 4);

// ----------------------------------------------------------------------------
// Sequences over Z and Young's inequality
// ----------------------------------------------------------------------------
struct IntegerSequence {
  std::int64_t first = 0;       // index of values[0]
  std::vector<double> values;   // zero outside [first, first + size)

  double at(std::int64_t index) const;
  static IntegerSequence delta(std::int64_t at);
};

/// Absolute-value l^q norm over Z.
double lq_norm(const IntegerSequence& u, Summability q);

struct Convolution {
  IntegerSequence result;
  double norm = 0.0;   // ||u * v||_{l^q}
  double bound = 0.0;  // ||u||_{l^1} ||v||_{l^q}
  bool holds(double relative_slack = 1e-12) const { return norm <= bound * (1.0 + relative_slack); }
};

/// (u * v)(n) = sum_p u(n - p) v(p), with the Young bound certificate.
Convolution young_convolve(const IntegerSequence& u, const IntegerSequence& v, Summability q);

// ----------------------------------------------------------------------------
// Two-scale interpolation split f = S_N f + (I - S_N) f
// ----------------------------------------------------------------------------
struct InterpolationSplit {
  double actual = 0.0;      // ||f||_{Sigma^s_q}
  double low_bound = 0.0;   // (sum_{n<=N} 2^{nq(s-s0)})^{1/q} ||f||_{Sigma^{s0}_inf}
  double high_bound = 0.0;  // (sum_{n>N} 2^{nq(s-s1)})^{1/q} ||f||_{Sigma^{s1}_inf}
  std::size_t split = 0;    // N
  bool holds(double relative_slack = 1e-9) const {
    return actual <= (low_bound + high_bound) * (1.0 + relative_slack);
  }
};

/// Exponent theta = (s1 - s)/(s1 - s0) of the interpolation inequality.
double interpolation_theta(double s0, double s, double s1);
/// Closed-form geometric constants of the low/high parts for split N.
double interpolation_low_constant(double s0, double s, Summability q, std::size_t N);
double interpolation_high_constant(double s, double s1, Summability q, std::size_t N);

InterpolationSplit interp_bound(std::span<const double> block_norms, double s0, double s, double s1,
                                Summability q, std::size_t N);
InterpolationSplit interp_bound(const DyadicSequence& f, double s0, double s, double s1,
                                Summability q, std::size_t N);
/// Split minimizing low + high over N in [0, support + extra].
InterpolationSplit best_interp_bound(std::span<const double> block_norms, double s0, double s,
                                     double s1, Summability q, std::size_t extra = 4);

}  // namespace besov
