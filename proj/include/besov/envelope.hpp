#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "besov/sigma.hpp"

namespace besov {

/// gamma_n = 2^{-n(s1-s)} ||S_n f||_{Sigma^{s1}_1}, stored for n < support + guard.
/// Past the support gamma decays by exactly 2^{-(s1-s)} per step; at(n) uses
/// that recursion for indices beyond the stored range.
struct FrequencyEnvelope {
  std::vector<double> gamma;
  std::vector<double> weighted;  // 2^{ns} ||f_n||_E, zero past the support
  double s = 0.0;
  double s1 = 0.0;
  std::size_t support = 0;
  std::string source;  // base-space label of the originating sequence

  double decay() const;  // 2^{-(s1-s)}
  double at(std::size_t n) const;
  /// ||gamma||_{l^q} including the closed-form geometric tail.
  double lq_norm(Summability q) const;
};

inline constexpr std::size_t kEnvelopeGuard = 8;

FrequencyEnvelope compute_envelope(std::span<const double> block_norms, double s, double s1,
                                   std::size_t guard = kEnvelopeGuard);
FrequencyEnvelope compute_envelope(const DyadicSequence& f, double s, double s1,
                                   std::size_t guard = kEnvelopeGuard);

struct EnvelopeEquivalence {
  double lower = 0.0;  // (1 - 2^{s-s1}) ||gamma||_{l^q}
  double mid = 0.0;    // ||f||_{Sigma^s_q}
  double upper = 0.0;  // ||gamma||_{l^q}
  bool holds(double relative_slack = 1e-9) const {
    return lower <= mid * (1.0 + relative_slack) && mid <= upper * (1.0 + relative_slack);
  }
};

EnvelopeEquivalence envelope_equivalence(std::span<const double> block_norms, double s,
                                         Summability q, double s1);
EnvelopeEquivalence envelope_equivalence(const DyadicSequence& f, double s, Summability q,
                                         double s1);

/// c_n = gamma_n + gamma_{n+1} over the stored range.
std::vector<double> c_sequence(const FrequencyEnvelope& env);
/// (sum_{p>=n} c_p^q)^{1/q} (sup for q = inf), geometric tail in closed form.
double c_tail(const FrequencyEnvelope& env, Summability q, std::size_t n);

/// CSV with columns n, gamma_n, c_n, weighted.
std::string envelope_csv(const FrequencyEnvelope& env);

}  // namespace besov
