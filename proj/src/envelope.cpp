#include "besov/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "besov/errors.hpp"
#include "besov/report.hpp"

namespace besov {

double FrequencyEnvelope::decay() const { return std::exp2(-(s1 - s)); }

double FrequencyEnvelope::at(std::size_t n) const {
  if (n < gamma.size()) return gamma[n];
  if (gamma.empty()) return 0.0;
  const double steps = static_cast<double>(n - (gamma.size() - 1));
  return gamma.back() * std::exp2(-steps * (s1 - s));
}

namespace {

// l^q norm of a finite head followed by head.back() * rho^k, k >= 1.
double head_and_geometric_tail(std::span<const double> head, double rho, Summability q) {
  if (head.empty()) return 0.0;
  const double peak = *std::max_element(head.begin(), head.end());
  if (peak == 0.0) return 0.0;
  if (q.is_infinite()) return peak;
  const double p = q.value();
  double acc = 0.0;
  for (double v : head) acc += std::pow(v / peak, p);
  const double rp = std::pow(rho, p);
  acc += std::pow(head.back() / peak, p) * rp / (1.0 - rp);
  const double out = peak * std::pow(acc, 1.0 / p);
  if (!std::isfinite(out)) throw OverflowError("envelope norm overflow");
  return out;
}

std::size_t support_of(std::span<const double> a) {
  for (std::size_t k = a.size(); k > 0; --k) {
    if (a[k - 1] != 0.0) return k;
  }
  return 0;
}

}  // namespace

double FrequencyEnvelope::lq_norm(Summability q) const {
  return head_and_geometric_tail(gamma, decay(), q);
}

FrequencyEnvelope compute_envelope(std::span<const double> block_norms, double s, double s1,
                                   std::size_t guard) {
  if (!(s < s1)) throw PreconditionError("envelope needs s < s1");
  FrequencyEnvelope env;
  env.s = s;
  env.s1 = s1;
  env.support = support_of(block_norms);
  const std::size_t len = env.support + guard;
  env.weighted = weighted_blocks(block_norms.first(env.support), s);
  env.weighted.resize(len, 0.0);
  env.gamma.assign(len, 0.0);
  const double rho = env.decay();
  // gamma_n = 2^{-(s1-s)} gamma_{n-1} + 2^{ns} ||f_n||
  double g = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    g = rho * g + env.weighted[n];
    env.gamma[n] = g;
  }
  return env;
}

FrequencyEnvelope compute_envelope(const DyadicSequence& f, double s, double s1,
                                   std::size_t guard) {
  auto env = compute_envelope(f.block_norms(), s, s1, guard);
  env.source = f.base().label();
  return env;
}

EnvelopeEquivalence envelope_equivalence(std::span<const double> block_norms, double s,
                                         Summability q, double s1) {
  const auto env = compute_envelope(block_norms, s, s1);
  EnvelopeEquivalence out;
  out.upper = env.lq_norm(q);
  out.lower = (1.0 - std::exp2(s - s1)) * out.upper;
  out.mid = sigma_norm(block_norms, {s, q});
  return out;
}

EnvelopeEquivalence envelope_equivalence(const DyadicSequence& f, double s, Summability q,
                                         double s1) {
  return envelope_equivalence(f.block_norms(), s, q, s1);
}

std::vector<double> c_sequence(const FrequencyEnvelope& env) {
  std::vector<double> c(env.gamma.size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = env.at(n) + env.at(n + 1);
  return c;
}

double c_tail(const FrequencyEnvelope& env, Summability q, std::size_t n) {
  const auto c = c_sequence(env);
  if (n < c.size()) {
    return head_and_geometric_tail(std::span<const double>(c).subspan(n), env.decay(), q);
  }
  // Entirely inside the geometric regime.
  const double cn = env.at(n) + env.at(n + 1);
  const std::vector<double> head{cn};
  return head_and_geometric_tail(head, env.decay(), q);
}

std::string envelope_csv(const FrequencyEnvelope& env) {
  CsvTable t({"n", "gamma_n", "c_n", "weighted"});
  const auto c = c_sequence(env);
  for (std::size_t n = 0; n < env.gamma.size(); ++n) {
    t.row().add(n).add(env.gamma[n]).add(c[n]).add(env.weighted[n]);
  }
  return t.str();
}

}  // namespace besov
