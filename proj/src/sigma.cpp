#include "besov/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "besov/errors.hpp"

namespace besov {

// ----------------------------------------------------------------------------
// DyadicSequence
// ----------------------------------------------------------------------------
DyadicSequence::DyadicSequence(SpaceRef base, std::vector<Element> entries)
    : base_(std::move(base)), entries_(std::move(entries)) {
  if (!base_) throw PreconditionError("sequence needs a base space");
  for (const auto& e : entries_) {
    base_->require_member(e);
    if (!e.is_finite()) throw PreconditionError("sequence entry has non-finite samples");
  }
}

std::size_t DyadicSequence::support_length() const {
  for (std::size_t k = entries_.size(); k > 0; --k) {
    if (!entries_[k - 1].is_zero()) return k;
  }
  return 0;
}

std::vector<double> DyadicSequence::block_norms() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(base_->eval(e));
  return out;
}

DyadicSequence DyadicSequence::operator-() const {
  std::vector<Element> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(-e);
  return DyadicSequence(base_, std::move(out));
}

namespace {

DyadicSequence combine(const DyadicSequence& a, const DyadicSequence& b, double sign) {
  if (a.base().label() != b.base().label()) {
    throw KindMismatch("sequences over different base spaces: " + a.base().label() + " vs " +
                       b.base().label());
  }
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<Element> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k < a.size() && k < b.size()) {
      out.push_back(a[k] + sign * b[k]);
    } else if (k < a.size()) {
      out.push_back(a[k]);
    } else {
      out.push_back(sign * b[k]);
    }
  }
  return DyadicSequence(a.base_ref(), std::move(out));
}

}  // namespace

DyadicSequence operator+(const DyadicSequence& a, const DyadicSequence& b) {
  return combine(a, b, 1.0);
}

DyadicSequence operator-(const DyadicSequence& a, const DyadicSequence& b) {
  return combine(a, b, -1.0);
}

DyadicSequence operator*(double c, const DyadicSequence& f) {
  std::vector<Element> out;
  out.reserve(f.size());
  for (const auto& e : f.entries()) out.push_back(c * e);
  return DyadicSequence(f.base_ref(), std::move(out));
}

DyadicSequence scalar_sequence(std::span<const double> values) {
  std::vector<Element> entries;
  entries.reserve(values.size());
  for (double v : values) entries.push_back(Element::scalar(v));
  return DyadicSequence(scalar_abs_space(), std::move(entries));
}

// ----------------------------------------------------------------------------
// Norms
// ----------------------------------------------------------------------------
std::vector<double> weighted_blocks(std::span<const double> block_norms, double s) {
  std::vector<double> out(block_norms.size(), 0.0);
  for (std::size_t k = 0; k < block_norms.size(); ++k) {
    const double a = block_norms[k];
    if (!(a >= 0.0)) throw PreconditionError("block norms must be nonnegative");
    if (a == 0.0) continue;
    out[k] = std::exp2(static_cast<double>(k) * s + std::log2(a));
  }
  return out;
}

double sigma_norm(std::span<const double> block_norms, ScaleIndex idx) {
  const auto w = weighted_blocks(block_norms, idx.s);
  return lq_norm(w, idx.q);
}

double sigma_norm(const DyadicSequence& f, ScaleIndex idx) {
  return sigma_norm(f.block_norms(), idx);
}

DyadicSequence truncate(const DyadicSequence& f, std::size_t n) {
  const std::size_t keep = std::min(f.size(), n + 1);
  std::vector<Element> out(f.entries().begin(), f.entries().begin() + static_cast<long>(keep));
  return DyadicSequence(f.base_ref(), std::move(out));
}

double tail_norm(std::span<const double> block_norms, ScaleIndex idx, std::size_t n) {
  if (block_norms.size() <= n + 1) return 0.0;
  std::vector<double> tail(block_norms.begin(), block_norms.end());
  std::fill(tail.begin(), tail.begin() + static_cast<long>(n + 1), 0.0);
  return sigma_norm(tail, idx);
}

double tail_norm(const DyadicSequence& f, ScaleIndex idx, std::size_t n) {
  return tail_norm(f.block_norms(), idx, n);
}

// ----------------------------------------------------------------------------
// Smoothing bounds
// ----------------------------------------------------------------------------
BoundCheck smoothing_gain(std::span<const double> block_norms, double r, double rp, Summability q,
                          std::size_t n) {
  if (r > rp) throw PreconditionError("smoothing_gain needs r <= r'");
  const std::size_t keep = std::min(block_norms.size(), n + 1);
  BoundCheck out;
  out.value = sigma_norm(block_norms.first(keep), {rp, q});
  const double full = sigma_norm(block_norms, {r, q});
  out.bound = full == 0.0 ? 0.0 : std::exp2(static_cast<double>(n) * (rp - r) + std::log2(full));
  if (!std::isfinite(out.bound)) throw OverflowError("smoothing bound overflow");
  return out;
}

BoundCheck smoothing_gain(const DyadicSequence& f, double r, double rp, Summability q,
                          std::size_t n) {
  return smoothing_gain(f.block_norms(), r, rp, q, n);
}

namespace {

std::size_t support_of(std::span<const double> block_norms) {
  for (std::size_t k = block_norms.size(); k > 0; --k) {
    if (block_norms[k - 1] != 0.0) return k;
  }
  return 0;
}

// Terms t_n = 2^{-n delta} ||S_n f||_{Sigma^{r'}_p} for n = 0..last, where the
// partial norms come from the r'-weighted blocks.
std::vector<double> smoothing_terms(std::span<const double> block_norms, double rp, Summability p,
                                    double delta, std::size_t last) {
  const auto w = weighted_blocks(block_norms, rp);
  std::vector<double> terms(last + 1, 0.0);
  for (std::size_t n = 0; n <= last; ++n) {
    const std::size_t keep = std::min(w.size(), n + 1);
    const double partial = lq_norm(std::span<const double>(w).first(keep), p);
    terms[n] = partial == 0.0 ? 0.0 : std::exp2(-static_cast<double>(n) * delta + std::log2(partial));
  }
  return terms;
}

}  // namespace

BoundCheck weighted_smoothing_sum(std::span<const double> block_norms, double r, double rp,
                                  Summability q, std::size_t guard) {
  if (!(r < rp)) throw PreconditionError("weighted_smoothing_sum needs r < r'");
  const std::size_t support = support_of(block_norms);
  BoundCheck out;
  if (support == 0) return out;
  const double delta = rp - r;
  const std::size_t last = support - 1 + guard;
  const auto terms = smoothing_terms(block_norms.first(support), rp, Summability(1.0), delta, last);

  if (q.is_infinite()) {
    // Past the support the terms decrease geometrically, so the sup is attained.
    out.value = *std::max_element(terms.begin(), terms.end());
  } else {
    const double p = q.value();
    const double peak = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t / peak, p);
    // Beyond `last` each term is 2^{-delta} times the previous one.
    const double ratio = std::exp2(-p * delta);
    acc += std::pow(terms.back() / peak, p) * ratio / (1.0 - ratio);
    out.value = peak * std::pow(acc, 1.0 / p);
  }
  out.bound = sigma_norm(block_norms, {r, q}) / (1.0 - std::exp2(r - rp));
  if (!std::isfinite(out.value) || !std::isfinite(out.bound)) {
    throw OverflowError("weighted smoothing sum overflow");
  }
  return out;
}

BoundCheck weighted_smoothing_sum(const DyadicSequence& f, double r, double rp, Summability q,
                                  std::size_t guard) {
  return weighted_smoothing_sum(f.block_norms(), r, rp, q, guard);
}

PowerSumCheck power_smoothing_sum(std::span<const double> block_norms, double r, double rp,
                                  Summability q, std::size_t guard) {
  if (!(r < rp)) throw PreconditionError("power_smoothing_sum needs r < r'");
  if (q.is_infinite()) throw PreconditionError("power_smoothing_sum needs finite q");
  const double p = q.value();
  const double delta = rp - r;
  PowerSumCheck out;
  out.constant = 1.0 / (1.0 - std::exp2(-p * delta));
  const std::size_t support = support_of(block_norms);
  if (support == 0) return out;
  const std::size_t last = support - 1 + guard;
  const auto terms = smoothing_terms(block_norms.first(support), rp, q, delta, last);
  double acc = 0.0;
  for (double t : terms) acc += std::pow(t, p);
  const double ratio = std::exp2(-p * delta);
  acc += std::pow(terms.back(), p) * ratio / (1.0 - ratio);
  out.value = acc;
  out.bound = out.constant * std::pow(sigma_norm(block_norms, {r, q}), p);
  if (!std::isfinite(out.value) || !std::isfinite(out.bound)) {
    throw OverflowError("power smoothing sum overflow");
  }
  return out;
}

// ----------------------------------------------------------------------------
// Young's inequality on Z
// ----------------------------------------------------------------------------
double IntegerSequence::at(std::int64_t index) const {
  const std::int64_t off = index - first;
  if (off < 0 || off >= static_cast<std::int64_t>(values.size())) return 0.0;
  return values[static_cast<std::size_t>(off)];
}

IntegerSequence IntegerSequence::delta(std::int64_t at) { return IntegerSequence{at, {1.0}}; }

double lq_norm(const IntegerSequence& u, Summability q) {
  std::vector<double> mags(u.values.size());
  std::transform(u.values.begin(), u.values.end(), mags.begin(),
                 [](double v) { return std::abs(v); });
  return lq_norm(mags, q);
}

Convolution young_convolve(const IntegerSequence& u, const IntegerSequence& v, Summability q) {
  Convolution out;
  out.result.first = u.first + v.first;
  if (!u.values.empty() && !v.values.empty()) {
    out.result.values.assign(u.values.size() + v.values.size() - 1, 0.0);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      for (std::size_t j = 0; j < v.values.size(); ++j) {
        out.result.values[i + j] += u.values[i] * v.values[j];
      }
    }
  }
  out.norm = lq_norm(out.result, q);
  out.bound = lq_norm(u, Summability(1.0)) * lq_norm(v, q);
  return out;
}

// ----------------------------------------------------------------------------
// Interpolation
// ----------------------------------------------------------------------------
double interpolation_theta(double s0, double s, double s1) {
  if (!(s0 < s && s < s1)) throw PreconditionError("interpolation needs s0 < s < s1");
  return (s1 - s) / (s1 - s0);
}

double interpolation_low_constant(double s0, double s, Summability q, std::size_t N) {
  const double a = s - s0;
  const double n = static_cast<double>(N);
  if (q.is_infinite()) return std::exp2(n * a);
  const double p = q.value();
  // sum_{n=0}^{N} 2^{n p a} = (2^{(N+1) p a} - 1) / (2^{p a} - 1)
  const double num = std::expm1((n + 1.0) * p * a * std::log(2.0));
  const double den = std::expm1(p * a * std::log(2.0));
  return std::pow(num / den, 1.0 / p);
}

double interpolation_high_constant(double s, double s1, Summability q, std::size_t N) {
  const double b = s1 - s;
  const double n = static_cast<double>(N);
  if (q.is_infinite()) return std::exp2(-(n + 1.0) * b);
  const double p = q.value();
  const double ratio = std::exp2(-p * b);
  return std::pow(std::exp2(-(n + 1.0) * p * b) / (1.0 - ratio), 1.0 / p);
}

InterpolationSplit interp_bound(std::span<const double> block_norms, double s0, double s, double s1,
                                Summability q, std::size_t N) {
  (void)interpolation_theta(s0, s, s1);
  InterpolationSplit out;
  out.split = N;
  out.actual = sigma_norm(block_norms, {s, q});
  const double lowest = sigma_norm(block_norms, {s0, Summability::infinity()});
  const double highest = sigma_norm(block_norms, {s1, Summability::infinity()});
  out.low_bound = lowest == 0.0 ? 0.0 : interpolation_low_constant(s0, s, q, N) * lowest;
  out.high_bound = highest == 0.0 ? 0.0 : interpolation_high_constant(s, s1, q, N) * highest;
  return out;
}

InterpolationSplit interp_bound(const DyadicSequence& f, double s0, double s, double s1,
                                Summability q, std::size_t N) {
  return interp_bound(f.block_norms(), s0, s, s1, q, N);
}

InterpolationSplit best_interp_bound(std::span<const double> block_norms, double s0, double s,
                                     double s1, Summability q, std::size_t extra) {
  const std::size_t last = support_of(block_norms) + extra;
  InterpolationSplit best = interp_bound(block_norms, s0, s, s1, q, 0);
  for (std::size_t N = 1; N <= last; ++N) {
    auto cand = interp_bound(block_norms, s0, s, s1, q, N);
    if (cand.low_bound + cand.high_bound < best.low_bound + best.high_bound) best = cand;
  }
  return best;
}

}  // namespace besov
