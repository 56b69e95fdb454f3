#include "besov/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "besov/errors.hpp"
#include "besov/parallel.hpp"

namespace besov {

// ----------------------------------------------------------------------------
// EngineScale
// ----------------------------------------------------------------------------
void EngineScale::validate() const {
  if (!(s0 < s && s < s1)) throw PreconditionError("engine scale needs s0 < s < s1");
}

double EngineScale::kappa() const { return std::min(s1 - s, s - s0); }

double EngineScale::telescoping_constant() const { return 2.0 / (1.0 - std::exp2(-kappa())); }

// ----------------------------------------------------------------------------
// FlowMapAdapter
// ----------------------------------------------------------------------------
FlowMapAdapter::FlowMapAdapter(Map phi, double radius, EngineScale scale, std::string label,
                               std::optional<std::size_t> output_cap)
    : phi_(std::move(phi)),
      radius_(radius),
      scale_(scale),
      label_(std::move(label)),
      output_cap_(output_cap),
      evaluations_(std::make_shared<std::atomic<std::size_t>>(0)) {
  scale_.validate();
  if (!(radius_ > 0.0)) throw PreconditionError("ball radius must be positive");
  if (!phi_) throw PreconditionError("adapter needs a map");
  if (output_cap_ && *output_cap_ == 0) throw PreconditionError("output cap must be positive");
}

double FlowMapAdapter::input_norm(const DyadicSequence& f) const {
  return sigma_norm(f, {scale_.s, scale_.q});
}

void FlowMapAdapter::require_in_ball(const DyadicSequence& f) const {
  const double norm = input_norm(f);
  if (!(norm < radius_)) throw BallViolation(norm, radius_);
}

DyadicSequence FlowMapAdapter::operator()(const DyadicSequence& f) const {
  require_in_ball(f);
  evaluations_->fetch_add(1);
  DyadicSequence out = phi_(f);
  if (output_cap_ && out.size() > *output_cap_) out = truncate(out, *output_cap_ - 1);
  return out;
}

FlowMapAdapter identity_adapter(double radius, EngineScale scale) {
  return FlowMapAdapter([](const DyadicSequence& f) { return f; }, radius, scale, "identity");
}

FlowMapAdapter zero_adapter(double radius, EngineScale scale) {
  return FlowMapAdapter([](const DyadicSequence& f) { return DyadicSequence(f.base_ref()); },
                        radius, scale, "zero");
}

// ----------------------------------------------------------------------------
// SampleSet
// ----------------------------------------------------------------------------
std::size_t SampleSet::add(DyadicSequence f, bool is_truncation) {
  points.push_back(std::move(f));
  smooth.push_back(is_truncation);
  return points.size() - 1;
}

void SampleSet::add_pair(std::size_t i, std::size_t j) {
  if (i >= points.size() || j >= points.size()) throw PreconditionError("pair index out of range");
  pairs.emplace_back(i, j);
}

void SampleSet::add_ladder(const DyadicSequence& g) {
  const std::size_t K = g.support_length();
  std::vector<std::size_t> ids;
  for (std::size_t n = 0; n + 1 < K; ++n) ids.push_back(add(truncate(g, n), true));
  ids.push_back(add(g, false));
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) add_pair(ids[a], ids[b]);
  }
}

// ----------------------------------------------------------------------------
// Constant estimation
// ----------------------------------------------------------------------------
HypothesisReport estimate_constants(const FlowMapAdapter& adapter, const SampleSet& samples,
                                    bool smooth_only, double safety) {
  if (samples.points.empty()) throw PreconditionError("empty sample set");
  if (!(safety >= 1.0)) throw PreconditionError("safety factor must be >= 1");
  const EngineScale& sc = adapter.scale();
  const std::size_t P = samples.points.size();

  std::vector<bool> used(P, false);
  for (std::size_t i = 0; i < P; ++i) used[i] = !smooth_only || samples.smooth[i];
  for (std::size_t i = 0; i < P; ++i) {
    if (used[i]) adapter.require_in_ball(samples.points[i]);
  }

  std::vector<std::optional<DyadicSequence>> images(P);
  parallel_for(P, [&](std::size_t i) {
    if (used[i]) images[i] = adapter(samples.points[i]);
  });

  HypothesisReport r;
  r.adapter = adapter.label();
  r.scale = sc;
  r.smooth_only = smooth_only;
  r.safety = safety;
  r.output_cap = adapter.output_cap();
  r.kappa = sc.kappa();

  const ScaleIndex high_in{sc.s1, Summability(1.0)};
  const ScaleIndex high_out{sc.s1, Summability::infinity()};
  for (std::size_t i = 0; i < P; ++i) {
    if (!used[i]) continue;
    ++r.samples_used;
    const double den = sigma_norm(samples.points[i], high_in);
    const double num = sigma_norm(*images[i], high_out);
    if (den < kPairDenominatorFloor) continue;
    r.c1_hat = std::max(r.c1_hat, num / den);
  }

  const ScaleIndex low_in{sc.s0, Summability(1.0)};
  const ScaleIndex low_out{sc.s0, Summability::infinity()};
  for (const auto& [i, j] : samples.pairs) {
    if (!used[i] || !used[j]) continue;
    const double den = sigma_norm(samples.points[i] - samples.points[j], low_in);
    if (den < kPairDenominatorFloor) {
      ++r.pairs_skipped;
      continue;
    }
    ++r.pairs_used;
    const double num = sigma_norm(*images[i] - *images[j], low_out);
    r.c0_hat = std::max(r.c0_hat, num / den);
  }

  const double tame_factor = 1.0 + std::exp2(sc.s1 - sc.s);
  r.c0 = safety * r.c0_hat;
  r.c1 = safety * r.c1_hat;
  r.C_hat = std::max(r.c0_hat, tame_factor * r.c1_hat);
  r.C = std::max(r.c0, tame_factor * r.c1);
  return r;
}

// ----------------------------------------------------------------------------
// TruncationLadder
// ----------------------------------------------------------------------------
TruncationLadder::TruncationLadder(const FlowMapAdapter& adapter, DyadicSequence f)
    : f_(std::move(f)),
      env_(compute_envelope(f_, adapter.scale().s, adapter.scale().s1)),
      images_() {
  adapter.require_in_ball(f_);
  const std::size_t K = std::max<std::size_t>(f_.support_length(), 1);
  std::vector<std::optional<DyadicSequence>> out(K);
  parallel_for(K, [&](std::size_t n) { out[n] = adapter(n + 1 == K ? f_ : truncate(f_, n)); });
  images_.reserve(K);
  for (auto& o : out) images_.push_back(std::move(*o));
}

const DyadicSequence& TruncationLadder::image(std::size_t n) const {
  return images_[std::min(n, images_.size() - 1)];
}

DyadicSequence TruncationLadder::increment(std::size_t n) const {
  return image(n + 1) - image(n);
}

std::vector<SubBoundRow> lemma_sub_bounds(const TruncationLadder& ladder,
                                          const HypothesisReport& report, std::size_t n_max) {
  const EngineScale& sc = report.scale;
  const auto& env = ladder.envelope();
  const auto norms = ladder.input().block_norms();
  std::vector<SubBoundRow> rows;
  rows.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    SubBoundRow row;
    row.n = n;
    row.high_lhs = sigma_norm(ladder.image(n), {sc.s1, Summability::infinity()});
    const std::size_t keep = std::min(norms.size(), n + 1);
    row.trunc_norm = sigma_norm(std::span<const double>(norms).first(keep), {sc.s1, Summability(1.0)});
    row.trunc_identity = std::exp2(dn * (sc.s1 - sc.s)) * env.at(n);
    row.high_rhs = report.c1 * row.trunc_identity;

    row.low_lhs = sigma_norm(ladder.increment(n), {sc.s0, Summability::infinity()});
    const double next = n + 1 < norms.size() ? norms[n + 1] : 0.0;
    row.step_norm = next == 0.0 ? 0.0 : std::exp2(static_cast<double>(n + 1) * sc.s0) * next;
    row.step_bound = std::exp2(-dn * (sc.s - sc.s0)) * env.at(n + 1);
    row.low_rhs = report.c0 * row.step_bound;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DecayRow> block_decay_profile(const TruncationLadder& ladder,
                                          const HypothesisReport& report, std::size_t n_max) {
  const EngineScale& sc = report.scale;
  const auto& env = ladder.envelope();
  std::vector<DecayRow> rows;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto norms = ladder.increment(n).block_norms();
    const double envelope_pair = env.at(n) + env.at(n + 1);
    for (std::size_t m = 0; m < norms.size(); ++m) {
      DecayRow row;
      row.n = n;
      row.m = m;
      row.lhs = norms[m] == 0.0 ? 0.0 : std::exp2(static_cast<double>(m) * sc.s) * norms[m];
      const double gap = std::abs(static_cast<double>(m) - static_cast<double>(n));
      row.rhs = report.C * std::exp2(-report.kappa * gap) * envelope_pair;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<DecayRow> block_decay_profile(const FlowMapAdapter& adapter, const DyadicSequence& f,
                                          const HypothesisReport& report, std::size_t n_max) {
  return block_decay_profile(TruncationLadder(adapter, f), report, n_max);
}

ConvergenceRow convergence_bound(const TruncationLadder& ladder, const HypothesisReport& report,
                                 std::size_t n) {
  const EngineScale& sc = report.scale;
  ConvergenceRow row;
  row.n = n;
  row.actual = sigma_norm(ladder.full_image() - ladder.image(n), {sc.s, sc.q});
  row.c_tail = c_tail(ladder.envelope(), sc.q, n);
  row.bound = sc.telescoping_constant() * report.C * row.c_tail;
  return row;
}

ConvergenceRow convergence_bound(const FlowMapAdapter& adapter, const DyadicSequence& f,
                                 const HypothesisReport& report, std::size_t n) {
  return convergence_bound(TruncationLadder(adapter, f), report, n);
}

bool ConvergenceReport::holds(double relative_slack) const {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const ConvergenceRow& r) { return r.holds(relative_slack); });
}

ConvergenceReport convergence_report(const TruncationLadder& ladder,
                                     const HypothesisReport& report, std::size_t n_max) {
  ConvergenceReport out;
  out.adapter = report.adapter;
  out.A = report.scale.telescoping_constant();
  out.C = report.C;
  out.kappa = report.kappa;
  for (std::size_t n = 0; n <= n_max; ++n) out.rows.push_back(convergence_bound(ladder, report, n));
  return out;
}

// ----------------------------------------------------------------------------
// Continuity probe
// ----------------------------------------------------------------------------
ContinuityReport continuity_probe(const FlowMapAdapter& adapter, const DyadicSequence& f,
                                  const std::vector<double>& scales,
                                  const std::vector<DyadicSequence>& directions, double floor) {
  if (scales.empty()) throw PreconditionError("continuity probe needs at least one scale");
  if (directions.empty()) throw PreconditionError("continuity probe needs a direction");
  const EngineScale& sc = adapter.scale();
  const ScaleIndex idx{sc.s, sc.q};

  std::vector<DyadicSequence> units;
  for (const auto& d : directions) {
    const double nd = sigma_norm(d, idx);
    if (nd == 0.0) throw PreconditionError("continuity probe direction is zero");
    units.push_back((1.0 / nd) * d);
  }

  ContinuityReport rep;
  rep.floor = floor;
  rep.scales = scales;
  std::sort(rep.scales.begin(), rep.scales.end(), std::greater<>());
  rep.scales.erase(std::unique(rep.scales.begin(), rep.scales.end()), rep.scales.end());
  for (double e : rep.scales) {
    if (!(e >= 0.0)) throw PreconditionError("perturbation scales must be nonnegative");
  }

  const std::size_t D = units.size();
  const std::size_t S = rep.scales.size();
  std::vector<DyadicSequence> inputs;
  inputs.reserve(S * D);
  for (double e : rep.scales) {
    for (const auto& u : units) inputs.push_back(f + e * u);
  }
  for (const auto& x : inputs) adapter.require_in_ball(x);

  const DyadicSequence base = adapter(f);
  std::vector<std::optional<DyadicSequence>> images(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) { images[i] = adapter(inputs[i]); });

  rep.batch_max.assign(S, 0.0);
  rep.batch_min.assign(S, std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < S; ++a) {
    for (std::size_t d = 0; d < D; ++d) {
      const std::size_t i = a * D + d;
      ContinuityRow row;
      row.eps = rep.scales[a];
      row.direction = d;
      row.input_distance = sigma_norm(inputs[i] - f, idx);
      row.output_distance = sigma_norm(*images[i] - base, idx);
      rep.batch_max[a] = std::max(rep.batch_max[a], row.output_distance);
      rep.batch_min[a] = std::min(rep.batch_min[a], row.output_distance);
      rep.rows.push_back(row);
    }
  }

  const auto ordered = [&](std::size_t larger, std::size_t smaller) {
    const bool both_tiny = rep.batch_max[larger] < floor && rep.batch_max[smaller] < floor;
    return both_tiny || rep.batch_max[smaller] < rep.batch_min[larger];
  };
  rep.trend_ok = S == 1 || ordered(0, S - 1);
  rep.strictly_decreasing = true;
  for (std::size_t a = 0; a + 1 < S; ++a) rep.strictly_decreasing &= ordered(a, a + 1);
  return rep;
}

InterpolationStep interpolation_step(const FlowMapAdapter& adapter, const HypothesisReport& report,
                                     const DyadicSequence& f, const DyadicSequence& g,
                                     std::size_t n) {
  const EngineScale& sc = adapter.scale();
  const auto sf = truncate(f, n);
  const auto sg = truncate(g, n);
  const auto diff = adapter(sg) - adapter(sf);
  const auto norms = diff.block_norms();

  InterpolationStep out;
  out.n = n;
  out.actual = sigma_norm(norms, {sc.s, sc.q});
  const auto best = best_interp_bound(norms, sc.s0, sc.s, sc.s1, sc.q);
  out.direct = best.low_bound + best.high_bound;
  out.split = best.split;

  const double low_dist = report.c0 * sigma_norm(sg - sf, {sc.s0, Summability(1.0)});
  const double high_size = report.c1 * (sigma_norm(sg, {sc.s1, Summability(1.0)}) +
                                        sigma_norm(sf, {sc.s1, Summability(1.0)}));
  out.assembled = std::numeric_limits<double>::infinity();
  const std::size_t last = std::max(diff.support_length(), sf.support_length()) + 4;
  for (std::size_t N = 0; N <= last; ++N) {
    const double v = interpolation_low_constant(sc.s0, sc.s, sc.q, N) * low_dist +
                     interpolation_high_constant(sc.s, sc.s1, sc.q, N) * high_size;
    out.assembled = std::min(out.assembled, v);
  }
  return out;
}

// ----------------------------------------------------------------------------
// Serialization
// ----------------------------------------------------------------------------
Json to_json(const EngineScale& scale) {
  return Json{{"s0", scale.s0}, {"s", scale.s}, {"s1", scale.s1}, {"q", scale.q.to_string()}};
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["adapter"] = r.adapter;
  j["scale"] = to_json(r.scale);
  j["smooth_only"] = r.smooth_only;
  j["constants_are"] = "estimated: sample maxima, inflated by the safety factor for bound checks";
  j["C0_hat"] = r.c0_hat;
  j["C1_hat"] = r.c1_hat;
  j["safety_factor"] = r.safety;
  j["C0_inflated"] = r.c0;
  j["C1_inflated"] = r.c1;
  j["kappa"] = r.kappa;
  j["C_hat"] = r.C_hat;
  j["C"] = r.C;
  j["samples_used"] = r.samples_used;
  j["pairs_used"] = r.pairs_used;
  j["pairs_skipped"] = r.pairs_skipped;
  j["output_cap"] = r.output_cap ? Json(*r.output_cap) : Json(nullptr);
  return j;
}

Json to_json(const ConvergenceReport& r) {
  Json j;
  j["adapter"] = r.adapter;
  j["A"] = r.A;
  j["C"] = r.C;
  j["kappa"] = r.kappa;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"actual", row.actual},
                    {"c_tail", row.c_tail},
                    {"bound", row.bound},
                    {"holds", row.holds()}});
  }
  j["rows"] = rows;
  j["holds"] = r.holds();
  return j;
}

Json to_json(const ContinuityReport& r) {
  Json j;
  j["floor"] = r.floor;
  j["scales"] = r.scales;
  j["batch_max"] = r.batch_max;
  j["batch_min"] = r.batch_min;
  j["trend_ok"] = r.trend_ok;
  j["strictly_decreasing"] = r.strictly_decreasing;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"eps", row.eps},
                    {"direction", row.direction},
                    {"input_distance", row.input_distance},
                    {"output_distance", row.output_distance}});
  }
  j["rows"] = rows;
  return j;
}

std::string decay_profile_csv(const std::vector<DecayRow>& rows) {
  CsvTable t({"n", "m", "lhs", "rhs", "ratio"});
  for (const auto& r : rows) {
    t.row().add(r.n).add(r.m).add(r.lhs).add(r.rhs).add(r.rhs > 0.0 ? r.lhs / r.rhs : 0.0);
  }
  return t.str();
}

std::string convergence_csv(const ConvergenceReport& r) {
  CsvTable t({"n", "actual", "c_tail", "bound", "holds"});
  for (const auto& row : r.rows) {
    t.row().add(row.n).add(row.actual).add(row.c_tail).add(row.bound).add(
        std::string(row.holds() ? "1" : "0"));
  }
  return t.str();
}

std::string sub_bounds_csv(const std::vector<SubBoundRow>& rows) {
  CsvTable t({"n", "high_lhs", "high_rhs", "low_lhs", "low_rhs", "trunc_norm", "trunc_identity",
              "step_norm", "step_bound"});
  for (const auto& r : rows) {
    t.row()
        .add(r.n)
        .add(r.high_lhs)
        .add(r.high_rhs)
        .add(r.low_lhs)
        .add(r.low_rhs)
        .add(r.trunc_norm)
        .add(r.trunc_identity)
        .add(r.step_norm)
        .add(r.step_bound);
  }
  return t.str();
}

}  // namespace besov
