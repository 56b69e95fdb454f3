#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "besov/envelope.hpp"
#include "besov/report.hpp"
#include "besov/sigma.hpp"

namespace besov {

/// Regularity triple s0 < s < s1 and summability q of the input ball.
struct EngineScale {
  double s0 = 0.0;
  double s = 2.0;
  double s1 = 3.0;
  Summability q = Summability(2.0);

  void validate() const;
  double kappa() const;  // min(s1 - s, s - s0)
  /// sup_m sum_p 2^{-kappa |p - m|} <= 2 / (1 - 2^{-kappa}).
  double telescoping_constant() const;
};

// ============================================================================
// An abstract map Phi on sequence space, defined on the ball of radius r in
// Sigma^s_q. Every call checks ball membership.
// ============================================================================
class FlowMapAdapter {
 public:
  using Map = std::function<DyadicSequence(const DyadicSequence&)>;

  FlowMapAdapter(Map phi, double radius, EngineScale scale, std::string label,
                 std::optional<std::size_t> output_cap = std::nullopt);

  /// Throws BallViolation unless ||f||_{Sigma^s_q} < r.
  DyadicSequence operator()(const DyadicSequence& f) const;
  void require_in_ball(const DyadicSequence& f) const;
  double input_norm(const DyadicSequence& f) const;

  double radius() const { return radius_; }
  const EngineScale& scale() const { return scale_; }
  const std::string& label() const { return label_; }
  /// Output sequences are cut to this many blocks when set.
  std::optional<std::size_t> output_cap() const { return output_cap_; }
  std::size_t evaluations() const { return evaluations_->load(); }

 private:
  Map phi_;
  double radius_;
  EngineScale scale_;
  std::string label_;
  std::optional<std::size_t> output_cap_;
  std::shared_ptr<std::atomic<std::size_t>> evaluations_;
};

FlowMapAdapter identity_adapter(double radius, EngineScale scale);
FlowMapAdapter zero_adapter(double radius, EngineScale scale);

// ----------------------------------------------------------------------------
// Sample sets for constant estimation
// ----------------------------------------------------------------------------
struct SampleSet {
  std::vector<DyadicSequence> points;
  std::vector<bool> smooth;  // point is a proper truncation S_n g
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  std::size_t add(DyadicSequence f, bool is_truncation);
  void add_pair(std::size_t i, std::size_t j);
  /// Adds S_0 g, ..., S_{K-2} g (smooth) and g itself, with every pair among them.
  void add_ladder(const DyadicSequence& g);
  std::size_t size() const { return points.size(); }
};

/// Empirical hypothesis constants. The *_hat fields are sample maxima; the
/// inflated c0, c1, C carry the safety factor and are what bound checks use.
struct HypothesisReport {
  std::string adapter;
  EngineScale scale;
  bool smooth_only = false;
  double c0_hat = 0.0;  // max ||Phi(v)-Phi(w)||_{Sigma^{s0}_inf} / ||v-w||_{Sigma^{s0}_1}
  double c1_hat = 0.0;  // max ||Phi(v)||_{Sigma^{s1}_inf} / ||v||_{Sigma^{s1}_1}
  double safety = 1.1;
  double c0 = 0.0;
  double c1 = 0.0;
  double kappa = 0.0;
  double C_hat = 0.0;  // max{c0_hat, (1 + 2^{s1-s}) c1_hat}
  double C = 0.0;      // max{c0, (1 + 2^{s1-s}) c1}
  std::size_t samples_used = 0;
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
  std::optional<std::size_t> output_cap;
};

inline constexpr double kSafetyFactor = 1.1;
inline constexpr double kPairDenominatorFloor = 1e-14;

HypothesisReport estimate_constants(const FlowMapAdapter& adapter, const SampleSet& samples,
                                    bool smooth_only = false, double safety = kSafetyFactor);

// ----------------------------------------------------------------------------
// Truncation ladder: f, its envelope, and Phi(S_n f) for n = 0..support-1.
// ----------------------------------------------------------------------------
class TruncationLadder {
 public:
  TruncationLadder(const FlowMapAdapter& adapter, DyadicSequence f);

  const DyadicSequence& input() const { return f_; }
  const FrequencyEnvelope& envelope() const { return env_; }
  std::size_t support() const { return f_.support_length(); }
  /// Phi(S_n f); equals Phi(f) for n >= support - 1.
  const DyadicSequence& image(std::size_t n) const;
  const DyadicSequence& full_image() const { return images_.back(); }
  /// Phi(S_{n+1} f) - Phi(S_n f).
  DyadicSequence increment(std::size_t n) const;

 private:
  DyadicSequence f_;
  FrequencyEnvelope env_;
  std::vector<DyadicSequence> images_;
};

/// Sub-bounds feeding the block decay lemma, for one n.
struct SubBoundRow {
  std::size_t n = 0;
  double high_lhs = 0.0;   // ||Phi(S_n f)||_{Sigma^{s1}_inf}
  double high_rhs = 0.0;   // c1 2^{n(s1-s)} gamma_n
  double low_lhs = 0.0;    // ||Phi(S_{n+1} f) - Phi(S_n f)||_{Sigma^{s0}_inf}
  double low_rhs = 0.0;    // c0 2^{-n(s-s0)} gamma_{n+1}
  double trunc_norm = 0.0;       // ||S_n f||_{Sigma^{s1}_1}
  double trunc_identity = 0.0;   // 2^{n(s1-s)} gamma_n
  double step_norm = 0.0;        // ||S_{n+1} f - S_n f||_{Sigma^{s0}_1}
  double step_bound = 0.0;       // 2^{-n(s-s0)} gamma_{n+1}
};

std::vector<SubBoundRow> lemma_sub_bounds(const TruncationLadder& ladder,
                                          const HypothesisReport& report, std::size_t n_max);

struct DecayRow {
  std::size_t n = 0;
  std::size_t m = 0;
  double lhs = 0.0;  // 2^{ms} ||(Phi(S_{n+1} f) - Phi(S_n f))_m||_F
  double rhs = 0.0;  // C 2^{-kappa |m-n|} (gamma_n + gamma_{n+1})
  bool holds(double relative_slack = 1e-9) const { return lhs <= rhs * (1.0 + relative_slack); }
};

std::vector<DecayRow> block_decay_profile(const TruncationLadder& ladder,
                                          const HypothesisReport& report, std::size_t n_max);
std::vector<DecayRow> block_decay_profile(const FlowMapAdapter& adapter, const DyadicSequence& f,
                                          const HypothesisReport& report, std::size_t n_max);

struct ConvergenceRow {
  std::size_t n = 0;
  double actual = 0.0;  // ||Phi(f) - Phi(S_n f)||_{Sigma^s_q}
  double c_tail = 0.0;  // (sum_{p>=n} c_p^q)^{1/q}
  double bound = 0.0;   // A C c_tail
  bool holds(double relative_slack = 1e-9) const {
    return actual <= bound * (1.0 + relative_slack);
  }
};

struct ConvergenceReport {
  std::string adapter;
  double A = 0.0;
  double C = 0.0;
  double kappa = 0.0;
  std::vector<ConvergenceRow> rows;
  bool holds(double relative_slack = 1e-9) const;
};

ConvergenceRow convergence_bound(const TruncationLadder& ladder, const HypothesisReport& report,
                                 std::size_t n);
ConvergenceRow convergence_bound(const FlowMapAdapter& adapter, const DyadicSequence& f,
                                 const HypothesisReport& report, std::size_t n);
ConvergenceReport convergence_report(const TruncationLadder& ladder,
                                     const HypothesisReport& report, std::size_t n_max);

// ----------------------------------------------------------------------------
// Continuity probe: f_eps = f + eps * d for unit directions d in Sigma^s_q.
// ----------------------------------------------------------------------------
struct ContinuityRow {
  double eps = 0.0;
  std::size_t direction = 0;
  double input_distance = 0.0;   // ||f_eps - f||_{Sigma^s_q}
  double output_distance = 0.0;  // ||Phi(f_eps) - Phi(f)||_{Sigma^s_q}
};

struct ContinuityReport {
  std::vector<ContinuityRow> rows;
  double floor = 1e-9;
  /// Largest output in the smallest-eps batch is below the smallest output in
  /// the largest-eps batch, or both are below the floor.
  bool trend_ok = false;
  /// The same comparison between every pair of consecutive scales.
  bool strictly_decreasing = false;
  std::vector<double> scales;      // sorted descending
  std::vector<double> batch_max;   // per scale
  std::vector<double> batch_min;   // per scale
};

ContinuityReport continuity_probe(const FlowMapAdapter& adapter, const DyadicSequence& f,
                                  const std::vector<double>& scales,
                                  const std::vector<DyadicSequence>& directions,
                                  double floor = 1e-9);

/// For fixed n, the distance ||Phi(S_n g) - Phi(S_n f)||_{Sigma^s_q} against
/// the interpolation split minimized over N: `direct` feeds the split with the
/// measured Sigma^{s0}_inf and Sigma^{s1}_inf norms of the difference,
/// `assembled` with the hypothesis-constant bounds on them.
struct InterpolationStep {
  std::size_t n = 0;
  double actual = 0.0;
  double direct = 0.0;
  double assembled = 0.0;
  std::size_t split = 0;
};

InterpolationStep interpolation_step(const FlowMapAdapter& adapter, const HypothesisReport& report,
                                     const DyadicSequence& f, const DyadicSequence& g,
                                     std::size_t n);

// ----------------------------------------------------------------------------
// Serialization
// ----------------------------------------------------------------------------
Json to_json(const EngineScale& scale);
Json to_json(const HypothesisReport& r);
Json to_json(const ConvergenceReport& r);
Json to_json(const ContinuityReport& r);
std::string decay_profile_csv(const std::vector<DecayRow>& rows);
std::string convergence_csv(const ConvergenceReport& r);
std::string sub_bounds_csv(const std::vector<SubBoundRow>& rows);

}  // namespace besov
