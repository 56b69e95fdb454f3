#include "besov/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "besov/errors.hpp"

namespace besov {

std::string to_string(DataFamily f) { return f == DataFamily::trig2 ? "trig2" : "broadband"; }

DataFamily parse_data_family(const std::string& text) {
  if (text == "trig2") return DataFamily::trig2;
  if (text == "broadband") return DataFamily::broadband;
  throw PreconditionError("unknown data family '" + text + "'");
}

GridFunction family_member(DataFamily family, std::size_t grid_size, Rng& rng) {
  if (family == DataFamily::trig2) {
    std::uniform_real_distribution<double> coef(-0.2, 0.2);
    const double a = coef(rng);
    const double b = coef(rng);
    return GridFunction::sample(grid_size,
                                [a, b](double x) { return a * std::sin(x) + b * std::sin(2.0 * x); });
  }
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> a(17), b(17);
  for (std::size_t k = 1; k <= 16; ++k) {
    a[k] = coef(rng);
    b[k] = coef(rng);
  }
  return GridFunction::sample(grid_size, [&](double x) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= 16; ++k) {
      const double kk = static_cast<double>(k);
      acc += std::exp(-kk / 3.0) * (a[k] * std::cos(kk * x) + b[k] * std::sin(kk * x));
    }
    return acc / 4.0;
  });
}

Experiment build_experiment(const ExperimentConfig& cfg) {
  cfg.flow.validate();
  const std::size_t N = cfg.flow.grid_size;
  FilterBank bank = FilterBank::build(N);
  Rng rng(cfg.seed);

  std::vector<DyadicSequence> family;
  family.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    family.push_back(decompose(family_member(cfg.family, N, rng), bank));
  }
  const double alpha = cfg.alpha;
  const double beta = cfg.beta;
  DyadicSequence datum = decompose(
      cfg.family == DataFamily::broadband
          ? family_member(DataFamily::broadband, N, rng)
          : GridFunction::sample(
                N, [=](double x) { return alpha * std::sin(x) + beta * std::sin(2.0 * x); }),
      bank);
  std::vector<DyadicSequence> directions{
      decompose(GridFunction::sample(N, [](double x) { return std::sin(3.0 * x); }), bank),
      decompose(GridFunction::sample(N, [](double x) { return std::cos(5.0 * x); }), bank)};

  FlowConfig flow = cfg.flow;
  if (cfg.auto_radius) {
    const ScaleIndex idx{flow.scale.s, flow.scale.q};
    double largest = sigma_norm(datum, idx);
    for (const auto& f : family) largest = std::max(largest, sigma_norm(f, idx));
    flow.ball_radius = largest > 0.0 ? 2.0 * largest : 1.0;
  }

  SampleSet samples;
  for (const auto& f : family) samples.add_ladder(f);
  samples.add_ladder(datum);

  ExperimentConfig stored = cfg;
  stored.flow = flow;
  FlowMapAdapter adapter = flow_as_sigma_map(flow, bank);
  return Experiment{stored,         std::move(bank),    std::move(family),   std::move(datum),
                    std::move(directions), std::move(samples), std::move(adapter)};
}

double tail_roundoff_floor(std::size_t grid_size, double s, double sup_abs, double residual) {
  const double half = static_cast<double>(grid_size / 2);
  const double eps = std::numeric_limits<double>::epsilon();
  const double a = 64.0 * eps * sup_abs + half * sup_abs * residual;
  return 2.0 * std::numbers::pi * std::pow(1.0 + half * half, s) * a * a;
}

namespace {

class Checks {
 public:
  void require(bool ok, const std::string& check, const std::string& detail) {
    if (!ok) failures.push_back({check, detail});
  }
  static bool le(double a, double b, double slack = 1e-9) { return a <= b * (1.0 + slack); }
  static std::string pair(const std::string& what, std::size_t n, double lhs, double rhs) {
    return what + " n=" + std::to_string(n) + ": " + format_double(lhs) + " > " + format_double(rhs);
  }
  std::vector<Failure> failures;
};

}  // namespace

ExperimentResult run_experiment(const Experiment& ex) {
  ExperimentResult r;
  Checks checks;
  const EngineScale& sc = ex.cfg.flow.scale;

  r.hypothesis = estimate_constants(ex.adapter, ex.samples, ex.cfg.smooth_only);
  const TruncationLadder ladder(ex.adapter, ex.datum);

  r.sub_bounds = lemma_sub_bounds(ladder, r.hypothesis, ex.cfg.n_max);
  for (const auto& row : r.sub_bounds) {
    checks.require(Checks::le(row.high_lhs, row.high_rhs), "tame_high_bound",
                   Checks::pair("high", row.n, row.high_lhs, row.high_rhs));
    checks.require(Checks::le(row.low_lhs, row.low_rhs), "lipschitz_low_bound",
                   Checks::pair("low", row.n, row.low_lhs, row.low_rhs));
    checks.require(std::abs(row.trunc_norm - row.trunc_identity) <=
                       1e-12 * std::max(row.trunc_norm, row.trunc_identity),
                   "truncation_identity",
                   Checks::pair("identity", row.n, row.trunc_norm, row.trunc_identity));
    checks.require(Checks::le(row.step_norm, row.step_bound), "truncation_step",
                   Checks::pair("step", row.n, row.step_norm, row.step_bound));
  }

  r.decay = block_decay_profile(ladder, r.hypothesis, ex.cfg.n_max);
  for (const auto& row : r.decay) {
    checks.require(row.holds(), "block_decay",
                   Checks::pair("decay m=" + std::to_string(row.m), row.n, row.lhs, row.rhs));
  }

  r.convergence = convergence_report(ladder, r.hypothesis, ex.cfg.n_max);
  for (const auto& row : r.convergence.rows) {
    checks.require(row.holds(), "telescoping_convergence",
                   Checks::pair("convergence", row.n, row.actual, row.bound));
  }

  r.continuity = continuity_probe(ex.adapter, ex.datum, ex.cfg.eps, ex.directions);
  checks.require(r.continuity.trend_ok, "continuity_trend", "batch extremes out of order");
  if (ex.cfg.flow.kind == FlowKind::burgers) {
    checks.require(r.continuity.strictly_decreasing, "continuity_decreasing",
                   "output distances do not decrease across the scales");
  }

  // Interpolation inequality applied to S_n f_eps vs S_n f for the largest scale.
  const double eps = *std::max_element(ex.cfg.eps.begin(), ex.cfg.eps.end());
  const ScaleIndex idx{sc.s, sc.q};
  const DyadicSequence unit = (1.0 / sigma_norm(ex.directions.front(), idx)) * ex.directions.front();
  const DyadicSequence g = ex.datum + eps * unit;
  const std::size_t top = std::max(ex.datum.support_length(), g.support_length());
  for (std::size_t n = 0; n < top; ++n) {
    auto step = interpolation_step(ex.adapter, r.hypothesis, ex.datum, g, n);
    checks.require(Checks::le(step.actual, step.direct), "interpolation_split",
                   Checks::pair("interp", n, step.actual, step.direct));
    r.interpolation.push_back(step);
  }

  const auto traj = run_flow(reconstruct(ex.datum, ex.bank), ex.cfg.flow);
  for (const auto& u : traj.states) r.sup_sobolev = std::max(r.sup_sobolev, sobolev_norm(u, sc.s));
  r.lmu_sobolev = lmu_sobolev_norm(traj, sc.s);
  r.chemin_lerner = chemin_lerner_norm(traj, sc.s, ex.bank);
  const double sqrt3 = std::sqrt(3.0);
  checks.require(Checks::le(r.sup_sobolev, sqrt3 * r.chemin_lerner), "minkowski_sup",
                 format_double(r.sup_sobolev) + " > sqrt(3) * " + format_double(r.chemin_lerner));
  checks.require(Checks::le(r.lmu_sobolev, sqrt3 * r.chemin_lerner), "minkowski_lmu",
                 format_double(r.lmu_sobolev) + " > sqrt(3) * " + format_double(r.chemin_lerner));

  if (traj.mu.is_infinite()) {
    r.has_time_report = true;
    r.time_report = time_continuity_modulus(traj, sc.s, ex.bank);
    const auto& tr = r.time_report;
    r.block_sup_sum = tr.tails.front();
    checks.require(std::isfinite(r.block_sup_sum), "chemin_lerner_finite", "block sum not finite");
    for (std::size_t n = 0; n + 1 < tr.tails.size(); ++n) {
      checks.require(tr.tails[n + 1] <= tr.tails[n], "tail_monotone",
                     Checks::pair("tail", n, tr.tails[n + 1], tr.tails[n]));
    }
    // The top block of a smooth pre-shock solution holds only FFT rounding.
    double sup_abs = 0.0;
    for (const auto& u : traj.states) sup_abs = std::max(sup_abs, u.max_abs());
    const double floor =
        tail_roundoff_floor(ex.cfg.flow.grid_size, sc.s, sup_abs, traj.max_residual);
    const double top_tail = tr.tails[tr.tails.size() - 2];
    checks.require(tr.tails.back() == 0.0, "tail_vanishes", "empty tail not zero");
    checks.require(top_tail <= floor, "tail_vanishes",
                   "top-block tail " + format_double(top_tail) + " above the rounding floor " +
                       format_double(floor));
    for (std::size_t n = 0; n < tr.remainder.size(); ++n) {
      checks.require(Checks::le(tr.remainder[n], 3.0 * tr.tails[n + 1]), "remainder_by_tail",
                     Checks::pair("remainder", n, tr.remainder[n], 3.0 * tr.tails[n + 1]));
    }
    for (std::size_t i = 0; i + 1 < tr.modulus.size(); ++i) {
      checks.require(tr.modulus[i] <= tr.modulus[i + 1], "modulus_monotone",
                     Checks::pair("modulus", i, tr.modulus[i], tr.modulus[i + 1]));
    }
    if (!tr.modulus.empty()) {
      checks.require(Checks::le(tr.modulus.front(), tr.max_step_distance), "modulus_first_step",
                     Checks::pair("modulus", 0, tr.modulus.front(), tr.max_step_distance));
    }
  }
  r.failures = std::move(checks.failures);
  return r;
}

Json to_json(const std::vector<Failure>& failures) {
  Json arr = Json::array();
  for (const auto& f : failures) arr.push_back({{"check", f.check}, {"detail", f.detail}});
  return arr;
}

Json to_json(const ExperimentResult& r) {
  Json j;
  j["hypothesis"] = to_json(r.hypothesis);
  j["convergence"] = to_json(r.convergence);
  j["continuity"] = to_json(r.continuity);
  Json interp = Json::array();
  for (const auto& s : r.interpolation) {
    interp.push_back({{"n", s.n},
                      {"actual", s.actual},
                      {"direct", s.direct},
                      {"assembled", s.assembled},
                      {"split", s.split}});
  }
  j["interpolation"] = interp;
  j["sup_sobolev"] = r.sup_sobolev;
  j["lmu_sobolev"] = r.lmu_sobolev;
  j["chemin_lerner"] = r.chemin_lerner;
  if (r.has_time_report) {
    j["block_sup_sum"] = r.block_sup_sum;
    j["time_continuity"] = to_json(r.time_report);
  }
  j["failures"] = to_json(r.failures);
  return j;
}

}  // namespace besov
