#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "besov/engine.hpp"
#include "besov/flow.hpp"
#include "besov/littlewood_paley.hpp"
#include "besov/sampling.hpp"

namespace besov {

/// Initial-data families for the flow experiments.
/// trig2: alpha sin x + beta sin 2x, alpha, beta ~ U[-0.2, 0.2].
/// broadband: sum_{k=1}^{16} e^{-k/3} (a_k cos kx + b_k sin kx) / 4, a_k, b_k ~ U[-1, 1].
enum class DataFamily { trig2, broadband };

std::string to_string(DataFamily f);
DataFamily parse_data_family(const std::string& text);

GridFunction family_member(DataFamily family, std::size_t grid_size, Rng& rng);

struct ExperimentConfig {
  FlowConfig flow;
  bool auto_radius = true;        // r = 2 x largest sample norm
  DataFamily family = DataFamily::trig2;
  std::size_t samples = 8;        // family members whose ladders enter the sample set
  std::uint64_t seed = 1;
  std::size_t n_max = 8;
  std::vector<double> eps = {1e-1, 1e-2, 1e-3};
  double alpha = 0.1;             // trig2 datum alpha sin x + beta sin 2x; broadband
                                  // draws the datum after the sample members
  double beta = 0.05;
  bool smooth_only = false;
};

struct Experiment {
  ExperimentConfig cfg;
  FilterBank bank;
  std::vector<DyadicSequence> family;
  DyadicSequence datum;
  std::vector<DyadicSequence> directions;  // L(sin 3x), L(cos 5x)
  SampleSet samples;
  FlowMapAdapter adapter;
};

Experiment build_experiment(const ExperimentConfig& cfg);

/// H^s energy of rounding-level noise on an N-point grid: 2 pi (1 + (N/2)^2)^s a^2
/// with a = 64 eps U + (N/2) U residual, U = sup |u|. The second term is the
/// Bernstein bound for a characteristic-position error of size `residual`.
double tail_roundoff_floor(std::size_t grid_size, double s, double sup_abs, double residual);

struct Failure {
  std::string check;
  std::string detail;
};

struct ExperimentResult {
  HypothesisReport hypothesis;
  std::vector<SubBoundRow> sub_bounds;
  std::vector<DecayRow> decay;
  ConvergenceReport convergence;
  ContinuityReport continuity;
  std::vector<InterpolationStep> interpolation;
  bool has_time_report = false;
  TimeContinuityReport time_report;
  double sup_sobolev = 0.0;      // sup_t ||u(t)||_{H^s}
  double lmu_sobolev = 0.0;      // ||u||_{L^mu H^s}
  double chemin_lerner = 0.0;    // ||u||_{Y^s}
  double block_sup_sum = 0.0;    // sum_j sup_t ||Delta_j u(t)||^2_{H^s}
  std::vector<Failure> failures;
};

/// Runs every engine diagnostic on the datum and records failed checks.
ExperimentResult run_experiment(const Experiment& ex);

Json to_json(const ExperimentResult& r);
Json to_json(const std::vector<Failure>& failures);

}  // namespace besov
