#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "besov/engine.hpp"
#include "besov/grid.hpp"
#include "besov/littlewood_paley.hpp"

namespace besov {

enum class FlowKind { burgers, transport };

std::string to_string(FlowKind kind);
FlowKind parse_flow_kind(const std::string& text);

struct FlowConfig {
  std::size_t grid_size = 256;
  double final_time = 0.5;
  std::size_t time_steps = 64;  // M; nodes t_0 .. t_M
  FlowKind kind = FlowKind::burgers;
  double transport_speed = 1.0;
  double ball_radius = 1.0;
  EngineScale scale{0.0, 2.0, 3.0, Summability(2.0)};
  Integrability mu = Integrability::infinity();

  void validate() const;
  std::vector<double> times() const;
  double time_step() const { return final_time / static_cast<double>(time_steps); }
};

Json to_json(const FlowConfig& cfg);
/// FNV-1a 64 of the canonical JSON form.
std::uint64_t config_hash(const FlowConfig& cfg);

struct Trajectory {
  std::vector<double> times;
  std::vector<GridFunction> states;
  double final_time = 0.0;
  Integrability mu = Integrability::infinity();
  /// Largest characteristic residual |y + t u0(y) - x| (0 for exact flows).
  double max_residual = 0.0;

  std::size_t grid_size() const { return states.front().size(); }
  std::size_t nodes() const { return states.size(); }
};

/// u(t, x) = u0(x - c t) by spectral phase shift. The Nyquist mode, which a
/// real grid cannot shift, is multiplied by cos(N/2 c t).
Trajectory transport_flow(const GridFunction& u0, double speed, const FlowConfig& cfg);

// ----------------------------------------------------------------------------
// Inviscid Burgers u_t + u u_x = 0 by characteristics.
// ----------------------------------------------------------------------------

/// Trigonometric interpolant of grid data with value and derivative at any y.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const GridFunction& u);
  double value(double y) const;
  double derivative(double y) const;
  /// sum of |coefficients|: an upper bound for max |u|.
  double amplitude_bound() const { return bound_; }
  std::size_t modes() const { return k_.size(); }

 private:
  std::vector<double> k_;   // frequencies kept
  std::vector<double> re_;  // value = sum w_k (re cos ky - im sin ky)
  std::vector<double> im_;
  double bound_ = 0.0;
};

/// 1 / max(0, -min u0'), +inf when u0 is nowhere decreasing. The minimum
/// is taken over a 16x refined sampling of the interpolant.
double shock_time(const GridFunction& u0);

inline constexpr double kShockMargin = 0.9;
inline constexpr double kCharacteristicTolerance = 1e-12;
inline constexpr std::size_t kCharacteristicMaxIterations = 100;

/// Requires T < 0.9 * shock_time(u0). Throws ShockMarginError otherwise and
/// ConvergenceError if a root solve fails.
Trajectory burgers_flow(const GridFunction& u0, const FlowConfig& cfg);

/// Pseudospectral oracle: RK4 in time, 2/3-rule dealiasing, optional
/// viscosity nu u_xx. Returns `snapshots + 1` states evenly spaced in [0, T].
Trajectory burgers_pseudospectral_rk4(const GridFunction& u0, double final_time,
                                      std::size_t steps, double nu = 0.0,
                                      std::size_t snapshots = 1);

Trajectory run_flow(const GridFunction& u0, const FlowConfig& cfg);

// ----------------------------------------------------------------------------
// Time norms
// ----------------------------------------------------------------------------
/// L^mu in time (trapezoid rule, max for mu = inf) of a nonnegative series.
double time_norm(const std::vector<double>& series, double final_time, Integrability mu);
/// ||u||_{L^mu(0,T;H^s)}.
double lmu_sobolev_norm(const Trajectory& traj, double s);
/// (sum_j ||Delta_j u||^2_{L^mu(0,T;H^s)})^{1/2}.
double chemin_lerner_norm(const Trajectory& traj, double s, const FilterBank& bank);

struct TimeContinuityReport {
  std::vector<double> block_sup;  // sup_t ||Delta_j u(t)||^2_{H^s}, j = 0..j_max
  std::vector<double> tails;      // sum_{j>=N} block_sup[j], N = 0..j_max+1
  std::vector<double> remainder;  // sup_t ||u(t) - S_N u(t)||^2_{H^s}, N = 0..j_max
  std::vector<double> deltas;     // Delta t, 2 Delta t, 4 Delta t, ..., T
  std::vector<double> modulus;    // sup_{|t-t'|<=delta} ||u(t) - u(t')||_{H^s}
  double max_step_distance = 0.0; // max_k ||u(t_{k+1}) - u(t_k)||_{H^s}
};

/// Requires mu = inf.
TimeContinuityReport time_continuity_modulus(const Trajectory& traj, double s,
                                             const FilterBank& bank);

Json to_json(const TimeContinuityReport& r);

// ----------------------------------------------------------------------------
// Sequence-space conjugate Phi_Sigma(f) = L_Y(Phi(R f)).
// ----------------------------------------------------------------------------
/// Output entries are the blocks Delta_j u(t) over all time nodes, measured
/// in L^mu(0,T; L^2); cap = j_max + 1 blocks.
FlowMapAdapter flow_as_sigma_map(const FlowConfig& cfg, const FilterBank& bank);

/// state_NNNN.gfn per node plus manifest.json.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const FlowConfig& cfg);

}  // namespace besov
