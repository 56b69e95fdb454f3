#include "besov/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "besov/errors.hpp"
#include "besov/fft.hpp"
#include "besov/parallel.hpp"
#include "besov/report.hpp"

namespace besov {

std::string to_string(FlowKind kind) {
  return kind == FlowKind::burgers ? "burgers" : "transport";
}

FlowKind parse_flow_kind(const std::string& text) {
  if (text == "burgers") return FlowKind::burgers;
  if (text == "transport") return FlowKind::transport;
  throw PreconditionError("unknown flow kind '" + text + "'");
}

void FlowConfig::validate() const {
  (void)grid_exponent(grid_size);
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw PreconditionError("final time must be positive");
  }
  if (time_steps < 1) throw PreconditionError("need at least one time step");
  if (!mu.is_infinite() && mu.value() < 2.0) throw PreconditionError("mu must be >= 2");
  if (!(ball_radius > 0.0)) throw PreconditionError("ball radius must be positive");
  if (!std::isfinite(transport_speed)) throw PreconditionError("transport speed must be finite");
  scale.validate();
}

std::vector<double> FlowConfig::times() const {
  std::vector<double> t(time_steps + 1);
  for (std::size_t k = 0; k <= time_steps; ++k) {
    t[k] = final_time * static_cast<double>(k) / static_cast<double>(time_steps);
  }
  return t;
}

Json to_json(const FlowConfig& cfg) {
  return Json{{"grid_size", cfg.grid_size},
              {"final_time", cfg.final_time},
              {"time_steps", cfg.time_steps},
              {"flow_kind", to_string(cfg.kind)},
              {"transport_speed", cfg.transport_speed},
              {"ball_radius", cfg.ball_radius},
              {"scale", to_json(cfg.scale)},
              {"mu", cfg.mu.to_string()}};
}

std::uint64_t config_hash(const FlowConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump_json(to_json(cfg), -1)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ----------------------------------------------------------------------------
// Transport
// ----------------------------------------------------------------------------
Trajectory transport_flow(const GridFunction& u0, double speed, const FlowConfig& cfg) {
  cfg.validate();
  const std::size_t N = u0.size();
  const auto c = rfft(u0.values());
  Trajectory traj;
  traj.times = cfg.times();
  traj.final_time = cfg.final_time;
  traj.mu = cfg.mu;
  for (double t : traj.times) {
    std::vector<Complex> ct(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double phase = static_cast<double>(k) * speed * t;
      ct[k] = k == N / 2 ? c[k] * std::cos(phase) : c[k] * std::polar(1.0, -phase);
    }
    traj.states.emplace_back(irfft(ct, N));
  }
  return traj;
}

// ----------------------------------------------------------------------------
// Trigonometric interpolant
// ----------------------------------------------------------------------------
TrigInterpolant::TrigInterpolant(const GridFunction& u) {
  const std::size_t N = u.size();
  const auto c = rfft(u.values());
  double peak = 0.0;
  for (const auto& ck : c) peak = std::max(peak, std::abs(ck));
  // Modes below the FFT rounding floor carry no information about u.
  const double floor = 1e-16 * peak;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k]) <= floor) continue;
    const double w = (k == 0 || k == N / 2) ? 1.0 : 2.0;
    k_.push_back(static_cast<double>(k));
    re_.push_back(w * c[k].real());
    im_.push_back(k == N / 2 ? 0.0 : w * c[k].imag());
    bound_ += w * std::abs(k == N / 2 ? c[k].real() : std::abs(c[k]));
  }
}

double TrigInterpolant::value(double y) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    const double a = k_[i] * y;
    acc += re_[i] * std::cos(a) - im_[i] * std::sin(a);
  }
  return acc;
}

double TrigInterpolant::derivative(double y) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    const double a = k_[i] * y;
    acc -= k_[i] * (re_[i] * std::sin(a) + im_[i] * std::cos(a));
  }
  return acc;
}

double shock_time(const GridFunction& u0) {
  const TrigInterpolant v(u0);
  const std::size_t fine = 16 * u0.size();
  double min_slope = 0.0;
  for (std::size_t i = 0; i < fine; ++i) {
    const double y = kTwoPi * static_cast<double>(i) / static_cast<double>(fine);
    min_slope = std::min(min_slope, v.derivative(y));
  }
  if (min_slope >= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / -min_slope;
}

// ----------------------------------------------------------------------------
// Burgers by characteristics
// ----------------------------------------------------------------------------
Trajectory burgers_flow(const GridFunction& u0, const FlowConfig& cfg) {
  cfg.validate();
  if (u0.size() != cfg.grid_size) throw PreconditionError("datum grid size does not match config");
  const double ts = shock_time(u0);
  if (!(cfg.final_time < kShockMargin * ts)) {
    throw ShockMarginError("final time " + std::to_string(cfg.final_time) +
                           " is not below 0.9 x shock time " + std::to_string(ts));
  }
  const TrigInterpolant v(u0);
  const double M = v.amplitude_bound();
  const std::size_t N = u0.size();
  const auto times = cfg.times();
  const std::size_t K = times.size();

  std::vector<double> values(N * K, 0.0);  // [k * N + i]
  std::vector<double> residual(N, 0.0);

  parallel_for(N, [&](std::size_t i) {
    const double x = u0.node(i);
    double y = x;
    values[i] = u0[i];
    for (std::size_t k = 1; k < K; ++k) {
      const double t = times[k];
      double lo = x - t * M;
      double hi = x + t * M;
      y = std::clamp(y, lo, hi);
      double F = y + t * v.value(y) - x;
      std::size_t it = 0;
      while (std::abs(F) > kCharacteristicTolerance && it < kCharacteristicMaxIterations) {
        if (F < 0.0) {
          lo = y;
        } else {
          hi = y;
        }
        double next = y - F / (1.0 + t * v.derivative(y));
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        y = next;
        F = y + t * v.value(y) - x;
        ++it;
      }
      if (std::abs(F) > kCharacteristicTolerance) throw ConvergenceError(i, t, std::abs(F));
      residual[i] = std::max(residual[i], std::abs(F));
      values[k * N + i] = v.value(y);
    }
  });

  Trajectory traj;
  traj.times = times;
  traj.final_time = cfg.final_time;
  traj.mu = cfg.mu;
  traj.max_residual = *std::max_element(residual.begin(), residual.end());
  for (std::size_t k = 0; k < K; ++k) {
    traj.states.emplace_back(std::vector<double>(values.begin() + static_cast<long>(k * N),
                                                 values.begin() + static_cast<long>((k + 1) * N)));
  }
  return traj;
}

// ----------------------------------------------------------------------------
// Pseudospectral oracle
// ----------------------------------------------------------------------------
Trajectory burgers_pseudospectral_rk4(const GridFunction& u0, double final_time,
                                      std::size_t steps, double nu, std::size_t snapshots) {
  if (steps == 0 || snapshots == 0 || steps % snapshots != 0) {
    throw PreconditionError("steps must be a positive multiple of snapshots");
  }
  if (!(final_time > 0.0)) throw PreconditionError("final time must be positive");
  if (!(nu >= 0.0)) throw PreconditionError("viscosity must be nonnegative");
  const std::size_t N = u0.size();
  const std::size_t H = N / 2 + 1;
  const std::size_t kcut = N / 3;

  auto dealias = [&](std::vector<Complex>& c) {
    for (std::size_t k = kcut + 1; k < H; ++k) c[k] = 0.0;
  };
  auto rhs = [&](const std::vector<Complex>& c) {
    const auto u = irfft(c, N);
    std::vector<double> w(N);
    for (std::size_t i = 0; i < N; ++i) w[i] = 0.5 * u[i] * u[i];
    auto wc = rfft(w);
    dealias(wc);
    std::vector<Complex> out(H);
    for (std::size_t k = 0; k < H; ++k) {
      const double kk = static_cast<double>(k);
      out[k] = Complex(0.0, -kk) * wc[k] - nu * kk * kk * c[k];
    }
    return out;
  };

  auto c = rfft(u0.values());
  dealias(c);
  const double dt = final_time / static_cast<double>(steps);
  const std::size_t every = steps / snapshots;

  Trajectory traj;
  traj.final_time = final_time;
  traj.times.push_back(0.0);
  traj.states.emplace_back(irfft(c, N));
  std::vector<Complex> tmp(H);
  for (std::size_t n = 1; n <= steps; ++n) {
    const auto k1 = rhs(c);
    for (std::size_t k = 0; k < H; ++k) tmp[k] = c[k] + 0.5 * dt * k1[k];
    const auto k2 = rhs(tmp);
    for (std::size_t k = 0; k < H; ++k) tmp[k] = c[k] + 0.5 * dt * k2[k];
    const auto k3 = rhs(tmp);
    for (std::size_t k = 0; k < H; ++k) tmp[k] = c[k] + dt * k3[k];
    const auto k4 = rhs(tmp);
    for (std::size_t k = 0; k < H; ++k) {
      c[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    if (n % every == 0) {
      traj.times.push_back(final_time * static_cast<double>(n) / static_cast<double>(steps));
      traj.states.emplace_back(irfft(c, N));
    }
  }
  return traj;
}

Trajectory run_flow(const GridFunction& u0, const FlowConfig& cfg) {
  return cfg.kind == FlowKind::burgers ? burgers_flow(u0, cfg)
                                       : transport_flow(u0, cfg.transport_speed, cfg);
}

// ----------------------------------------------------------------------------
// Time norms
// ----------------------------------------------------------------------------
double time_norm(const std::vector<double>& series, double final_time, Integrability mu) {
  if (series.empty()) return 0.0;
  const double peak = *std::max_element(series.begin(), series.end());
  if (mu.is_infinite() || peak == 0.0) return peak;
  if (series.size() < 2) throw PreconditionError("time integral needs two nodes");
  const double e = mu.value();
  const double dt = final_time / static_cast<double>(series.size() - 1);
  double acc = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double w = (k == 0 || k + 1 == series.size()) ? 0.5 * dt : dt;
    acc += w * std::pow(series[k] / peak, e);
  }
  return peak * std::pow(acc, 1.0 / e);
}

namespace {

double half_weight(std::size_t k, std::size_t N) { return (k == 0 || k == N / 2) ? 1.0 : 2.0; }

// ||Delta_j u||^2_{H^s} for every block, from the half spectrum.
std::vector<double> block_sobolev_sq(const std::vector<Complex>& c, double s, const FilterBank& bank) {
  const std::size_t N = bank.grid_size();
  std::vector<double> out(bank.block_count(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double mag = std::norm(c[k]);
    if (mag == 0.0) continue;
    const double xi = static_cast<double>(k);
    const double base = kTwoPi * half_weight(k, N) * std::pow(1.0 + xi * xi, s) * mag;
    for (std::size_t j = 0; j <= bank.j_max(); ++j) {
      const double m = bank.analysis(j, k);
      if (m != 0.0) out[j] += m * m * base;
    }
  }
  return out;
}

void require_traj_bank(const Trajectory& traj, const FilterBank& bank) {
  if (traj.states.empty()) throw PreconditionError("empty trajectory");
  if (traj.grid_size() != bank.grid_size()) {
    throw PreconditionError("trajectory grid does not match the filter bank");
  }
}

}  // namespace

double lmu_sobolev_norm(const Trajectory& traj, double s) {
  std::vector<double> series;
  series.reserve(traj.nodes());
  for (const auto& u : traj.states) series.push_back(sobolev_norm(u, s));
  return time_norm(series, traj.final_time, traj.mu);
}

double chemin_lerner_norm(const Trajectory& traj, double s, const FilterBank& bank) {
  require_traj_bank(traj, bank);
  const std::size_t J = bank.block_count();
  std::vector<std::vector<double>> series(J, std::vector<double>(traj.nodes(), 0.0));
  for (std::size_t k = 0; k < traj.nodes(); ++k) {
    const auto sq = block_sobolev_sq(rfft(traj.states[k].values()), s, bank);
    for (std::size_t j = 0; j < J; ++j) series[j][k] = std::sqrt(sq[j]);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    const double b = time_norm(series[j], traj.final_time, traj.mu);
    acc += b * b;
  }
  return std::sqrt(acc);
}

TimeContinuityReport time_continuity_modulus(const Trajectory& traj, double s,
                                             const FilterBank& bank) {
  if (!traj.mu.is_infinite()) throw PreconditionError("time continuity report needs mu = inf");
  require_traj_bank(traj, bank);
  const std::size_t N = bank.grid_size();
  const std::size_t J = bank.block_count();
  const std::size_t K = traj.nodes();

  std::vector<std::vector<Complex>> spectra(K);
  for (std::size_t k = 0; k < K; ++k) spectra[k] = rfft(traj.states[k].values());

  TimeContinuityReport r;
  r.block_sup.assign(J, 0.0);
  r.remainder.assign(J, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const auto sq = block_sobolev_sq(spectra[k], s, bank);
    for (std::size_t j = 0; j < J; ++j) r.block_sup[j] = std::max(r.block_sup[j], sq[j]);
    // u - S_N u = sum_{j>N} Delta_j u, one multiplier per N.
    for (std::size_t n = 0; n < J; ++n) {
      double acc = 0.0;
      for (std::size_t q = 0; q < spectra[k].size(); ++q) {
        double m = 0.0;
        for (std::size_t j = n + 1; j < J; ++j) m += bank.analysis(j, q);
        if (m == 0.0) continue;
        const double xi = static_cast<double>(q);
        acc += half_weight(q, N) * m * m * std::pow(1.0 + xi * xi, s) * std::norm(spectra[k][q]);
      }
      r.remainder[n] = std::max(r.remainder[n], kTwoPi * acc);
    }
  }
  r.tails.assign(J + 1, 0.0);
  for (std::size_t n = J; n > 0; --n) r.tails[n - 1] = r.tails[n] + r.block_sup[n - 1];

  // Pairwise H^s distances between time slices.
  std::vector<double> dist(K * K, 0.0);
  for (std::size_t a = 0; a < K; ++a) {
    for (std::size_t b = a + 1; b < K; ++b) {
      double acc = 0.0;
      for (std::size_t q = 0; q < spectra[a].size(); ++q) {
        const double xi = static_cast<double>(q);
        acc += half_weight(q, N) * std::pow(1.0 + xi * xi, s) * std::norm(spectra[a][q] - spectra[b][q]);
      }
      dist[a * K + b] = dist[b * K + a] = std::sqrt(kTwoPi * acc);
    }
  }
  for (std::size_t a = 0; a + 1 < K; ++a) {
    r.max_step_distance = std::max(r.max_step_distance, dist[a * K + a + 1]);
  }
  if (K >= 2) {
    const double dt = traj.final_time / static_cast<double>(K - 1);
    std::vector<std::size_t> lags;
    for (std::size_t lag = 1; lag < K - 1; lag *= 2) lags.push_back(lag);
    lags.push_back(K - 1);
    for (std::size_t lag : lags) {
      double m = 0.0;
      for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = a + 1; b < K && b <= a + lag; ++b) m = std::max(m, dist[a * K + b]);
      }
      r.deltas.push_back(dt * static_cast<double>(lag));
      r.modulus.push_back(m);
    }
  }
  return r;
}

Json to_json(const TimeContinuityReport& r) {
  return Json{{"block_sup", r.block_sup},         {"tails", r.tails},
              {"remainder", r.remainder},         {"deltas", r.deltas},
              {"modulus", r.modulus},             {"max_step_distance", r.max_step_distance}};
}

// ----------------------------------------------------------------------------
// Adapter
// ----------------------------------------------------------------------------
FlowMapAdapter flow_as_sigma_map(const FlowConfig& cfg, const FilterBank& bank) {
  cfg.validate();
  if (cfg.grid_size != bank.grid_size()) throw PreconditionError("config and bank sizes differ");
  const std::size_t nodes = cfg.time_steps + 1;
  SpaceRef out_space = trajectory_space(nodes, cfg.grid_size, cfg.final_time, cfg.mu);
  auto map = [cfg, bank, out_space, nodes](const DyadicSequence& f) {
    const auto u0 = reconstruct(f, bank);
    const auto traj = run_flow(u0, cfg);
    const std::size_t N = cfg.grid_size;
    const std::size_t J = bank.block_count();
    std::vector<std::vector<double>> blocks(J, std::vector<double>(nodes * N, 0.0));
    for (std::size_t k = 0; k < nodes; ++k) {
      const auto c = rfft(traj.states[k].values());
      std::vector<Complex> cj(c.size());
      for (std::size_t j = 0; j < J; ++j) {
        for (std::size_t q = 0; q < c.size(); ++q) cj[q] = c[q] * bank.analysis(j, q);
        const auto slice = irfft(cj, N);
        std::copy(slice.begin(), slice.end(), blocks[j].begin() + static_cast<long>(k * N));
      }
    }
    std::vector<Element> entries;
    entries.reserve(J);
    for (auto& b : blocks) entries.push_back(Element::trajectory(nodes, std::move(b)));
    return DyadicSequence(out_space, std::move(entries));
  };
  return FlowMapAdapter(map, cfg.ball_radius, cfg.scale, to_string(cfg.kind), bank.block_count());
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const FlowConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  Json files = Json::array();
  for (std::size_t k = 0; k < traj.nodes(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "state_%04zu.gfn", k);
    write_grid_binary(dir / name, traj.states[k]);
    files.push_back(name);
  }
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  Json manifest;
  manifest["schema_version"] = 1;
  manifest["flow_kind"] = to_string(cfg.kind);
  manifest["grid_size"] = traj.grid_size();
  manifest["final_time"] = traj.final_time;
  manifest["mu"] = traj.mu.to_string();
  manifest["config_hash"] = hash;
  manifest["times"] = traj.times;
  manifest["files"] = files;
  write_text_file(dir / "manifest.json", dump_json(manifest));
}

}  // namespace besov
