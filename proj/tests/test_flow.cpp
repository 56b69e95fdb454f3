#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "besov/errors.hpp"
#include "besov/experiment.hpp"
#include "besov/flow.hpp"

using namespace besov;

namespace {

constexpr double kPi = std::numbers::pi;

FlowConfig transport_config(std::size_t N, double T, std::size_t steps, double speed = 1.0) {
  FlowConfig cfg;
  cfg.kind = FlowKind::transport;
  cfg.grid_size = N;
  cfg.final_time = T;
  cfg.time_steps = steps;
  cfg.transport_speed = speed;
  return cfg;
}

FlowConfig burgers_config(std::size_t N, double T, std::size_t steps) {
  FlowConfig cfg;
  cfg.grid_size = N;
  cfg.final_time = T;
  cfg.time_steps = steps;
  return cfg;
}

GridFunction sine(std::size_t N, double a) {
  return GridFunction::sample(N, [a](double x) { return a * std::sin(x); });
}

Trajectory constant_trajectory(const GridFunction& g, std::size_t nodes, double T, Integrability mu) {
  Trajectory tr;
  tr.final_time = T;
  tr.mu = mu;
  for (std::size_t i = 0; i < nodes; ++i) {
    tr.times.push_back(T * static_cast<double>(i) / static_cast<double>(nodes - 1));
    tr.states.push_back(g);
  }
  return tr;
}

}  // namespace

TEST(Transport, ZeroAndStill) {
  const auto zero = transport_flow(GridFunction::zero(32), 1.0, transport_config(32, 1.0, 4));
  for (const auto& u : zero.states) EXPECT_EQ(u.max_abs(), 0.0);
  const auto u0 = GridFunction::sample(32, [](double x) { return std::exp(std::sin(x)); });
  const auto still = transport_flow(u0, 0.0, transport_config(32, 1.0, 4, 0.0));
  for (const auto& u : still.states) EXPECT_LT(max_abs_diff(u, u0), 1e-14);
}

TEST(Transport, CosineQuarterTurn) {
  const auto cfg = transport_config(64, kPi / 2.0, 1);
  const auto tr = transport_flow(GridFunction::sample(64, [](double x) { return std::cos(x); }), 1.0, cfg);
  const auto exact = GridFunction::sample(64, [](double x) { return std::cos(x - kPi / 2.0); });
  EXPECT_LE(max_abs_diff(tr.states.back(), exact), 1e-12);
  EXPECT_EQ(tr.nodes(), 2u);
}

TEST(Transport, ExactShiftOfBandLimitedData) {
  const auto f = [](double x) { return std::sin(3.0 * x) + 0.25 * std::cos(7.0 * x + 1.0); };
  const auto cfg = transport_config(64, 0.8, 8, 1.7);
  const auto tr = transport_flow(GridFunction::sample(64, f), 1.7, cfg);
  for (std::size_t k = 0; k < tr.nodes(); ++k) {
    const double t = tr.times[k];
    const auto exact = GridFunction::sample(64, [&](double x) { return f(x - 1.7 * t); });
    EXPECT_LE(max_abs_diff(tr.states[k], exact), 1e-12);
  }
}

TEST(Transport, AdapterConservesBlockNorms) {
  auto cfg = transport_config(64, 1.0, 8);
  cfg.ball_radius = 1e3;
  const auto bank = FilterBank::build(64);
  const auto adapter = flow_as_sigma_map(cfg, bank);
  const auto f = decompose(GridFunction::sample(64, [](double x) { return 0.1 * std::cos(5.0 * x) + 0.05 * std::sin(17.0 * x); }), bank);
  const auto out = adapter(f);
  const auto in_norms = f.block_norms();
  const auto out_norms = out.block_norms();
  for (std::size_t j = 0; j < in_norms.size(); ++j) EXPECT_NEAR(out_norms[j], in_norms[j], 1e-13);
}

TEST(Burgers, ShockTime) {
  EXPECT_NEAR(shock_time(sine(64, 0.1)), 10.0, 1e-9);
  EXPECT_TRUE(std::isinf(shock_time(GridFunction::zero(64))));
  EXPECT_THROW(burgers_flow(sine(64, 0.1), burgers_config(64, 9.5, 4)), ShockMarginError);
}

TEST(Burgers, Zero) {
  const auto tr = burgers_flow(GridFunction::zero(32), burgers_config(32, 0.5, 4));
  for (const auto& u : tr.states) EXPECT_EQ(u.max_abs(), 0.0);
}

TEST(Burgers, SatisfiesImplicitRelation) {
  // u = u0(x - t u) with u0 analytic, checked node by node
  const double a = 0.1, b = 0.05;
  const auto u0 = [=](double x) { return a * std::sin(x) + b * std::sin(2.0 * x); };
  const auto tr = burgers_flow(GridFunction::sample(128, u0), burgers_config(128, 0.5, 8));
  for (std::size_t k = 0; k < tr.nodes(); ++k) {
    const double t = tr.times[k];
    for (std::size_t i = 0; i < 128; ++i) {
      const double x = tr.states[k].node(i), u = tr.states[k][i];
      ASSERT_NEAR(u, u0(x - t * u), 1e-12) << k << " " << i;
    }
  }
  EXPECT_LE(tr.max_residual, kCharacteristicTolerance);
}

TEST(Burgers, RangeShrinksIntoInitialRange) {
  const auto u0 = sine(64, 0.1);
  const auto tr = burgers_flow(u0, burgers_config(64, 0.5, 4));
  for (const auto& u : tr.states) EXPECT_LE(u.max_abs(), 0.1 + 1e-12);
}

TEST(Burgers, AgreesWithPseudospectralOracle) {
  const auto u0 = sine(256, 0.1);
  const auto ch = burgers_flow(u0, burgers_config(256, 0.5, 1));
  const auto rk = burgers_pseudospectral_rk4(u0, 0.5, 2000);
  EXPECT_LE(max_abs_diff(ch.states.back(), rk.states.back()), 1e-6);
  // vanishing viscosity: the viscous solutions approach the inviscid one
  double prev = std::numeric_limits<double>::infinity();
  for (double nu : {1e-2, 1e-3, 1e-4}) {
    const auto v = burgers_pseudospectral_rk4(u0, 0.5, 2000, nu);
    const double err = max_abs_diff(ch.states.back(), v.states.back());
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LE(prev, 1e-5);
}

TEST(Burgers, AdapterOutputFitsTheBank) {
  const auto cfg = burgers_config(64, 0.5, 8);
  const auto bank = FilterBank::build(64);
  const auto adapter = flow_as_sigma_map(cfg, bank);
  const auto out = adapter(decompose(sine(64, 0.1), bank));
  EXPECT_LE(out.support_length(), bank.block_count());
  for (double b : out.block_norms()) EXPECT_TRUE(std::isfinite(b));
}

TEST(TimeNorms, TrapezoidAndMax) {
  EXPECT_DOUBLE_EQ(time_norm({1.0, 3.0}, 2.0, Integrability::infinity()), 3.0);
  EXPECT_DOUBLE_EQ(time_norm({1.0, 3.0}, 2.0, Integrability(1.0)), 4.0);
  EXPECT_DOUBLE_EQ(time_norm({0.0, 0.0, 0.0}, 1.0, Integrability(2.0)), 0.0);
}

TEST(TimeNorms, ConstantStateFactorsOut) {
  const auto bank = FilterBank::build(32);
  const auto g = GridFunction::sample(32, [](double x) { return std::cos(x) + 0.3 * std::sin(6.0 * x); });
  const double T = 0.75, s = 1.0;
  for (double mu : {2.0, 3.0}) {
    const auto tr = constant_trajectory(g, 5, T, Integrability(mu));
    double blocks = 0.0;
    for (std::size_t j = 0; j <= bank.j_max(); ++j) {
      const double h = sobolev_norm(apply_block(g, j, bank), s);
      blocks += h * h;
    }
    EXPECT_NEAR(chemin_lerner_norm(tr, s, bank), std::pow(T, 1.0 / mu) * std::sqrt(blocks), 1e-12);
    EXPECT_NEAR(lmu_sobolev_norm(tr, s), std::pow(T, 1.0 / mu) * sobolev_norm(g, s), 1e-12);
  }
  const auto zero = constant_trajectory(GridFunction::zero(32), 3, T, Integrability(2.0));
  EXPECT_EQ(chemin_lerner_norm(zero, s, bank), 0.0);
}

TEST(TimeContinuity, ZeroAndConstant) {
  const auto bank = FilterBank::build(32);
  const auto z = time_continuity_modulus(
      constant_trajectory(GridFunction::zero(32), 5, 1.0, Integrability::infinity()), 2.0, bank);
  for (double t : z.tails) EXPECT_EQ(t, 0.0);
  for (double m : z.modulus) EXPECT_EQ(m, 0.0);
  const auto c = time_continuity_modulus(
      constant_trajectory(sine(32, 1.0), 5, 1.0, Integrability::infinity()), 2.0, bank);
  for (double m : c.modulus) EXPECT_EQ(m, 0.0);
  EXPECT_THROW(time_continuity_modulus(constant_trajectory(sine(32, 1.0), 3, 1.0, Integrability(2.0)),
                                       2.0, bank),
               PreconditionError);
}

TEST(TimeContinuity, BurgersTrajectory) {
  const auto cfg = burgers_config(128, 0.5, 16);
  const auto bank = FilterBank::build(128);
  const auto tr = burgers_flow(sine(128, 0.1), cfg);
  const auto rep = time_continuity_modulus(tr, 2.0, bank);
  ASSERT_EQ(rep.tails.size(), bank.block_count() + 1);
  EXPECT_EQ(rep.tails.back(), 0.0);
  for (std::size_t n = 0; n + 1 < rep.tails.size(); ++n) EXPECT_LE(rep.tails[n + 1], rep.tails[n]);
  for (std::size_t i = 0; i + 1 < rep.modulus.size(); ++i) EXPECT_LE(rep.modulus[i], rep.modulus[i + 1]);
  EXPECT_LE(rep.modulus.front(), rep.max_step_distance * (1.0 + 1e-12));
  EXPECT_DOUBLE_EQ(rep.deltas.front(), cfg.time_step());
  EXPECT_DOUBLE_EQ(rep.deltas.back(), cfg.final_time);
}

TEST(FlowConfig, ValidationAndHash) {
  FlowConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  FlowConfig bad = cfg;
  bad.mu = Integrability(1.0);
  EXPECT_THROW(bad.validate(), PreconditionError);
  bad = cfg;
  bad.grid_size = 100;
  EXPECT_THROW(bad.validate(), PreconditionError);
  bad = cfg;
  bad.time_steps = 0;
  EXPECT_THROW(bad.validate(), PreconditionError);
  FlowConfig other = cfg;
  other.final_time = 0.25;
  EXPECT_EQ(config_hash(cfg), config_hash(FlowConfig{}));
  EXPECT_NE(config_hash(cfg), config_hash(other));
  EXPECT_EQ(parse_flow_kind("transport"), FlowKind::transport);
  EXPECT_THROW(parse_flow_kind("heat"), PreconditionError);
}

TEST(FlowConfig, TrajectoryRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "besov_traj_test";
  std::filesystem::remove_all(dir);
  const auto cfg = burgers_config(32, 0.5, 2);
  const auto tr = run_flow(sine(32, 0.1), cfg);
  write_trajectory(dir, tr, cfg);
  for (std::size_t k = 0; k < tr.nodes(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "state_%04zu.gfn", k);
    EXPECT_EQ(read_grid_file(dir / name).values(), tr.states[k].values());
  }
  const auto manifest = Json::parse(read_text_file(dir / "manifest.json"));
  EXPECT_EQ(manifest.at("schema_version").get<int>(), 1);
  EXPECT_EQ(manifest.at("files").size(), tr.nodes());
  std::filesystem::remove_all(dir);
}

TEST(Experiment, DefaultBurgersPasses) {
  const auto ex = build_experiment(ExperimentConfig{});
  const auto res = run_experiment(ex);
  for (const auto& f : res.failures) ADD_FAILURE() << f.check << ": " << f.detail;
  ASSERT_FALSE(res.convergence.rows.empty());
  for (const auto& row : res.convergence.rows) EXPECT_TRUE(row.holds());
  EXPECT_TRUE(res.continuity.strictly_decreasing);
  EXPECT_LT(sigma_norm(ex.datum, {2.0, Summability(2.0)}), ex.cfg.flow.ball_radius);
  EXPECT_LE(res.sup_sobolev, std::sqrt(3.0) * res.chemin_lerner);
}

TEST(Experiment, SeedsChangeTheFamily) {
  ExperimentConfig a;
  a.flow.grid_size = 32;
  a.samples = 2;
  ExperimentConfig b = a;
  b.seed = 2;
  const auto ea = build_experiment(a), eb = build_experiment(b);
  EXPECT_NE(ea.family[0].block_norms(), eb.family[0].block_norms());
  EXPECT_EQ(ea.family[0].block_norms(), build_experiment(a).family[0].block_norms());
}
