#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "besov/errors.hpp"
#include "besov/pseudo_norm.hpp"

using namespace besov;

namespace {

// Quadrature-weighted Euclidean norm written out by hand.
double l2_oracle(const std::vector<double>& v, double length = kTwoPi) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc * length / static_cast<double>(v.size()));
}

Element random_grid(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return Element::grid(v);
}

}  // namespace

TEST(Exponent, ParsesInfinityAndRejectsBelowOne) {
  EXPECT_TRUE(parse_exponent("inf").is_infinite());
  EXPECT_TRUE(parse_exponent("infinity").is_infinite());
  EXPECT_DOUBLE_EQ(parse_exponent("2").value(), 2.0);
  EXPECT_THROW(parse_exponent("0.5"), PreconditionError);
  EXPECT_THROW(Exponent::infinity().value(), PreconditionError);
  EXPECT_EQ(Exponent::infinity().to_string(), "inf");
}

TEST(LqNorm, MatchesDirectSumAndSup) {
  const std::vector<double> v{3.0, 4.0};
  EXPECT_DOUBLE_EQ(lq_norm(v, Exponent(2.0)), 5.0);
  EXPECT_DOUBLE_EQ(lq_norm(v, Exponent(1.0)), 7.0);
  EXPECT_DOUBLE_EQ(lq_norm(v, Exponent::infinity()), 4.0);
  // scaling by the peak keeps huge entries finite
  const std::vector<double> big{1e300, 1e300};
  EXPECT_NEAR(lq_norm(big, Exponent(2.0)) / 1e300, std::sqrt(2.0), 1e-15);
}

TEST(ScalarSpace, AbsoluteValue) {
  const auto abs = scalar_abs_space();
  EXPECT_EQ(abs->eval(Element::scalar(0.0)), 0.0);
  EXPECT_EQ(abs->eval(Element::scalar(-3.0)), 3.0);
}

TEST(GridSpace, ConstantOneOnEightPoints) {
  const auto l2 = grid_l2_space(8);
  const std::vector<double> ones(8, 1.0);
  EXPECT_NEAR(l2->eval(Element::grid(ones)), std::sqrt(2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(l2->eval(Element::grid(ones)), l2_oracle(ones), 1e-15);
}

TEST(GridSpace, MatchesOracleOnRandomSamples) {
  std::mt19937_64 rng(7);
  const auto l2 = grid_l2_space(64);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_grid(rng, 64);
    const std::vector<double> v(x.data().begin(), x.data().end());
    EXPECT_NEAR(l2->eval(x), l2_oracle(v), 1e-13 * l2_oracle(v));
  }
}

TEST(GridSpace, LinfAndL1) {
  const std::vector<double> v{1.0, -2.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(discrete_lp_norm(v, Exponent::infinity()), 2.0);
  EXPECT_NEAR(discrete_lp_norm(v, Exponent(1.0)), 3.5 * kTwoPi / 8.0, 1e-15);
}

TEST(GridSpace, KindAndShapeMismatch) {
  const auto l2 = grid_l2_space(8);
  EXPECT_THROW(l2->eval(Element::scalar(1.0)), KindMismatch);
  EXPECT_THROW(l2->eval(Element::grid(std::vector<double>(16, 1.0))), KindMismatch);
  EXPECT_THROW(scalar_abs_space()->eval(Element::grid(std::vector<double>(8, 1.0))), KindMismatch);
}

TEST(GridSpace, OverflowIsReported) {
  const auto l2 = grid_l2_space(8);
  std::vector<double> v(8, 0.0);
  v[0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(l2->eval(Element::grid(v)), OverflowError);
}

TEST(TrajectorySpace, SupAndTrapezoid) {
  // two nodes, constant grid rows of height 1 and 2
  std::vector<double> samples(16, 1.0);
  for (std::size_t i = 8; i < 16; ++i) samples[i] = 2.0;
  const auto x = Element::trajectory(2, samples);
  const double a = std::sqrt(kTwoPi), b = 2.0 * std::sqrt(kTwoPi);
  const auto sup = trajectory_space(2, 8, 1.0, Exponent::infinity());
  EXPECT_NEAR(sup->eval(x), b, 1e-14);
  const auto l2 = trajectory_space(2, 8, 1.0, Exponent(2.0));
  EXPECT_NEAR(l2->eval(x), std::sqrt(0.5 * (a * a + b * b)), 1e-14);
  // spaces with different time grids are not interchangeable
  EXPECT_NE(trajectory_space(2, 8, 1.0, Exponent(2.0))->label(),
            trajectory_space(2, 8, 2.0, Exponent(2.0))->label());
  EXPECT_THROW(sup->eval(Element::grid(std::vector<double>(8, 1.0))), KindMismatch);
}

TEST(LocalPseudoNorm, ClosedForms) {
  const auto x = Element::scalar(1.0);
  const GradedSeminormFamily zero(4, [](const Element&, std::size_t) { return 0.0; });
  EXPECT_EQ(local_pseudo_norm(zero, x), 0.0);
  const GradedSeminormFamily one(1, [](const Element&, std::size_t) { return 1.0; });
  EXPECT_DOUBLE_EQ(local_pseudo_norm(one, x), 0.25);
  const GradedSeminormFamily all(3, [](const Element&, std::size_t) { return 1.0; }, true);
  EXPECT_NEAR(local_pseudo_norm(all, x), 0.5, 1e-15);
}

TEST(LocalPseudoNorm, WindowedFamilyIsGradedAndBelowOne) {
  std::mt19937_64 rng(11);
  const auto fam = windowed_l2_family(32, 6);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_grid(rng, 32);
    EXPECT_TRUE(is_graded_at(fam, x));
    const double v = local_pseudo_norm(fam, x);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_EQ(local_pseudo_norm(fam, Element::grid(std::vector<double>(32, 0.0))), 0.0);
}

TEST(LocalPseudoNorm, IsAPseudoNorm) {
  const auto space = local_space("local", windowed_l2_family(16, 4), ElementKind::grid_function);
  const auto rep = axiom_probe(*space, [](std::mt19937_64& r) { return random_grid(r, 16); }, 100, 5);
  EXPECT_TRUE(rep.ok());
}

TEST(AxiomProbe, NormsPass) {
  const auto rep_abs = axiom_probe(
      *scalar_abs_space(),
      [](std::mt19937_64& r) { return Element::scalar(std::normal_distribution<double>()(r)); },
      100, 1);
  EXPECT_TRUE(rep_abs.ok());
  EXPECT_EQ(rep_abs.trials, 100u);
  const auto rep_l2 =
      axiom_probe(*grid_l2_space(32), [](std::mt19937_64& r) { return random_grid(r, 32); }, 100, 2);
  EXPECT_TRUE(rep_l2.ok());
}

TEST(AxiomProbe, SignedEvalIsCaught) {
  const PseudoNormedSpace broken("signed", ElementKind::scalar,
                                 [](const Element& x) { return x.as_scalar(); });
  const auto rep = axiom_probe(
      broken,
      [](std::mt19937_64& r) { return Element::scalar(std::normal_distribution<double>()(r)); },
      10, 3);
  EXPECT_FALSE(rep.ok());
}

TEST(Element, ArithmeticAndShapes) {
  auto a = Element::grid({1.0, 2.0});
  const auto b = Element::grid({0.5, -1.0});
  EXPECT_EQ(a + b, Element::grid({1.5, 1.0}));
  EXPECT_EQ(2.0 * b, Element::grid({1.0, -2.0}));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_THROW(a += Element::scalar(1.0), KindMismatch);
  EXPECT_TRUE(Element::zero_like(a).is_zero());
  EXPECT_EQ(Element::zero_like(a).cols(), 2u);
}
