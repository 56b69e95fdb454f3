#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace besov {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// ============================================================================
// Exponent in [1, +inf]. Infinity is a distinguished state, never a large
// float, so every norm routine has to branch on it explicitly.
// ============================================================================
class Exponent {
 public:
  static Exponent infinity() { return Exponent(); }
  explicit Exponent(double value);

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws PreconditionError on the infinite exponent.
  double value() const;
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Exponent() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

using Summability = Exponent;
using Integrability = Exponent;

/// Parses "inf"/"infinity" or a number >= 1.
Exponent parse_exponent(const std::string& text);

/// l^q norm of a finite list of nonnegative values, computed with a scaling
/// that avoids spurious overflow of the q-th powers.
double lq_norm(std::span<const double> values, Exponent q);

// ============================================================================
// Elements of base spaces
// ============================================================================
enum class ElementKind { scalar, grid_function, time_trajectory };

std::string to_string(ElementKind kind);

/// Flat value-semantic element. Scalars hold one value, grid functions one row
/// of N samples, time trajectories one row of N samples per time node.
class Element {
 public:
  Element() = default;

  static Element scalar(double value);
  static Element grid(std::vector<double> samples);
  static Element trajectory(std::size_t time_nodes, std::vector<double> samples);
  /// Zero element of the same kind and shape.
  static Element zero_like(const Element& other);

  ElementKind kind() const { return kind_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return rows_ == 0 ? 0 : data_.size() / rows_; }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  std::span<const double> row(std::size_t r) const;

  double as_scalar() const;
  bool same_shape(const Element& other) const;
  bool is_zero() const;
  bool is_finite() const;

  Element operator-() const;
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double factor);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(double c, Element a) { return a *= c; }
  friend bool operator==(const Element& a, const Element& b) {
    return a.kind_ == b.kind_ && a.rows_ == b.rows_ && a.data_ == b.data_;
  }

 private:
  Element(ElementKind kind, std::size_t rows, std::vector<double> data)
      : kind_(kind), rows_(rows), data_(std::move(data)) {}
  void require_same_shape(const Element& other) const;

  ElementKind kind_ = ElementKind::scalar;
  std::size_t rows_ = 1;
  std::vector<double> data_ = {0.0};
};

// ============================================================================
// Pseudo-normed spaces: symmetric, subadditive, point-separating functionals.
// ============================================================================
class PseudoNormedSpace {
 public:
  using Functional = std::function<double(const Element&)>;

  /// `cols == 0` accepts any row length.
  PseudoNormedSpace(std::string label, ElementKind kind, Functional eval, std::size_t cols = 0);

  const std::string& label() const { return label_; }
  ElementKind element_kind() const { return kind_; }
  std::size_t cols() const { return cols_; }

  /// Checks the element kind, then evaluates. Throws KindMismatch on a kind
  /// or row-length mismatch and OverflowError on a non-finite result.
  double eval(const Element& x) const;
  void require_member(const Element& x) const;

 private:
  std::string label_;
  ElementKind kind_;
  Functional eval_;
  std::size_t cols_;
};

using SpaceRef = std::shared_ptr<const PseudoNormedSpace>;

double eval_pseudo_norm(const PseudoNormedSpace& space, const Element& x);

/// |x| on the reals.
SpaceRef scalar_abs_space();
/// Discrete L^p on the 2*pi torus with uniform quadrature weight length/N.
SpaceRef grid_lp_space(std::size_t grid_size, Integrability p, double length = kTwoPi);
SpaceRef grid_l2_space(std::size_t grid_size, double length = kTwoPi);
/// L^mu((0,T); L^2): spatial L^2 per time node, then composite trapezoid rule
/// in time (exact max over nodes for mu = inf). Elements have `time_nodes` rows.
SpaceRef trajectory_space(std::size_t time_nodes, std::size_t grid_size, double final_time,
                          Integrability mu, double length = kTwoPi);

/// Quadrature-weighted discrete L^p norm of samples.
double discrete_lp_norm(std::span<const double> samples, Integrability p, double length = kTwoPi);

// ============================================================================
// Graded families of seminorms rho_1 <= rho_2 <= ... and the local
// pseudo-norm sum_n 2^{-n} rho_n / (1 + rho_n).
// ============================================================================
class GradedSeminormFamily {
 public:
  /// rho(x, n) for n = 1..depth. When `stationary`, rho_n = rho_depth for all
  /// n > depth and the remaining geometric tail is summed in closed form.
  using Seminorm = std::function<double(const Element&, std::size_t)>;

  GradedSeminormFamily(std::size_t depth, Seminorm rho, bool stationary = false);

  std::size_t depth() const { return depth_; }
  bool stationary() const { return stationary_; }
  double seminorm(const Element& x, std::size_t n) const;

 private:
  std::size_t depth_;
  Seminorm rho_;
  bool stationary_;
};

double local_pseudo_norm(const GradedSeminormFamily& family, const Element& x);
/// rho_n(x) <= rho_{n+1}(x) for every n < depth.
bool is_graded_at(const GradedSeminormFamily& family, const Element& x);

/// L^2 seminorms over growing windows [0, 2*pi*n/depth) of the torus grid;
/// the last window is the whole torus, so the family separates points.
GradedSeminormFamily windowed_l2_family(std::size_t grid_size, std::size_t depth);
SpaceRef local_space(std::string label, GradedSeminormFamily family, ElementKind kind);

// ============================================================================
// Randomized axiom probe
// ============================================================================
using ElementSampler = std::function<Element(std::mt19937_64&)>;

struct AxiomViolation {
  std::size_t trial;
  std::string axiom;  // "nonnegativity", "symmetry", "subadditivity", "point_separation"
  double lhs;
  double rhs;
};

struct AxiomReport {
  std::string space;
  std::size_t trials = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr double kSubadditivityTolerance = 1e-12;

AxiomReport axiom_probe(const PseudoNormedSpace& space, const ElementSampler& sampler,
                        std::size_t trials, std::uint64_t seed);

}  // namespace besov
