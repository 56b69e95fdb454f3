#include "besov/pseudo_norm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "besov/errors.hpp"

namespace besov {

// ----------------------------------------------------------------------------
// Exponent
// ----------------------------------------------------------------------------
Exponent::Exponent(double value) : value_(value), infinite_(false) {
  if (!std::isfinite(value) || value < 1.0) {
    throw PreconditionError("exponent must be a finite number >= 1 or infinity");
  }
}

double Exponent::value() const {
  if (infinite_) throw PreconditionError("infinite exponent has no finite value");
  return value_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

Exponent parse_exponent(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "infinity") return Exponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw PreconditionError("cannot parse exponent '" + text + "'");
  }
  if (used != text.size()) throw PreconditionError("cannot parse exponent '" + text + "'");
  return Exponent(v);
}

double lq_norm(std::span<const double> values, Exponent q) {
  double peak = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw PreconditionError("lq_norm expects nonnegative values");
    peak = std::max(peak, v);
  }
  if (!std::isfinite(peak)) throw OverflowError("l^q norm: non-finite entry");
  if (peak == 0.0 || q.is_infinite()) return peak;
  const double p = q.value();
  double acc = 0.0;
  for (double v : values) acc += std::pow(v / peak, p);
  const double out = peak * std::pow(acc, 1.0 / p);
  if (!std::isfinite(out)) throw OverflowError("l^q norm overflow");
  return out;
}

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::scalar: return "scalar";
    case ElementKind::grid_function: return "grid_function";
    case ElementKind::time_trajectory: return "time_trajectory";
  }
  return "unknown";
}

// ----------------------------------------------------------------------------
// Element
// ----------------------------------------------------------------------------
Element Element::scalar(double value) { return Element(ElementKind::scalar, 1, {value}); }

Element Element::grid(std::vector<double> samples) {
  if (samples.empty()) throw PreconditionError("grid element needs samples");
  return Element(ElementKind::grid_function, 1, std::move(samples));
}

Element Element::trajectory(std::size_t time_nodes, std::vector<double> samples) {
  if (time_nodes == 0 || samples.empty() || samples.size() % time_nodes != 0) {
    throw PreconditionError("trajectory element: sample count must be a multiple of time nodes");
  }
  return Element(ElementKind::time_trajectory, time_nodes, std::move(samples));
}

Element Element::zero_like(const Element& other) {
  return Element(other.kind_, other.rows_, std::vector<double>(other.data_.size(), 0.0));
}

std::span<const double> Element::row(std::size_t r) const {
  if (r >= rows_) throw PreconditionError("element row out of range");
  const std::size_t c = cols();
  return std::span<const double>(data_).subspan(r * c, c);
}

double Element::as_scalar() const {
  if (kind_ != ElementKind::scalar) throw KindMismatch("element is not a scalar");
  return data_.front();
}

bool Element::same_shape(const Element& other) const {
  return kind_ == other.kind_ && rows_ == other.rows_ && data_.size() == other.data_.size();
}

bool Element::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

bool Element::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void Element::require_same_shape(const Element& other) const {
  if (!same_shape(other)) {
    throw KindMismatch("element shape mismatch: " + to_string(kind_) + " vs " +
                       to_string(other.kind_));
  }
}

Element Element::operator-() const {
  Element out(*this);
  for (double& v : out.data_) v = -v;
  return out;
}

Element& Element::operator+=(const Element& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Element& Element::operator*=(double factor) {
  for (double& v : data_) v *= factor;
  return *this;
}

// ----------------------------------------------------------------------------
// Spaces
// ----------------------------------------------------------------------------
PseudoNormedSpace::PseudoNormedSpace(std::string label, ElementKind kind, Functional eval,
                                     std::size_t cols)
    : label_(std::move(label)), kind_(kind), eval_(std::move(eval)), cols_(cols) {
  if (!eval_) throw PreconditionError("pseudo-normed space needs an evaluation functional");
}

void PseudoNormedSpace::require_member(const Element& x) const {
  if (x.kind() != kind_) {
    throw KindMismatch("space '" + label_ + "' holds " + to_string(kind_) + ", got " +
                       to_string(x.kind()));
  }
  if (cols_ != 0 && x.cols() != cols_) {
    throw KindMismatch("space '" + label_ + "' expects rows of length " + std::to_string(cols_) +
                       ", got " + std::to_string(x.cols()));
  }
}

double PseudoNormedSpace::eval(const Element& x) const {
  require_member(x);
  const double v = eval_(x);
  if (std::isnan(v)) throw PreconditionError("pseudo-norm of '" + label_ + "' returned NaN");
  if (std::isinf(v)) throw OverflowError("pseudo-norm of '" + label_ + "' overflowed");
  return v;
}

double eval_pseudo_norm(const PseudoNormedSpace& space, const Element& x) { return space.eval(x); }

double discrete_lp_norm(std::span<const double> samples, Integrability p, double length) {
  if (samples.empty()) return 0.0;
  const double weight = length / static_cast<double>(samples.size());
  double peak = 0.0;
  for (double v : samples) {
    if (std::isnan(v)) return v;
    peak = std::max(peak, std::abs(v));
  }
  if (p.is_infinite() || peak == 0.0 || std::isinf(peak)) return peak;
  const double e = p.value();
  double acc = 0.0;
  if (e == 2.0) {
    for (double v : samples) acc += (v / peak) * (v / peak);
    return peak * std::sqrt(weight * acc);
  }
  for (double v : samples) acc += std::pow(std::abs(v) / peak, e);
  return peak * std::pow(weight * acc, 1.0 / e);
}

SpaceRef scalar_abs_space() {
  static const SpaceRef space = std::make_shared<const PseudoNormedSpace>(
      "abs", ElementKind::scalar, [](const Element& x) { return std::abs(x.as_scalar()); });
  return space;
}

SpaceRef grid_lp_space(std::size_t grid_size, Integrability p, double length) {
  return std::make_shared<const PseudoNormedSpace>(
      "L" + p.to_string() + "(T," + std::to_string(grid_size) + ")", ElementKind::grid_function,
      [p, length](const Element& x) { return discrete_lp_norm(x.data(), p, length); }, grid_size);
}

SpaceRef grid_l2_space(std::size_t grid_size, double length) {
  return grid_lp_space(grid_size, Exponent(2.0), length);
}

SpaceRef trajectory_space(std::size_t time_nodes, std::size_t grid_size, double final_time,
                          Integrability mu, double length) {
  if (time_nodes < 2) throw PreconditionError("trajectory space needs at least two time nodes");
  if (!(final_time > 0.0)) throw PreconditionError("trajectory space needs T > 0");
  const double dt = final_time / static_cast<double>(time_nodes - 1);
  auto eval = [time_nodes, mu, dt, length](const Element& x) {
    if (x.rows() != time_nodes) throw KindMismatch("trajectory has wrong number of time nodes");
    std::vector<double> slice_norms(time_nodes);
    for (std::size_t k = 0; k < time_nodes; ++k) {
      slice_norms[k] = discrete_lp_norm(x.row(k), Exponent(2.0), length);
    }
    double peak = *std::max_element(slice_norms.begin(), slice_norms.end());
    if (mu.is_infinite() || peak == 0.0) return peak;
    const double e = mu.value();
    double acc = 0.0;
    for (std::size_t k = 0; k < time_nodes; ++k) {
      const double w = (k == 0 || k + 1 == time_nodes) ? 0.5 * dt : dt;
      acc += w * std::pow(slice_norms[k] / peak, e);
    }
    return peak * std::pow(acc, 1.0 / e);
  };
  std::ostringstream label;
  label.precision(17);
  label << "L" << mu.to_string() << "(0," << final_time << ";L2(T," << grid_size << "))["
        << time_nodes << " nodes]";
  return std::make_shared<const PseudoNormedSpace>(label.str(), ElementKind::time_trajectory, eval,
                                                   grid_size);
}

// ----------------------------------------------------------------------------
// Graded families
// ----------------------------------------------------------------------------
GradedSeminormFamily::GradedSeminormFamily(std::size_t depth, Seminorm rho, bool stationary)
    : depth_(depth), rho_(std::move(rho)), stationary_(stationary) {
  if (depth_ == 0) throw PreconditionError("seminorm family must be nonempty");
  if (!rho_) throw PreconditionError("seminorm family needs a seminorm");
}

double GradedSeminormFamily::seminorm(const Element& x, std::size_t n) const {
  if (n == 0) throw PreconditionError("seminorms are indexed from 1");
  const double v = rho_(x, std::min(n, depth_));
  if (!std::isfinite(v) || v < 0.0) {
    throw PreconditionError("seminorm " + std::to_string(n) + " is not a finite nonnegative value");
  }
  return v;
}

double local_pseudo_norm(const GradedSeminormFamily& family, const Element& x) {
  double acc = 0.0;
  double weight = 0.5;
  double last = 0.0;
  for (std::size_t n = 1; n <= family.depth(); ++n, weight *= 0.5) {
    last = family.seminorm(x, n);
    acc += weight * last / (1.0 + last);
  }
  // sum_{n > depth} 2^{-n} = 2^{-depth}
  if (family.stationary()) acc += 2.0 * weight * last / (1.0 + last);
  return acc;
}

bool is_graded_at(const GradedSeminormFamily& family, const Element& x) {
  for (std::size_t n = 1; n < family.depth(); ++n) {
    if (family.seminorm(x, n) > family.seminorm(x, n + 1)) return false;
  }
  return true;
}

GradedSeminormFamily windowed_l2_family(std::size_t grid_size, std::size_t depth) {
  if (grid_size == 0 || depth == 0 || depth > grid_size) {
    throw PreconditionError("windowed family needs 1 <= depth <= grid size");
  }
  auto rho = [grid_size, depth](const Element& x, std::size_t n) {
    if (x.cols() != grid_size) throw KindMismatch("windowed seminorm: grid size mismatch");
    const std::size_t width = (grid_size * n) / depth;
    const double weight = kTwoPi / static_cast<double>(grid_size);
    double acc = 0.0;
    for (std::size_t i = 0; i < width; ++i) acc += x.data()[i] * x.data()[i];
    return std::sqrt(weight * acc);
  };
  return GradedSeminormFamily(depth, rho, true);
}

SpaceRef local_space(std::string label, GradedSeminormFamily family, ElementKind kind) {
  return std::make_shared<const PseudoNormedSpace>(
      std::move(label), kind,
      [family = std::move(family)](const Element& x) { return local_pseudo_norm(family, x); });
}

// ----------------------------------------------------------------------------
// Axiom probe
// ----------------------------------------------------------------------------
AxiomReport axiom_probe(const PseudoNormedSpace& space, const ElementSampler& sampler,
                        std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw PreconditionError("axiom probe needs at least one trial");
  AxiomReport report;
  report.space = space.label();
  report.trials = trials;
  std::mt19937_64 rng(seed);
  auto flag = [&report](std::size_t t, const char* axiom, double lhs, double rhs) {
    report.violations.push_back({t, axiom, lhs, rhs});
  };
  // Evaluation failures of a broken functional are recorded, not propagated.
  for (std::size_t t = 0; t < trials; ++t) {
    const Element x = sampler(rng);
    const Element y = sampler(rng);
    double nx, ny, nneg, nsum, nzero;
    try {
      nx = space.eval(x);
      ny = space.eval(y);
      nneg = space.eval(-x);
      nsum = space.eval(x + y);
      nzero = space.eval(Element::zero_like(x));
    } catch (const std::exception&) {
      flag(t, "evaluation", 0.0, 0.0);
      continue;
    }
    if (nx < 0.0) flag(t, "nonnegativity", nx, 0.0);
    if (ny < 0.0) flag(t, "nonnegativity", ny, 0.0);
    const double scale = std::abs(nx) + std::abs(ny);
    if (std::abs(nneg - nx) > kSubadditivityTolerance * std::max(std::abs(nx), std::abs(nneg))) {
      flag(t, "symmetry", nneg, nx);
    }
    if (nsum > nx + ny + kSubadditivityTolerance * scale) flag(t, "subadditivity", nsum, nx + ny);
    if (nzero != 0.0) flag(t, "point_separation", nzero, 0.0);
    if (!x.is_zero() && nx == 0.0) flag(t, "point_separation", nx, 0.0);
  }
  return report;
}

}  // namespace besov
