#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <vector>

#include "besov/pseudo_norm.hpp"

namespace besov {

/// True when n = 2^m with m >= 3.
bool is_valid_grid_size(std::size_t n);
/// m with n = 2^m; throws PreconditionError unless is_valid_grid_size(n).
std::size_t grid_exponent(std::size_t n);

// ============================================================================
// Real samples u(x_i), x_i = 2*pi*i/N, of a periodic function on the torus.
// ============================================================================
class GridFunction {
 public:
  explicit GridFunction(std::vector<double> values);
  static GridFunction zero(std::size_t grid_size);
  static GridFunction sample(std::size_t grid_size, const std::function<double(double)>& f);
  static GridFunction from_element(const Element& e);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double node(std::size_t i) const;
  Element as_element() const { return Element::grid(values_); }

  double max_abs() const;
  double mean() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c);
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(double c, GridFunction a) { return a *= c; }

 private:
  std::vector<double> values_;
};

/// max_i |a_i - b_i|.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

// ----------------------------------------------------------------------------
// File formats. Binary: magic "GFN1\0\0\0\0", u64 LE grid size, then f64 LE
// samples. CSV: one "index,value" line per node, optional header line.
// ----------------------------------------------------------------------------
void write_grid_binary(const std::filesystem::path& path, const GridFunction& u);
GridFunction read_grid_binary(const std::filesystem::path& path);
void write_grid_csv(const std::filesystem::path& path, const GridFunction& u);
GridFunction read_grid_csv(const std::filesystem::path& path);
/// Binary when the file starts with the magic, CSV otherwise.
GridFunction read_grid_file(const std::filesystem::path& path);

}  // namespace besov
