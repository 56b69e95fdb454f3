#include "besov/grid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "besov/errors.hpp"

namespace besov {

namespace {
constexpr std::array<char, 8> kMagic = {'G', 'F', 'N', '1', '\0', '\0', '\0', '\0'};

static_assert(std::endian::native == std::endian::little,
              "grid file IO assumes a little-endian host");
}  // namespace

bool is_valid_grid_size(std::size_t n) { return n >= 8 && std::has_single_bit(n); }

std::size_t grid_exponent(std::size_t n) {
  if (!is_valid_grid_size(n)) {
    throw PreconditionError("grid size must be 2^m with m >= 3, got " + std::to_string(n));
  }
  return static_cast<std::size_t>(std::countr_zero(n));
}

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  (void)grid_exponent(values_.size());
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("grid function has non-finite samples");
  }
}

GridFunction GridFunction::zero(std::size_t grid_size) {
  return GridFunction(std::vector<double>(grid_size, 0.0));
}

GridFunction GridFunction::sample(std::size_t grid_size, const std::function<double(double)>& f) {
  (void)grid_exponent(grid_size);
  std::vector<double> v(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    v[i] = f(kTwoPi * static_cast<double>(i) / static_cast<double>(grid_size));
  }
  return GridFunction(std::move(v));
}

GridFunction GridFunction::from_element(const Element& e) {
  if (e.kind() != ElementKind::grid_function) {
    throw KindMismatch("expected a grid_function element, got " + to_string(e.kind()));
  }
  return GridFunction(std::vector<double>(e.data().begin(), e.data().end()));
}

double GridFunction::node(std::size_t i) const {
  return kTwoPi * static_cast<double>(i) / static_cast<double>(values_.size());
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::mean() const {
  double acc = 0.0;
  for (double v : values_) acc += v;
  return acc / static_cast<double>(values_.size());
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (other.size() != size()) throw PreconditionError("grid size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (other.size() != size()) throw PreconditionError("grid size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw PreconditionError("grid size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ----------------------------------------------------------------------------
// IO
// ----------------------------------------------------------------------------
void write_grid_binary(const std::filesystem::path& path, const GridFunction& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  const std::uint64_t n = u.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(u.values().data()),
            static_cast<std::streamsize>(u.size() * sizeof(double)));
  if (!out) throw IoError("write failed for " + path.string());
}

GridFunction read_grid_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError(path.string() + ": bad grid file magic");
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw FormatError(path.string() + ": truncated header");
  if (!is_valid_grid_size(static_cast<std::size_t>(n))) {
    throw FormatError(path.string() + ": invalid grid size " + std::to_string(n));
  }
  std::vector<double> v(static_cast<std::size_t>(n));
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw FormatError(path.string() + ": truncated samples");
  try {
    return GridFunction(std::move(v));
  } catch (const PreconditionError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_grid_csv(const std::filesystem::path& path, const GridFunction& u) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "index,value\n";
  for (std::size_t i = 0; i < u.size(); ++i) out << i << ',' << u[i] << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

GridFunction read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected index,value");
    }
    std::size_t index = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      index = std::stoul(line.substr(0, comma), &used);
      const std::string rest = line.substr(comma + 1);
      value = std::stod(rest, &used);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": unparsable row");
    }
    if (index != v.size()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": indices must be 0,1,2,...");
    }
    v.push_back(value);
  }
  try {
    return GridFunction(std::move(v));
  } catch (const PreconditionError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

GridFunction read_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == static_cast<std::streamsize>(head.size()) && head == kMagic;
  in.close();
  return binary ? read_grid_binary(path) : read_grid_csv(path);
}

}  // namespace besov
