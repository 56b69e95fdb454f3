#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace besov {

using Json = nlohmann::ordered_json;

/// 17 significant digits ("%.17g"); non-finite values print as nan/inf.
std::string format_double(double x);

/// Serializes with every floating-point number at 17 significant digits.
/// Non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);

/// Minimal CSV table; fields are written verbatim, numbers via format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  class Row {
   public:
    Row& add(double x);
    Row& add(long long x);
    Row& add(unsigned long long x);
    Row& add(int x) { return add(static_cast<long long>(x)); }
    Row& add(long x) { return add(static_cast<long long>(x)); }
    Row& add(unsigned long x) { return add(static_cast<unsigned long long>(x)); }
    Row& add(const std::string& field);

   private:
    friend class CsvTable;
    std::vector<std::string> fields_;
  };

  Row& row();
  std::size_t size() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

/// Writes the whole file; throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace besov
