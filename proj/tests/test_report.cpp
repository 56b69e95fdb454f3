#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "besov/errors.hpp"
#include "besov/grid.hpp"
#include "besov/report.hpp"
#include "besov/sampling.hpp"

using namespace besov;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "besov_report_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Format, SeventeenDigitsRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  Rng rng(61);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Json, NumbersAndNonFinite) {
  Json j{{"a", 0.1}, {"b", std::nan("")}, {"c", 3}, {"d", std::vector<double>{1.5}}};
  const auto text = dump_json(j);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(text.find("\"b\": null"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  const auto back = Json::parse(text);
  EXPECT_EQ(back.at("a").get<double>(), 0.1);
  EXPECT_EQ(back.at("c").get<int>(), 3);
  EXPECT_EQ(dump_json(Json{{"x", 1}}, -1), "{\"x\":1}\n");
}

TEST(Json, KeyOrderIsInsertionOrder) {
  Json j;
  j["z"] = 1;
  j["a"] = 2;
  EXPECT_EQ(dump_json(j, -1), "{\"z\":1,\"a\":2}\n");
}

TEST(Csv, RowsAndTypes) {
  CsvTable t({"n", "x", "label"});
  t.row().add(std::size_t{3}).add(0.5).add(std::string("ok"));
  t.row().add(-2).add(1e-300).add(std::string("b"));
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.str(), "n,x,label\n3,0.5,ok\n-2,1e-300,b\n");
}

TEST(TextFiles, RoundTripAndErrors) {
  const auto p = scratch("t.txt");
  write_text_file(p, "hello\n");
  EXPECT_EQ(read_text_file(p), "hello\n");
  EXPECT_THROW(read_text_file(scratch("missing.txt")), IoError);
  EXPECT_THROW(write_text_file("/proc/nonexistent/dir/x", "a"), IoError);
}

TEST(GridIO, BinaryIsBitExact) {
  Rng rng(62);
  const auto u = random_grid_function(rng, 64);
  const auto p = scratch("u.gfn");
  write_grid_binary(p, u);
  EXPECT_EQ(std::filesystem::file_size(p), 8u + 8u + 64u * 8u);
  EXPECT_EQ(read_grid_binary(p).values(), u.values());
  EXPECT_EQ(read_grid_file(p).values(), u.values());
}

TEST(GridIO, CsvRoundTrip) {
  Rng rng(63);
  const auto u = random_grid_function(rng, 16);
  const auto p = scratch("u.csv");
  write_grid_csv(p, u);
  EXPECT_EQ(read_grid_csv(p).values(), u.values());
  EXPECT_EQ(read_grid_file(p).values(), u.values());
  std::ofstream(scratch("noheader.csv")) << "0,1\n1,2\n2,3\n3,4\n4,5\n5,6\n6,7\n7,8\n";
  EXPECT_EQ(read_grid_file(scratch("noheader.csv"))[7], 8.0);
}

TEST(GridIO, MalformedInputs) {
  std::ofstream(scratch("bad_magic.gfn"), std::ios::binary) << "GFN2xxxxxxxxxxxxxxx";
  EXPECT_THROW(read_grid_binary(scratch("bad_magic.gfn")), FormatError);
  {
    std::ofstream out(scratch("short.gfn"), std::ios::binary);
    out.write("GFN1\0\0\0\0", 8);
    const std::uint64_t n = 8;
    out.write(reinterpret_cast<const char*>(&n), 8);
    const double x = 1.0;
    out.write(reinterpret_cast<const char*>(&x), 8);
  }
  EXPECT_THROW(read_grid_binary(scratch("short.gfn")), FormatError);
  std::ofstream(scratch("bad.csv")) << "index,value\n0,abc\n";
  EXPECT_THROW(read_grid_csv(scratch("bad.csv")), FormatError);
  std::ofstream(scratch("six.csv")) << "0,1\n1,1\n2,1\n3,1\n4,1\n5,1\n";
  EXPECT_THROW(read_grid_file(scratch("six.csv")), FormatError);
  EXPECT_THROW(read_grid_file(scratch("nothing.gfn")), IoError);
}

TEST(Grid, SizesAndSampling) {
  EXPECT_TRUE(is_valid_grid_size(8));
  EXPECT_FALSE(is_valid_grid_size(4));
  EXPECT_FALSE(is_valid_grid_size(24));
  EXPECT_EQ(grid_exponent(256), 8u);
  const auto u = GridFunction::sample(8, [](double x) { return x; });
  EXPECT_DOUBLE_EQ(u[2], u.node(2));
  EXPECT_DOUBLE_EQ(u.node(4), std::acos(-1.0));
  EXPECT_DOUBLE_EQ(GridFunction::sample(8, [](double) { return 2.0; }).mean(), 2.0);
}
