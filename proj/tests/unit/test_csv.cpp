#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "diffloc/csv.hpp"
#include "diffloc/error.hpp"
#include "diffloc/rng.hpp"

using namespace diffloc;

namespace {

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Csv, SplitHandlesQuotes) {
  const auto f = split_csv_line(R"(a,"b,c","say ""hi""",)");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[1], "b,c");
  EXPECT_EQ(f[2], "say \"hi\"");
  EXPECT_EQ(f[3], "");
}

TEST(Csv, FormatDoubleRoundTrips) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.below(200)) - 100);
    EXPECT_EQ(parse_double(format_double(x), "x"), x);
  }
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Csv, ParseDoubleRejectsGarbage) {
  EXPECT_THROW(parse_double("1.5x", "v"), InputError);
  EXPECT_THROW(parse_double("", "v"), InputError);
  EXPECT_THROW(parse_double("nan", "v"), InputError);
}

TEST(Csv, MalformedLineIsReported) {
  const std::string msg = error_of([] { read_edge_csv(DIFFLOC_TEST_DATA "/bad_edges.csv"); });
  EXPECT_NE(msg.find("bad_edges.csv:3"), std::string::npos) << msg;
}

TEST(Csv, MissingFileNamesPath) {
  const std::string msg = error_of([] { read_node_csv("/nonexistent/where.csv"); });
  EXPECT_NE(msg.find("/nonexistent/where.csv"), std::string::npos) << msg;
}

TEST(Csv, WrongHeaderRejected) {
  const std::string msg = error_of([] { read_node_csv(DIFFLOC_TEST_DATA "/three_edges.csv"); });
  EXPECT_NE(msg.find(":1:"), std::string::npos) << msg;
}

TEST(Csv, CallRecordsCarryDuration) {
  const auto records = read_edge_csv(DIFFLOC_TEST_DATA "/calls.csv");
  ASSERT_EQ(records.size(), 6u);
  ASSERT_TRUE(records[0].duration_seconds.has_value());
  EXPECT_EQ(*records[1].duration_seconds, 90.0);
}

TEST(Csv, BuilderCountsRowsAndQuotes) {
  CsvBuilder b({"name", "value"});
  b.field(std::string_view("x,y")).field(1.25);
  b.end_row();
  b.field(std::string_view("z")).field(std::size_t{3});
  b.end_row();
  EXPECT_EQ(b.rows(), 2u);
  EXPECT_EQ(b.text(), "name,value\n\"x,y\",1.25\nz,3\n");
}

TEST(Csv, AtomicWriteLeavesNoTemporary) {
  const auto dir = std::filesystem::temp_directory_path() / "diffloc_csv_test";
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "f.txt", "hello\n");
  EXPECT_EQ(read_file(dir / "f.txt"), "hello\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "f.txt.tmp"));
  EXPECT_THROW(write_file_atomic(dir / "missing" / "f.txt", "x"), InputError);
  std::filesystem::remove_all(dir);
}
