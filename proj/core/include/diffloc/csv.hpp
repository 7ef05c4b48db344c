#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "diffloc/graph.hpp"

namespace diffloc {

/// Splits one CSV record. Supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Parses a finite double; throws InputError mentioning `what` otherwise.
double parse_double(std::string_view text, std::string_view what);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line number, fields)
};

/// Reads a whole CSV file. Blank lines are skipped and every record must
/// have as many fields as the header.
CsvTable read_csv(const std::filesystem::path& path);

/// "path:line: " prefix for error messages.
std::string csv_location(const std::filesystem::path& path, std::size_t line);

/// Node CSV: header `id,population,longitude,latitude[,cluster_label]`.
NodeTable read_node_csv(const std::filesystem::path& path);

/// Edge CSV: header `source,target,intensity[,duration_seconds]`.
std::vector<RawInteraction> read_edge_csv(const std::filesystem::path& path);

/// Ground-truth labels CSV: header `node_id,cluster`.
std::vector<std::pair<NodeId, std::string>> read_label_csv(const std::filesystem::path& path);

/// Row-oriented CSV text builder; fields containing separators are quoted.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);

  CsvBuilder& field(std::string_view text);
  CsvBuilder& field(double value);
  CsvBuilder& field(std::size_t value);
  void end_row();

  std::size_t rows() const noexcept { return rows_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
  bool row_open_ = false;
  std::size_t rows_ = 0;
};

/// Writes through a sibling temporary file and renames it into place, so a
/// reader sees either the complete file or none.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace diffloc
