#include "diffloc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "diffloc/error.hpp"

namespace diffloc {

std::string csv_location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw InputError(csv_location(path, line_no) + "expected " + std::to_string(table.header.size()) +
                       " fields, found " + std::to_string(fields.size()));
    }
    table.rows.emplace_back(line_no, std::move(fields));
  }
  if (table.header.empty()) throw InputError("'" + path.string() + "' is empty");
  return table;
}

namespace {

void expect_header(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const std::vector<std::string>& required, const std::vector<std::string>& optional) {
  bool ok = header.size() >= required.size() && header.size() <= required.size() + optional.size();
  for (std::size_t i = 0; ok && i < header.size(); ++i) {
    const std::string& want = i < required.size() ? required[i] : optional[i - required.size()];
    ok = header[i] == want;
  }
  if (!ok) {
    std::string expected;
    for (const auto& h : required) expected += (expected.empty() ? "" : ",") + h;
    for (const auto& h : optional) expected += "[," + h + "]";
    throw InputError(csv_location(path, 1) + "unexpected header, expected '" + expected + "'");
  }
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_double(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw InputError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

NodeTable read_node_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  expect_header(path, table.header, {"id", "population", "longitude", "latitude"}, {"cluster_label"});
  const bool has_label = table.header.size() == 5;
  std::vector<NodeMeta> nodes;
  nodes.reserve(table.rows.size());
  for (auto& [line, f] : table.rows) {
    try {
      NodeMeta node;
      node.id = f[0];
      node.population = parse_double(f[1], "population");
      node.longitude = parse_double(f[2], "longitude");
      node.latitude = parse_double(f[3], "latitude");
      if (has_label && !f[4].empty()) node.cluster_label = f[4];
      nodes.push_back(std::move(node));
    } catch (const InputError& e) {
      throw InputError(csv_location(path, line) + e.what());
    }
  }
  try {
    return NodeTable(std::move(nodes));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<RawInteraction> read_edge_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  expect_header(path, table.header, {"source", "target", "intensity"}, {"duration_seconds"});
  const bool has_duration = table.header.size() == 4;
  std::vector<RawInteraction> records;
  records.reserve(table.rows.size());
  for (auto& [line, f] : table.rows) {
    try {
      RawInteraction r;
      r.source = f[0];
      r.target = f[1];
      r.intensity = parse_double(f[2], "intensity");
      if (r.intensity < 0.0) throw InputError("negative intensity");
      if (has_duration) {
        r.duration_seconds = parse_double(f[3], "duration_seconds");
        if (*r.duration_seconds < 0.0) throw InputError("negative duration_seconds");
      }
      records.push_back(std::move(r));
    } catch (const InputError& e) {
      throw InputError(csv_location(path, line) + e.what());
    }
  }
  return records;
}

std::vector<std::pair<NodeId, std::string>> read_label_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  expect_header(path, table.header, {"node_id", "cluster"}, {});
  std::vector<std::pair<NodeId, std::string>> labels;
  labels.reserve(table.rows.size());
  for (auto& [line, f] : table.rows) labels.emplace_back(std::move(f[0]), std::move(f[1]));
  return labels;
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) {
  for (const auto& h : header) field(h);
  end_row();
  rows_ = 0;
}

CsvBuilder& CsvBuilder::field(std::string_view text) {
  if (row_open_) text_.push_back(',');
  row_open_ = true;
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    text_.append(text);
    return *this;
  }
  text_.push_back('"');
  for (char c : text) {
    if (c == '"') text_.push_back('"');
    text_.push_back(c);
  }
  text_.push_back('"');
  return *this;
}

CsvBuilder& CsvBuilder::field(double value) { return field(std::string_view(format_double(value))); }

CsvBuilder& CsvBuilder::field(std::size_t value) { return field(std::string_view(std::to_string(value))); }

void CsvBuilder::end_row() {
  text_.push_back('\n');
  row_open_ = false;
  ++rows_;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw InputError("failed writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace diffloc
