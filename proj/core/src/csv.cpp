#include "aegdm/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "aegdm/error.hpp"

namespace aegdm {

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

double parse_real(std::string_view text) {
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError(0, "not a number: '" + std::string(text) + "'");
  }
  return x;
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j > 0) out += ',';
    out += table.header[j];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ',';
      out += format_real(row[j]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (!have_header) {
      for (auto cell : cells) table.header.emplace_back(cell);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(table.header.size()) + " columns, got " +
                                    std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto cell : cells) {
      try {
        row.push_back(parse_real(cell));
      } catch (const ParseError&) {
        throw ParseError(line_no, "not a number: '" + std::string(cell) + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(1, "missing CSV header");
  return table;
}

CsvTable trace_table(const TrajectoryTrace& trace) {
  CsvTable table;
  table.header = {"iter", "f", "grad_norm", "min_r", "step_norm"};
  const bool with_regret = !trace.regret.empty();
  if (with_regret) table.header.emplace_back("regret");
  table.rows.reserve(trace.length());
  for (std::size_t k = 0; k < trace.length(); ++k) {
    const TraceStep& s = trace.steps[k];
    std::vector<double> row{static_cast<double>(s.t), s.value, s.grad_norm, s.min_r, s.step_norm};
    if (with_regret) row.push_back(trace.regret[k]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path) { write_text(path, format_csv(table)); }

void emit_csv(const TrajectoryTrace& trace, const std::filesystem::path& path) { emit_csv(trace_table(trace), path); }

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

CsvTable dataset_table(const Dataset& data) {
  CsvTable table;
  for (Index j = 0; j < data.features(); ++j) table.header.push_back("x" + std::to_string(j));
  table.header.emplace_back("label");
  for (Index i = 0; i < data.rows(); ++i) {
    std::vector<double> row(data.x.row(i).begin(), data.x.row(i).end());
    row.push_back(data.y[i]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Dataset dataset_from_table(const CsvTable& table) {
  if (table.header.size() < 2 || table.header.back() != "label") {
    throw ParseError(1, "dataset header must list feature columns then 'label'");
  }
  const Index features = static_cast<Index>(table.header.size() - 1);
  Dataset data;
  data.x.resize(static_cast<Index>(table.rows.size()), features);
  data.y.resize(static_cast<Index>(table.rows.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Index row = static_cast<Index>(i);
    for (Index j = 0; j < features; ++j) data.x(row, j) = table.rows[i][static_cast<std::size_t>(j)];
    data.y[row] = table.rows[i].back();
  }
  return data;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) { emit_csv(dataset_table(data), path); }

Dataset load_dataset(const std::filesystem::path& path) { return dataset_from_table(read_csv(path)); }

}  // namespace aegdm
