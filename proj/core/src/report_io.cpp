#include "aegdm/report_io.hpp"

#include "aegdm/csv.hpp"
#include "aegdm/error.hpp"

namespace aegdm {

std::string format_report(const BoundReport& report) {
  std::string out = "bound_id=" + report.bound_id;
  out += " lhs=" + format_real(report.lhs);
  out += " rhs=" + format_real(report.rhs);
  out += " margin=" + format_real(report.margin);
  out += report.satisfied ? " satisfied=true" : " satisfied=false";
  for (const auto& [key, value] : report.constants) out += " " + key + "=" + format_real(value);
  return out;
}

BoundReport parse_report(std::string_view line) {
  BoundReport report;
  bool seen[5] = {false, false, false, false, false};
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    const std::string_view token = line.substr(pos, end - pos);
    pos = end;
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError(0, "expected key=value, got '" + std::string(token) + "'");
    }
    const std::string key(token.substr(0, eq));
    const std::string_view value = token.substr(eq + 1);
    if (key == "bound_id") {
      report.bound_id = std::string(value);
      seen[0] = true;
    } else if (key == "satisfied") {
      if (value != "true" && value != "false") throw ParseError(0, "satisfied must be true or false");
      report.satisfied = value == "true";
      seen[4] = true;
    } else if (key == "lhs") {
      report.lhs = parse_real(value);
      seen[1] = true;
    } else if (key == "rhs") {
      report.rhs = parse_real(value);
      seen[2] = true;
    } else if (key == "margin") {
      report.margin = parse_real(value);
      seen[3] = true;
    } else {
      report.constants[key] = parse_real(value);
    }
  }
  for (bool s : seen) {
    if (!s) throw ParseError(0, "report line lacks one of bound_id, lhs, rhs, margin, satisfied");
  }
  return report;
}

std::string format_reports(const std::vector<BoundReport>& reports) {
  std::string out;
  for (const BoundReport& r : reports) out += format_report(r) + "\n";
  return out;
}

std::vector<BoundReport> parse_reports(std::string_view text) {
  std::vector<BoundReport> reports;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      reports.push_back(parse_report(line));
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.detail());
    }
  }
  return reports;
}

}  // namespace aegdm
