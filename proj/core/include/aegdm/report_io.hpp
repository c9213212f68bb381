#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aegdm/diagnostics.hpp"

namespace aegdm {

/// One line: bound_id=<id> lhs=<x> rhs=<x> margin=<x> satisfied=<true|false> k=v ...
/// Constants follow in key order.
std::string format_report(const BoundReport& report);
/// Throws ParseError on malformed lines.
BoundReport parse_report(std::string_view line);

std::string format_reports(const std::vector<BoundReport>& reports);
/// Blank lines and '#' comments are skipped.
std::vector<BoundReport> parse_reports(std::string_view text);

}  // namespace aegdm
