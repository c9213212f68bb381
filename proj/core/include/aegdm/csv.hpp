#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aegdm/problems.hpp"
#include "aegdm/trace.hpp"

namespace aegdm {

/// Shortest form that still carries 17 significant digits; independent of
/// the global locale.
std::string format_real(double x);
/// Inverse of format_real. Throws ParseError on malformed input.
double parse_real(std::string_view text);

/// A header plus numeric rows, the shape of every CSV artifact.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

/// iter, f, grad_norm, min_r, step_norm and, for online runs, regret.
CsvTable trace_table(const TrajectoryTrace& trace);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

void emit_csv(const CsvTable& table, const std::filesystem::path& path);
void emit_csv(const TrajectoryTrace& trace, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

/// Feature columns x0..x{n-1}, then label.
CsvTable dataset_table(const Dataset& data);
Dataset dataset_from_table(const CsvTable& table);
void save_dataset(const Dataset& data, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace aegdm
