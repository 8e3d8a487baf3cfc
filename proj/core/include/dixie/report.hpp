#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dixie {

struct ReportRow {
  std::string study_id;
  std::string family;  // subfamily specs joined with '+'
  std::optional<std::size_t> size;   // M
  std::optional<std::size_t> total;  // N
  std::optional<unsigned> sets;      // m
  std::optional<unsigned> order;     // r
  std::optional<double> exact;
  std::optional<double> simulated;
  std::optional<double> sim_stderr;
  std::optional<double> estimate;  // subfamily totals times the rare L1
  std::optional<double> asymptotic;
  std::optional<double> ratio_exact_over_estimate;
  std::optional<double> ratio_exact_over_asymptotic;
  std::string note;

  bool operator==(const ReportRow&) const = default;
};

struct RunReport {
  std::vector<ReportRow> rows;

  bool operator==(const RunReport&) const = default;
};

// Column names in output order. `study_id` is always first.
const std::vector<std::string>& report_columns();

// Numbers are written with 12 significant digits; missing values are empty cells.
void write_csv(const RunReport& report, std::ostream& out);
// A JSON array of objects keyed by column name; missing values are null.
void write_json(const RunReport& report, std::ostream& out);

// Reads a CSV produced by write_csv. Throws DomainError on a malformed document.
RunReport read_csv(std::istream& in);

// Rounds to the 12 significant digits used on output.
double round_for_output(double value);

}  // namespace dixie
