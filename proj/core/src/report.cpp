#include "dixie/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "dixie/errors.hpp"
#include "json.hpp"

namespace dixie {
namespace {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> cells(const ReportRow& row) {
  return {row.study_id,
          row.family,
          cell(row.size),
          cell(row.total),
          cell(row.sets),
          cell(row.order),
          cell(row.exact),
          cell(row.simulated),
          cell(row.sim_stderr),
          cell(row.estimate),
          cell(row.asymptotic),
          cell(row.ratio_exact_over_estimate),
          cell(row.ratio_exact_over_asymptotic),
          row.note};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw DomainError("unterminated quote in CSV line: " + line);
  out.push_back(std::move(current));
  return out;
}

template <class T>
std::optional<T> parse_cell(const std::string& s, const std::string& column) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw DomainError("bad number '" + s + "' in " + column);
    return v;
  } else {
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) throw DomainError("bad count '" + s + "' in " + column);
    return static_cast<T>(v);
  }
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns = {
      "study_id",   "family",   "M",          "N",
      "m",          "r",        "exact",      "simulated",
      "sim_stderr", "estimate", "asymptotic", "ratio_exact_over_estimate",
      "ratio_exact_over_asymptotic", "note"};
  return columns;
}

double round_for_output(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

void write_csv(const RunReport& report, std::ostream& out) {
  const auto& columns = report_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : report.rows) {
    const auto values = cells(row);
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << quote(values[i]);
    out << '\n';
  }
}

void write_json(const RunReport& report, std::ostream& out) {
  using nlohmann::json;
  json doc = json::array();
  const auto number = [](const std::optional<double>& v) -> json {
    return v ? json(round_for_output(*v)) : json(nullptr);
  };
  const auto count = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
  for (const auto& row : report.rows) {
    json item = json::object();
    item["study_id"] = row.study_id;
    item["family"] = row.family;
    item["M"] = count(row.size);
    item["N"] = count(row.total);
    item["m"] = count(row.sets);
    item["r"] = count(row.order);
    item["exact"] = number(row.exact);
    item["simulated"] = number(row.simulated);
    item["sim_stderr"] = number(row.sim_stderr);
    item["estimate"] = number(row.estimate);
    item["asymptotic"] = number(row.asymptotic);
    item["ratio_exact_over_estimate"] = number(row.ratio_exact_over_estimate);
    item["ratio_exact_over_asymptotic"] = number(row.ratio_exact_over_asymptotic);
    item["note"] = row.note;
    doc.push_back(std::move(item));
  }
  out << doc.dump(2) << '\n';
}

RunReport read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty CSV document");
  const auto header = split_csv_line(line);
  if (header != report_columns()) throw DomainError("unexpected CSV header: " + line);
  RunReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = split_csv_line(line);
    if (v.size() != header.size()) {
      throw DomainError("CSV row has " + std::to_string(v.size()) + " cells, expected " +
                        std::to_string(header.size()));
    }
    ReportRow row;
    row.study_id = v[0];
    row.family = v[1];
    row.size = parse_cell<std::size_t>(v[2], "M");
    row.total = parse_cell<std::size_t>(v[3], "N");
    row.sets = parse_cell<unsigned>(v[4], "m");
    row.order = parse_cell<unsigned>(v[5], "r");
    row.exact = parse_cell<double>(v[6], "exact");
    row.simulated = parse_cell<double>(v[7], "simulated");
    row.sim_stderr = parse_cell<double>(v[8], "sim_stderr");
    row.estimate = parse_cell<double>(v[9], "estimate");
    row.asymptotic = parse_cell<double>(v[10], "asymptotic");
    row.ratio_exact_over_estimate = parse_cell<double>(v[11], "ratio_exact_over_estimate");
    row.ratio_exact_over_asymptotic = parse_cell<double>(v[12], "ratio_exact_over_asymptotic");
    row.note = v[13];
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dixie
