#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace defsum::lab {

/// Round-trippable decimal form of a double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Quotes a cell holding a comma, quote or line break.
inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Tabular experiment output: one row per record plus declared bound checks.
struct ExperimentReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  void add_check(std::string check_name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(check_name), pass, std::move(detail)});
  }

  std::string to_csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << csv_cell(cells[i]);
      }
      os << '\n';
    };
    line(columns);
    for (const auto& r : rows) line(r);
    return os.str();
  }

  std::string human_summary() const {
    std::ostringstream os;
    os << name << '\n';
    for (const auto& [k, v] : summary) os << "  " << k << ": " << v << '\n';
    for (const auto& c : checks) {
      os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << " (" << c.detail << ')';
      os << '\n';
    }
    return os.str();
  }
};

}  // namespace defsum::lab
