#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "irfit/ir/driver.hpp"

namespace irfit::ir {

/// One CSV row per trace record:
///   k,x_k,y_k,f,f_exact,matched,h,theta,branch
/// Reals use 17 significant digits; f_exact is "1-m/N" for scored problems.
struct CsvRow {
  long k;
  double x;
  std::int64_t y;
  double f;
  std::optional<std::int64_t> matched;
  std::int64_t total = 0;
  double h;
  double theta;
  std::string branch;
};

void write_trace_csv(std::ostream& out, const std::vector<CsvRow>& rows);
std::string format_real(double v);

template <class Problem>
std::vector<CsvRow> to_csv_rows(const std::vector<IRRecord<double>>& trace, const Problem& problem) {
  std::vector<CsvRow> rows;
  rows.reserve(trace.size());
  for (const auto& r : trace) {
    CsvRow row{r.k, r.x, r.y.id, r.f, r.matched, 0, r.y.accuracy, r.theta, to_string(r.branch)};
    if constexpr (requires { problem.total_cells(); }) row.total = problem.total_cells();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace irfit::ir
