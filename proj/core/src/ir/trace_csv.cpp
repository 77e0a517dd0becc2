#include "irfit/ir/trace_csv.hpp"

#include <cstdio>

namespace irfit::ir {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << "k,x_k,y_k,f,f_exact,matched,h,theta,branch\n";
  for (const auto& r : rows) {
    out << r.k << ',' << format_real(r.x) << ',' << r.y << ',' << format_real(r.f) << ',';
    if (r.matched) out << "1-" << *r.matched << '/' << r.total;
    out << ',';
    if (r.matched) out << *r.matched;
    out << ',' << format_real(r.h) << ',' << format_real(r.theta) << ',' << r.branch << '\n';
  }
}

}  // namespace irfit::ir
