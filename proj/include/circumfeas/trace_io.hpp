#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include "circumfeas/crm.hpp"
#include "circumfeas/serialize.hpp"

namespace circumfeas {

// Shortest exact decimal form; %.17g round-trips every double and prints
// identically everywhere, which the byte-stability guarantee relies on.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One row per iterate: the visited point with its distances, then the final
// point on a closing row. Column order is frozen by the version comment.
inline void write_trace_csv(const std::string& path, const IterationTrace& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  size_t d = t.final_point.size();
  out << "# circumfeas-trace-v1\n";
  out << "iter";
  for (size_t j = 0; j < d; ++j) out << ",x" << j;
  out << ",dist_a,dist_b,cardinality_case\n";
  int k = 0;
  for (const CrmStep& s : t.steps) {
    out << k++;
    for (double c : s.x) out << ',' << fmt_double(c);
    out << ',' << fmt_double(s.dist_a) << ',' << fmt_double(s.dist_b) << ','
        << case_name(s.cardinality_case) << '\n';
  }
  out << k;
  for (double c : t.final_point) out << ',' << fmt_double(c);
  out << ',' << fmt_double(t.final_dist_a) << ',' << fmt_double(t.final_dist_b) << ",-\n";
}

// trace.json embeds the scenario so a trace file is plottable on its own.
inline void write_trace_json(const std::string& path, const Scenario& scen,
                             const std::string& method, const IterationTrace& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  json j{{"scenario", scenario_to_json(scen)}, {"method", method}, {"trace", trace_to_json(t)}};
  out << j.dump(2) << '\n';
}

inline void write_summary_json(const std::string& path, const Scenario& scen,
                               const std::string& method, const IterationTrace& t,
                               std::optional<bool> start_in_zone) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  json j{{"scenario", scen.name},
         {"method", method},
         {"terminated", terminated_name(t.terminated)},
         {"iterations_used", t.iterations_used},
         {"final_point", t.final_point},
         {"final_dist_a", t.final_dist_a},
         {"final_dist_b", t.final_dist_b}};
  if (start_in_zone) j["start_in_zone"] = *start_in_zone;
  if (!t.error_message.empty()) j["error_message"] = t.error_message;
  out << j.dump(2) << '\n';
}

}  // namespace circumfeas
