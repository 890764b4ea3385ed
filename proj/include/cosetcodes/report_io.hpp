#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosetcodes/storage.hpp"

namespace cosetcodes {

using ordered_json = nlohmann::ordered_json;

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{"family", "s",         "r",         "N",          "rank",
                                             "dim",    "rate_num",  "rate_den",  "gn",         "triangle_free",
                                             "connected", "bound_rhs_num", "bound_rhs_den", "bound_met"};
  return cols;
}

// `s` is null for families without a recursion depth; bound_rhs is the rate
// the construction guarantees (exactly or as a lower bound).
inline ordered_json report_to_json(const StorageReport& rep) {
  ordered_json j;
  j["family"] = std::string(family_name(rep.spec.family));
  if (rep.spec.depth() == 0) {
    j["s"] = nullptr;
  } else {
    j["s"] = rep.spec.depth();
  }
  j["r"] = rep.spec.r;
  j["N"] = rep.vertices;
  j["rank"] = rep.rank;
  j["dim"] = rep.dimension;
  j["rate_num"] = rep.rate.num;
  j["rate_den"] = rep.rate.den;
  j["gn"] = rep.guessing_number;
  j["triangle_free"] = rep.triangle_free;
  j["connected"] = rep.connected;
  const Rational rhs = rep.bound.rate_rhs();
  j["bound_rhs_num"] = rhs.num;
  j["bound_rhs_den"] = rhs.den;
  j["bound_met"] = rep.bound_met;
  return j;
}

inline ordered_json reports_to_json(std::span<const StorageReport> reps) {
  ordered_json arr = ordered_json::array();
  for (const auto& rep : reps) arr.push_back(report_to_json(rep));
  return arr;
}

inline void write_csv_header(std::ostream& out) {
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

inline void write_csv_row(std::ostream& out, const StorageReport& rep) {
  const ordered_json j = report_to_json(rep);
  bool first = true;
  for (const auto& col : report_columns()) {
    if (!first) out << ',';
    first = false;
    const auto& v = j.at(col);
    if (v.is_null()) continue;
    if (v.is_string()) {
      out << v.get<std::string>();
    } else {
      out << v.dump();
    }
  }
  out << '\n';
}

inline void write_csv(std::ostream& out, std::span<const StorageReport> reps) {
  write_csv_header(out);
  for (const auto& rep : reps) write_csv_row(out, rep);
}

inline ordered_json guess_to_json(const GuessOutcome& g) {
  ordered_json j;
  j["trials"] = g.trials;
  j["matches"] = g.matches;
  j["mismatches"] = g.mismatches;
  j["successes"] = g.successes;
  j["success_log2"] = g.success_log2;
  return j;
}

}  // namespace cosetcodes
