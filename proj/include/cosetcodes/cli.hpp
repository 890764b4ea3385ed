#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cosetcodes/codefam.hpp"
#include "cosetcodes/cosetgraph.hpp"
#include "cosetcodes/errors.hpp"
#include "cosetcodes/report_io.hpp"
#include "cosetcodes/storage.hpp"
#include "cosetcodes/verify.hpp"

namespace cosetcodes::cli {

enum class Format { json, csv, matrix_text };

struct RunConfig {
  std::string command;
  FamilySpec spec;
  std::optional<std::string> output_path;
  std::optional<Format> format;
  std::uint64_t seed = 1;
  std::size_t memory_cap = kDefaultMemoryCap;
  std::uint64_t trials = 100000;
  RankEngine engine = RankEngine::automatic;
  // sweep
  std::optional<std::vector<std::pair<unsigned, unsigned>>> pairs;
  bool stress = false;
  // family
  bool generators_only = false;
  // verify
  std::vector<std::string> suites;
  std::optional<unsigned> verify_r;
  std::uint64_t cases = 1000;
  bool inject_fault = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;

inline std::optional<Format> parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "matrix-text" || name == "matrix_text") return Format::matrix_text;
  return std::nullopt;
}

inline std::vector<std::pair<unsigned, unsigned>> default_sweep_grid() {
  std::vector<std::pair<unsigned, unsigned>> grid;
  for (unsigned s = 2; s <= 3; ++s) {
    for (unsigned r = 4; r <= 8; ++r) grid.emplace_back(s, r);
  }
  return grid;
}

// "s:r" -> (s, r)
inline std::pair<unsigned, unsigned> parse_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParameterError("sweep pair '" + text + "' is not of the form s:r");
  try {
    return {static_cast<unsigned>(std::stoul(text.substr(0, colon))),
            static_cast<unsigned>(std::stoul(text.substr(colon + 1)))};
  } catch (const std::exception&) {
    throw ParameterError("sweep pair '" + text + "' is not of the form s:r");
  }
}

// Sends `body` to the configured output file, or to `out` when none is set.
inline void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body,
                 const std::string& suffix = "") {
  if (!cfg.output_path) {
    body(out);
    return;
  }
  const std::string path = *cfg.output_path + suffix;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  body(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

/// Parity-check matrix in the matrix text format; with an output path the
/// generator list also goes to `<path>.generators`.
inline int cmd_family(const RunConfig& cfg, std::ostream& out) {
  const GeneratorSet gens = generators_for(cfg.spec);
  if (cfg.generators_only) {
    emit(cfg, out, [&](std::ostream& os) { write_generators_text(os, gens); });
    return kExitOk;
  }
  const BitMatrix h = matrix_of(gens);
  emit(cfg, out, [&](std::ostream& os) { write_matrix_text(os, h); });
  if (cfg.output_path) emit(cfg, out, [&](std::ostream& os) { write_generators_text(os, gens); }, ".generators");
  return kExitOk;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const StorageReport rep = storage_report(cfg.spec, RankMethod::automatic, cfg.engine);
  const Format fmt = cfg.format.value_or(Format::json);
  emit(cfg, out, [&](std::ostream& os) {
    if (fmt == Format::csv) {
      write_csv(os, std::span<const StorageReport>(&rep, 1));
    } else {
      os << report_to_json(rep).dump(2) << '\n';
    }
  });
  return kExitOk;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  auto pairs = cfg.pairs.value_or(default_sweep_grid());
  if (cfg.stress) pairs.emplace_back(4, 4);
  const SweepResult sweep = theorem_sweep(pairs, RankMethod::automatic, cfg.engine);
  const Format fmt = cfg.format.value_or(Format::csv);
  emit(cfg, out, [&](std::ostream& os) {
    if (fmt == Format::json) {
      ordered_json j;
      j["reports"] = reports_to_json(sweep.reports);
      j["all_bounds_met"] = sweep.all_bounds_met;
      ordered_json mono = ordered_json::array();
      for (auto [s, inc] : sweep.rate_increasing_in_r) mono.push_back({{"s", s}, {"rate_increasing_in_r", inc}});
      j["monotonicity"] = mono;
      os << j.dump(2) << '\n';
    } else {
      write_csv(os, sweep.reports);
    }
  });
  for (const auto& rep : sweep.reports) {
    log << "s=" << rep.spec.s << " r=" << rep.spec.r << ": rank " << rep.rank << " (" << engine_name(rep.engine)
        << ")\n";
  }
  for (auto [s, inc] : sweep.rate_increasing_in_r) {
    log << "s=" << s << ": rate " << (inc ? "increases" : "does not increase") << " with r\n";
  }
  if (!sweep.all_bounds_met) {
    log << "rate lower bound 1 - 2^-s - 2^-r+1 violated\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  verify::Options opt;
  opt.r = cfg.verify_r;
  opt.seed = cfg.seed;
  opt.cases = cfg.cases;
  opt.inject_fault = cfg.inject_fault;
  const std::vector<std::string> suites = cfg.suites.empty() ? verify::suite_names() : cfg.suites;
  bool all = true;
  for (const auto& name : suites) {
    const auto res = verify::run_suite(name, opt);
    out << res.name << ": " << (res.checks - res.failures) << "/" << res.checks << " checks passed"
        << (res.passed() ? "" : " [FAIL]") << '\n';
    for (const auto& msg : res.messages) out << "  failed: " << msg << '\n';
    all = all && res.passed();
  }
  return all ? kExitOk : kExitCheckFailed;
}

inline int cmd_guess(const RunConfig& cfg, std::ostream& out) {
  const CosetGraph g = build_graph(generators_for(cfg.spec));
  const GuessOutcome res = guessing_equivalence(g, cfg.trials, cfg.seed);
  emit(cfg, out, [&](std::ostream& os) {
    ordered_json j;
    j["family"] = std::string(family_name(cfg.spec.family));
    j["r"] = cfg.spec.r;
    j["N"] = g.vertex_count();
    j["seed"] = cfg.seed;
    const ordered_json outcome = guess_to_json(res);
    for (const auto& [key, value] : outcome.items()) j[key] = value;
    os << j.dump(2) << '\n';
  });
  return res.mismatches == 0 ? kExitOk : kExitCheckFailed;
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  ScopedMemoryCap cap(cfg.memory_cap);
  if (cfg.command == "family") return cmd_family(cfg, out);
  if (cfg.command == "report") return cmd_report(cfg, out);
  if (cfg.command == "sweep") return cmd_sweep(cfg, out, log);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  if (cfg.command == "guess") return cmd_guess(cfg, out);
  throw ParameterError("unknown command '" + cfg.command + "'");
}

}  // namespace cosetcodes::cli
