#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosetcodes/cli.hpp"

namespace {

using cosetcodes::cli::RunConfig;

struct FamilyFlags {
  std::string kind = "h2";
  unsigned r = 4;
  unsigned s = 2;
  unsigned m = 1;
  bool allow_small_r = false;
};

void add_family_flags(CLI::App* sub, FamilyFlags& f) {
  sub->add_option("--kind", f.kind, "hamming, padded_hamming, zero_code, repetition, h2, h3 or hs")
      ->capture_default_str();
  sub->add_option("--r", f.r, "Hamming order / ambient dimension")->capture_default_str();
  sub->add_option("--s", f.s, "recursion depth (hs)")->capture_default_str();
  sub->add_option("--m", f.m, "zero-padding rows (padded_hamming)")->capture_default_str();
  sub->add_flag("--allow-small-r", f.allow_small_r, "build h2/h3/hs with r < 4");
}

cosetcodes::FamilySpec to_spec(const FamilyFlags& f) {
  const auto family = cosetcodes::parse_family(f.kind);
  if (!family) throw cosetcodes::ParameterError("unknown family '" + f.kind + "'");
  return {*family, f.r, f.s, f.m, f.allow_small_r};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coset-graph storage codes: build parity-check families, compute GF(2) ranks, verify"};
  app.require_subcommand(1);

  RunConfig cfg;
  FamilyFlags fam;
  std::string output, format;
  std::string memory_cap;
  std::string engine;
  std::vector<std::string> pairs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "write to this file instead of stdout");
    sub->add_option("--memory-cap", memory_cap, "largest dense matrix in bytes (env COSETCODES_MEMORY_CAP)");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  };

  auto* family = app.add_subcommand("family", "write a parity-check matrix (and its generator list)");
  add_family_flags(family, fam);
  common(family);
  family->add_flag("--generators", cfg.generators_only, "write the generator list instead of the matrix");

  auto* report = app.add_subcommand("report", "rank, rate and flags of one storage code");
  add_family_flags(report, fam);
  common(report);
  report->add_option("--format", format, "json or csv");
  report->add_option("--engine", engine, "rank engine: auto, dense or block");

  auto* sweep = app.add_subcommand("sweep", "rate table of the recursive family over (s, r)");
  common(sweep);
  sweep->add_option("--format", format, "csv or json");
  sweep->add_option("--engine", engine, "rank engine: auto, dense or block");
  sweep->add_option("--pairs", pairs, "grid as s:r items (default 2:4..2:8, 3:4..3:8)")->expected(0, -1);
  sweep->add_flag("--stress", cfg.stress, "append (s, r) = (4, 4), N = 65536");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  common(verify);
  verify->add_option("--suite", cfg.suites, "permring, reassembly, graph, storage (default: all)");
  verify->add_option("--r", cfg.verify_r, "restrict suites to this dimension");
  verify->add_option("--cases", cfg.cases, "randomized cases per property")->capture_default_str();
  verify->add_flag("--inject-fault", cfg.inject_fault, "flip one bit of each reassembled matrix (harness check)");

  auto* guess = app.add_subcommand("guess", "play the guessing game with the parity strategy");
  add_family_flags(guess, fam);
  common(guess);
  guess->add_option("--trials", cfg.trials, "random colourings")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.spec = to_spec(fam);
    if (!output.empty()) cfg.output_path = output;
    if (!format.empty()) {
      cfg.format = cosetcodes::cli::parse_format(format);
      if (!cfg.format) throw cosetcodes::ParameterError("unknown format '" + format + "'");
    }
    if (!engine.empty()) {
      const auto e = cosetcodes::parse_engine(engine);
      if (!e) throw cosetcodes::ParameterError("unknown engine '" + engine + "'");
      cfg.engine = *e;
    }
    if (memory_cap.empty()) {
      if (const char* env = std::getenv("COSETCODES_MEMORY_CAP")) memory_cap = env;
    }
    if (!memory_cap.empty()) cfg.memory_cap = std::stoull(memory_cap);
    if (sweep->count("--pairs") > 0) {
      std::vector<std::pair<unsigned, unsigned>> grid;
      for (const auto& p : pairs) grid.push_back(cosetcodes::cli::parse_pair(p));
      cfg.pairs = grid;
    }
    if (cfg.command == "guess" && cfg.trials == 0) throw cosetcodes::ParameterError("--trials must be positive");
    if (cfg.command == "family" || cfg.command == "report" || cfg.command == "guess") {
      cosetcodes::validate(cfg.spec);
    }
    return cosetcodes::cli::run(cfg, std::cout, std::cerr);
  } catch (const cosetcodes::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
