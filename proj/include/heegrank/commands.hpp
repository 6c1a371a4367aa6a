#pragma once

// The command layer shared by the CLI and the python module. Every command
// returns its canonical report and the process exit code:
// 0 all checks passed, 1 a check failed or a search was exhausted,
// 2 bad input, IO or configuration.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "heegrank/catalog.hpp"
#include "heegrank/report.hpp"

namespace heegrank {

struct CommandResult {
  Json report;
  int exit_code = 0;
};

inline constexpr double kInertTolerance = 1e-8;
inline constexpr double kTowerTolerance = 1e-6;
inline constexpr double kControlFloor = 1e-3;

// Runs body (which returns results and an ok flag) and turns exceptions into
// a failed report with the matching exit code.
CommandResult run_guarded(const std::string& command, const Json& inputs,
                          const std::function<std::pair<Json, bool>()>& body);

struct ApOptions {
  std::string label;
  std::uint64_t max_prime = 100;
  std::optional<std::string> cache;
};
CommandResult cmd_ap(const Catalog& catalog, const ApOptions& opt);

struct WitnessOptions {
  std::string label;
  std::size_t count = 5;
  std::uint64_t bound = 100000;
  std::optional<std::string> start;
};
CommandResult cmd_witness(const Catalog& catalog, const WitnessOptions& opt);

struct ClassFieldOptions {
  std::int64_t fund_disc = 0;
  std::int64_t conductor = 1;
  std::optional<std::int64_t> prime;
  int nmax = 3;
  std::int64_t level = 1;
  std::optional<std::pair<std::int64_t, std::int64_t>> inert_step;  // (k, p_j)
};
CommandResult cmd_classfield(const ClassFieldOptions& opt);

struct HeegnerOptions {
  std::string label;
  std::int64_t fund_disc = 0;
  std::optional<std::uint64_t> verify_inert;
  std::optional<std::uint64_t> verify_tower;
  unsigned precision = 30;
  std::optional<double> tolerance;
};
CommandResult cmd_heegner(const Catalog& catalog, const HeegnerOptions& opt);

struct PrimeSearchOptions {
  std::string label;
  std::int64_t fund_disc = 0;
  std::uint64_t p = 0;
  std::uint64_t bound = 10000;
};
CommandResult cmd_primesearch(const Catalog& catalog, const PrimeSearchOptions& opt);

struct RecurrenceOptions {
  std::uint64_t p = 0;
  std::int64_t ap = 0;
  std::string c0 = "1";
  std::string c1 = "0";
  std::size_t steps = 40;
};
CommandResult cmd_recurrence(const RecurrenceOptions& opt);

}  // namespace heegrank
