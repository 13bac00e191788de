#pragma once

// The acceptance suite: ten criteria, each a list of named checks with the
// numbers behind them. Shared by `sumlab verify` and the acceptance test.

#include <cstdint>
#include <string>
#include <vector>

namespace sumlab::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::vector<Check> checks;

  bool pass() const;
};

inline constexpr int kCriteria = 10;

/// Runs criterion id (1..10). Random corpora are drawn from `seed`.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// `PASS  3  reproducing identity ... (0.41 s / 5 s)`
std::string summary_line(const CriterionResult& r);

/// One indented line per check.
std::string detail_lines(const CriterionResult& r);

/// Upper-bound constant fitted on a base range and re-measured on the
/// doubled range; stable when doubled <= 1.1 * base (+ allowance).
struct TwoRange {
  double base = 0.0;
  double doubled = 0.0;
  double allowance = 0.0;

  bool stable() const { return doubled <= 1.1 * base + allowance; }
};

/// Lower-bound version: stable when doubled >= base / 1.1.
struct TwoRangeLower {
  double base = 0.0;
  double doubled = 0.0;

  bool stable() const { return doubled >= base / 1.1; }
};

}  // namespace sumlab::verify
