#pragma once

// Verification reports for the command line and CI: key=value text and JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubepair/strategy.hpp"

namespace cubepair {

enum class Check { matching, coverage, partition, polychromatic };

std::string to_string(Check c);
Check parse_check(std::string_view name);
// Comma-separated list, e.g. "matching,coverage".
std::vector<Check> parse_checks(std::string_view list);

struct CheckOutcome {
  Check check;
  bool passed = true;
  std::optional<std::string> counterexample;
  std::optional<std::size_t> member;
  std::uint64_t subcubes = 0;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string subject;
  int n = 0;
  int k = 0;
  std::size_t members = 0;
  std::vector<CheckOutcome> checks;

  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

// Runs the checks over every member at subcube dimension k (coverage and
// polychromatic) and stops each check at its first failing member.
VerificationReport verify_family(const StrategyFamily& fam, const std::vector<Check>& checks, int k, int jobs);

}  // namespace cubepair
