#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ucw {

struct Violation {
  std::string inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

/// Outcome of one randomized inequality campaign. `gap` is the amount by
/// which the required inequality was exceeded (|lhs - rhs| for equality
/// checks); a trial violates iff gap > tolerance. Violation details are kept
/// for the first kMaxStoredViolations offenders; the count covers all.
struct AxiomReport {
  static constexpr std::size_t kMaxStoredViolations = 16;

  std::string id;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;
  double max_gap = -1e308;   // signed: negative means slack everywhere
  double max_abs_gap = 0.0;  // |lhs - rhs|, useful for equality-style checks
  double tolerance = 0.0;

  bool pass() const { return violation_count == 0; }

  void record(double lhs, double rhs, double gap, const std::string& inputs) {
    ++trials;
    max_gap = std::max(max_gap, gap);
    max_abs_gap = std::max(max_abs_gap, std::abs(lhs - rhs));
    if (gap > tolerance) {
      ++violation_count;
      if (violations.size() < kMaxStoredViolations) violations.push_back({inputs, lhs, rhs, gap});
    }
  }
};

}  // namespace ucw
