#pragma once

// The acceptance suite: twelve end-to-end checks with wall-clock limits.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "transfer/counting.hpp"

namespace transfer::acceptance {

/// Counting routes under test; replaceable so a broken route can be injected.
struct Routes {
  CountFunction recurrence = s_recurrence;
  CountFunction closed = s_closed;
};

struct Outcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

inline constexpr int kCriterionCount = 12;

/// "quick" or "full"; throws std::invalid_argument otherwise.
std::vector<int> criteria_for(std::string_view level);

/// Runs one criterion; a criterion passes only if its checks hold and it
/// finishes within its time limit.
Outcome run_criterion(int id, const Routes& routes = {});

/// One line per criterion; returns 0 iff all pass.
int run_suite(const std::vector<int>& ids, std::ostream& out, const Routes& routes = {});

}  // namespace transfer::acceptance
