#pragma once

// Command implementations behind the `transfer` tool. Each returns the
// process exit status and writes only to the given streams.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace transfer::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kLimitExceeded = 2,
  kParseError = 3,
  kNotSaturated = 4,
  kVerificationFailed = 5,
};

struct CountOptions {
  int m = 0;
  int n = 0;
  std::string method = "recurrence";  // recurrence | closed | egf | bruteforce | codes
  bool all_methods = false;
  bool table = false;  // csv table for 0..m x 0..n
  std::optional<std::uint64_t> budget;
};

struct EnumerateOptions {
  int m = 0;
  int n = 0;
  std::string format = "json";  // json | dot | codes
  std::optional<std::uint64_t> budget;
};

struct RealizeOptions {
  std::uint64_t p = 5;
  std::uint64_t q = 7;
  std::optional<std::uint64_t> budget;
};

inline constexpr int kCodesLimit = 8;
inline constexpr int kFormulaLimit = 64;
inline constexpr std::uint64_t kRealizeModulusLimit = 10'000'000;

/// Shapes accepted by the brute-force counter without --budget.
bool bruteforce_within_limit(int m, int n);

int run_count(const CountOptions& opt, std::ostream& out, std::ostream& err);
int run_enumerate(const EnumerateOptions& opt, std::ostream& out, std::ostream& err);
/// Reads transfer-system or cover documents.
int run_verify(std::istream& in, std::ostream& out, std::ostream& err);
/// Reads transfer systems on [1] x [n]; writes one certificate per line.
int run_realize(std::istream& in, const RealizeOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace transfer::cli
