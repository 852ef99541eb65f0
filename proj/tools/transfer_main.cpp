// transfer: count, enumerate, verify and realize saturated transfer systems
// on C_{p^m q^n}.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "transfer/acceptance.hpp"
#include "transfer/commands.hpp"

namespace cli = transfer::cli;

namespace {

// Returns the stream to write to; `file` keeps an --output target open.
std::ostream& output_stream(const std::string& path, std::unique_ptr<std::ofstream>& file) {
  if (path.empty() || path == "-") return std::cout;
  file = std::make_unique<std::ofstream>(path);
  if (!*file) throw std::runtime_error("cannot write " + path);
  return *file;
}

template <typename F>
int with_input(const std::string& path, F&& run) {
  if (path == "-") return run(std::cin);
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << '\n';
    return cli::kFailure;
  }
  return run(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturated transfer systems on C_{p^m q^n}"};
  app.require_subcommand(1);

  std::string output;
  std::optional<std::uint64_t> budget;

  cli::CountOptions count;
  std::string count_format = "text";
  auto* count_cmd = app.add_subcommand("count", "number of saturated transfer systems s(m,n)");
  count_cmd->add_option("m", count.m, "exponent of p")->required();
  count_cmd->add_option("n", count.n, "exponent of q")->required();
  count_cmd->add_option("--method", count.method, "recurrence, closed, egf, bruteforce or codes")
      ->check(CLI::IsMember({"recurrence", "closed", "egf", "bruteforce", "codes"}));
  count_cmd->add_flag("--all-methods", count.all_methods, "run every method within its limit and compare");
  count_cmd->add_option("--format", count_format, "text (one value) or csv (table up to m, n)")
      ->check(CLI::IsMember({"text", "csv"}));
  count_cmd->add_option("--budget", budget, "override the size limits");
  count_cmd->add_option("--output", output, "write to PATH instead of stdout");

  cli::EnumerateOptions enumerate;
  auto* enum_cmd = app.add_subcommand("enumerate", "stream every saturated cover in code order");
  enum_cmd->add_option("m", enumerate.m, "exponent of p")->required();
  enum_cmd->add_option("n", enumerate.n, "exponent of q")->required();
  enum_cmd->add_option("--format", enumerate.format, "json, dot or codes")
      ->check(CLI::IsMember({"json", "dot", "codes"}));
  enum_cmd->add_option("--budget", budget, "override the size limit");
  enum_cmd->add_option("--output", output, "write to PATH instead of stdout");

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "check transfer-system or cover JSON");
  verify_cmd->add_option("file", verify_path, "input file, or - for stdin")->required();
  verify_cmd->add_option("--output", output, "write to PATH instead of stdout");

  std::string realize_path;
  cli::RealizeOptions realize;
  auto* realize_cmd = app.add_subcommand("realize", "index sets for saturated systems on C_{p q^n}");
  realize_cmd->add_option("file", realize_path, "transfer systems on [1]x[n], or - for stdin")->required();
  realize_cmd->add_option("p", realize.p, "prime p > 3")->required();
  realize_cmd->add_option("q", realize.q, "prime q > 3")->required();
  realize_cmd->add_option("--budget", budget, "override the group-order limit");
  realize_cmd->add_option("--output", output, "write to PATH instead of stdout");

  std::string level = "quick";
  std::vector<int> only;
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  self_cmd->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  self_cmd->add_option("--only", only, "run only these criteria")->check(CLI::Range(1, transfer::acceptance::kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kFailure;
  }

  try {
    std::unique_ptr<std::ofstream> file;
    if (*count_cmd) {
      count.budget = budget;
      count.table = count_format == "csv";
      return cli::run_count(count, output_stream(output, file), std::cerr);
    }
    if (*enum_cmd) {
      enumerate.budget = budget;
      return cli::run_enumerate(enumerate, output_stream(output, file), std::cerr);
    }
    if (*verify_cmd) {
      std::ostream& out = output_stream(output, file);
      return with_input(verify_path, [&](std::istream& in) { return cli::run_verify(in, out, std::cerr); });
    }
    if (*realize_cmd) {
      realize.budget = budget;
      std::ostream& out = output_stream(output, file);
      return with_input(realize_path, [&](std::istream& in) { return cli::run_realize(in, realize, out, std::cerr); });
    }
    if (*self_cmd) {
      const auto ids = only.empty() ? transfer::acceptance::criteria_for(level) : only;
      return transfer::acceptance::run_suite(ids, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kFailure;
  }
  return cli::kFailure;
}
