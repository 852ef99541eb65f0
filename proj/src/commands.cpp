#include "transfer/commands.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <utility>
#include <vector>

#include "transfer/counting.hpp"
#include "transfer/modular.hpp"
#include "transfer/saturated_cover.hpp"
#include "transfer/serialization.hpp"

namespace transfer::cli {

namespace {

const std::vector<std::string> kMethods = {"recurrence", "closed", "egf", "codes", "bruteforce"};

void warn_budget(const std::optional<std::uint64_t>& budget, std::ostream& err) {
  if (budget) err << "warning: --budget " << *budget << " overrides the default limits\n";
}

// Empty string when the method may run on this shape.
std::string limit_violation(const std::string& method, int m, int n, const std::optional<std::uint64_t>& budget) {
  if (method == "bruteforce") {
    if (budget || bruteforce_within_limit(m, n)) return {};
    return "bruteforce is limited to shapes within (2,2), (1,3) or (3,1)";
  }
  const long long cap = budget ? static_cast<long long>(*budget) : (method == "codes" ? kCodesLimit : kFormulaLimit);
  if (m <= cap && n <= cap) return {};
  return method + " is limited to m, n <= " + std::to_string(cap);
}

CountTable compute_table(const std::string& method, int max_m, int max_n, const std::optional<std::uint64_t>& budget,
                         bool table) {
  const auto um = static_cast<unsigned>(max_m), un = static_cast<unsigned>(max_n);
  CountFunction f;
  if (method == "recurrence") {
    f = s_recurrence;
  } else if (method == "closed") {
    f = s_closed;
  } else if (method == "egf") {
    const auto series = std::make_shared<RationalSeries2>(egf_series(max_m + max_n));
    f = [series](unsigned m, unsigned n) { return egf_coefficient(*series, m, n); };
  } else if (method == "codes") {
    f = [](unsigned m, unsigned n) {
      return BigCount(static_cast<unsigned long>(count_code_pairs_factored({static_cast<int>(m), static_cast<int>(n)})));
    };
  } else {
    const std::uint64_t nodes = budget.value_or(kDefaultEnumerationBudget);
    f = [nodes](unsigned m, unsigned n) {
      const auto all = enumerate_saturated_bruteforce({static_cast<int>(m), static_cast<int>(n)}, nodes);
      return BigCount(static_cast<unsigned long>(all.size()));
    };
  }
  if (table) return count_table(um, un, f);
  return CountTable{{f(um, un)}};
}

}  // namespace

bool bruteforce_within_limit(int m, int n) {
  return (m <= 2 && n <= 2) || (m <= 1 && n <= 3) || (m <= 3 && n <= 1);
}

int run_count(const CountOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.m < 0 || opt.n < 0) {
    err << "error: m and n must be non-negative\n";
    return kFailure;
  }
  if (std::find(kMethods.begin(), kMethods.end(), opt.method) == kMethods.end()) {
    err << "error: unknown method '" << opt.method << "'\n";
    return kFailure;
  }
  warn_budget(opt.budget, err);

  std::vector<std::string> methods;
  if (opt.all_methods) {
    for (const auto& method : kMethods)
      if (limit_violation(method, opt.m, opt.n, opt.budget).empty()) methods.push_back(method);
  } else {
    const std::string why = limit_violation(opt.method, opt.m, opt.n, opt.budget);
    if (!why.empty()) {
      err << "error: " << why << '\n';
      return kLimitExceeded;
    }
    methods.push_back(opt.method);
  }

  std::vector<std::pair<std::string, CountTable>> results;
  try {
    for (const auto& method : methods)
      results.emplace_back(method, compute_table(method, opt.m, opt.n, opt.budget, opt.table));
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kLimitExceeded;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kLimitExceeded;
  }

  bool agree = true;
  for (const auto& r : results) agree = agree && r.second == results.front().second;

  if (opt.table) {
    write_table_csv(out, results.front().second);
    if (opt.all_methods) {
      for (const auto& r : results) err << r.first << (r.second == results.front().second ? " agrees\n" : " DIFFERS\n");
    }
  } else if (opt.all_methods) {
    for (const auto& r : results) out << r.first << ' ' << r.second[0][0].get_str() << '\n';
  } else {
    out << results.front().second[0][0].get_str() << '\n';
  }
  if (!agree) {
    err << "error: methods disagree\n";
    return kFailure;
  }
  if (opt.all_methods && !opt.table) out << "all " << results.size() << " methods agree\n";
  return kOk;
}

int run_enumerate(const EnumerateOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.m < 0 || opt.n < 0) {
    err << "error: m and n must be non-negative\n";
    return kFailure;
  }
  if (opt.format != "json" && opt.format != "dot" && opt.format != "codes") {
    err << "error: enumerate supports --format json, dot or codes\n";
    return kFailure;
  }
  warn_budget(opt.budget, err);
  const long long cap = opt.budget ? static_cast<long long>(*opt.budget) : kCodesLimit;
  if (opt.m > cap || opt.n > cap) {
    err << "error: enumeration is limited to m, n <= " << cap << '\n';
    return kLimitExceeded;
  }
  const GridShape shape{opt.m, opt.n};
  for_each_saturated_cover(shape, [&](const SaturatedCover& s) {
    if (opt.format == "json")
      out << to_json(s).dump() << '\n';
    else if (opt.format == "dot")
      write_dot(out, s);
    else
      out << code_line(codes_of(s)) << '\n';
  });
  return kOk;
}

namespace {

const char* verdict(bool ok) { return ok ? "pass" : "FAIL"; }

bool verify_system(const Json& doc, std::ostream& out) {
  const Relation r = relation_from_json(doc);
  const AxiomReport rep = check_axioms(r);
  out << "transfer system on " << r.shape() << '\n'
      << "  refinement    " << verdict(rep.refines) << '\n'
      << "  reflexivity   " << verdict(rep.reflexive) << '\n'
      << "  transitivity  " << verdict(rep.transitive) << '\n'
      << "  restriction   " << verdict(rep.restriction) << '\n';
  if (!rep.ok()) {
    out << "  not a transfer system\n";
    return false;
  }
  const TransferSystem t = TransferSystem::from_relation(r);
  if (is_saturated(t)) {
    out << "  saturated     yes\n  codes         " << code_line(codes_of(system_to_cover(t))) << '\n';
  } else {
    out << "  saturated     no\n";
  }
  out << "  valid transfer system\n";
  return true;
}

bool verify_cover(const Json& doc, std::ostream& out) {
  const EdgeSet edges = edge_set_from_json(doc);
  const CoverConditions c = check_cover_conditions(edges);
  out << "cover on " << edges.shape() << '\n'
      << "  (1) horizontal prefix  " << verdict(c.horizontal_prefix) << '\n'
      << "  (2) vertical prefix    " << verdict(c.vertical_prefix) << '\n'
      << "  (3) unit squares       " << verdict(c.squares) << '\n';
  if (!c.ok()) {
    out << "  not a saturated cover\n";
    return false;
  }
  const SaturatedCover s = SaturatedCover::from_edges(edges);
  out << "  codes                  " << code_line(codes_of(s)) << '\n'
      << "  saturated              yes\n"
      << "  valid saturated cover\n";
  return true;
}

}  // namespace

int run_verify(std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<Json> docs;
  try {
    docs = read_documents(in);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  std::size_t valid = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out << "document " << i + 1 << ": ";
    try {
      switch (document_kind(docs[i])) {
        case DocumentKind::TransferSystem:
          valid += verify_system(docs[i], out);
          break;
        case DocumentKind::Cover:
          valid += verify_cover(docs[i], out);
          break;
        case DocumentKind::Unknown:
          throw ParseError("neither a transfer system nor a cover");
      }
    } catch (const ParseError& e) {
      out << "unreadable\n";
      err << "parse error in document " << i + 1 << ": " << e.what() << '\n';
      return kParseError;
    } catch (const Json::exception& e) {
      out << "unreadable\n";
      err << "parse error in document " << i + 1 << ": " << e.what() << '\n';
      return kParseError;
    }
  }
  out << valid << " of " << docs.size() << " documents valid\n";
  return valid == docs.size() ? kOk : kFailure;
}

int run_realize(std::istream& in, const RealizeOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    (void)GroupSpec::make(opt.p, opt.q, 0);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  warn_budget(opt.budget, err);
  std::vector<Json> docs;
  try {
    docs = read_documents(in);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  const std::uint64_t modulus_cap = opt.budget.value_or(kRealizeModulusLimit);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::optional<Relation> rel;
    try {
      if (document_kind(docs[i]) != DocumentKind::TransferSystem) throw ParseError("expected a transfer system");
      rel = relation_from_json(docs[i]);
    } catch (const std::exception& e) {
      err << "parse error in document " << i + 1 << ": " << e.what() << '\n';
      return kParseError;
    }
    if (!is_transfer_system(*rel)) {
      err << "document " << i + 1 << ": not a transfer system\n";
      return kNotSaturated;
    }
    const TransferSystem t = TransferSystem::from_relation(*rel);
    if (t.shape().m != 1) {
      err << "document " << i + 1 << ": realize expects a system on [1]x[n], got " << t.shape() << '\n';
      return kFailure;
    }
    if (!is_saturated(t)) {
      err << "document " << i + 1 << ": transfer system is not saturated\n";
      return kNotSaturated;
    }
    std::uint64_t modulus = opt.p;
    for (int j = 0; j < t.shape().n; ++j) {
      if (__builtin_mul_overflow(modulus, opt.q, &modulus) || modulus > modulus_cap) {
        err << "error: group order exceeds the limit of " << modulus_cap << '\n';
        return kLimitExceeded;
      }
    }
    try {
      const RealizationCertificate cert = realize(t, opt.p, opt.q);
      out << to_json(cert).dump() << '\n';
    } catch (const RealizationError& e) {
      err << "verification failed for document " << i + 1 << "\n"
          << "target: " << to_json(t).dump() << '\n'
          << e.what() << '\n'
          << "please report this input together with p = " << opt.p << ", q = " << opt.q << '\n';
      return kVerificationFailed;
    } catch (const BudgetExceeded& e) {
      err << "error: " << e.what() << '\n';
      return kLimitExceeded;
    }
  }
  return kOk;
}

}  // namespace transfer::cli
