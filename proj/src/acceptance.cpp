#include "transfer/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "transfer/commands.hpp"
#include "transfer/modular.hpp"
#include "transfer/saturated_cover.hpp"
#include "transfer/serialization.hpp"
#include "transfer/transfer_system.hpp"

namespace transfer::acceptance {

namespace {

// Collects the first few mismatches of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) log_ << (log_.tellp() > 0 ? "; " : "") << what;
  }
  void note(const std::string& what) { notes_ << (notes_.tellp() > 0 ? ", " : "") << what; }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    if (ok()) return notes_.str();
    std::ostringstream os;
    os << failures_ << " failure(s): " << log_.str();
    return os.str();
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream log_;
  std::ostringstream notes_;
};

std::string at(unsigned m, unsigned n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

BigCount power_of_two(unsigned e) {
  BigCount r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

void base_rows(Check& c, const Routes& r) {
  for (unsigned k = 0; k <= 20; ++k) {
    const BigCount expected = power_of_two(k);
    c.expect(r.closed(k, 0) == expected, "closed s" + at(k, 0));
    c.expect(r.recurrence(k, 0) == expected, "recurrence s" + at(k, 0));
    c.expect(r.closed(0, k) == expected, "closed s" + at(0, k));
    c.expect(r.recurrence(0, k) == expected, "recurrence s" + at(0, k));
  }
}

void seven_squares(Check& c, const Routes& r) {
  const GridShape shape{1, 1};
  const std::map<std::string, BigCount> values = {
      {"recurrence", r.recurrence(1, 1)},
      {"closed", r.closed(1, 1)},
      {"egf", egf_coefficient(1, 1, 2)},
      {"codes", BigCount(static_cast<unsigned long>(count_code_pairs(shape)))},
      {"bruteforce", BigCount(static_cast<unsigned long>(enumerate_saturated_bruteforce(shape).size()))},
  };
  for (const auto& [method, v] : values) c.expect(v == 7, method + " gives " + v.get_str());
}

void triple_agreement(Check& c, const Routes& r) {
  const RationalSeries2 f = egf_series(12);
  for (unsigned m = 0; m <= 6; ++m)
    for (unsigned n = 0; n <= 6; ++n) {
      const BigCount rec = r.recurrence(m, n);
      c.expect(rec == r.closed(m, n), "recurrence != closed at " + at(m, n));
      c.expect(rec == egf_coefficient(f, m, n), "recurrence != egf at " + at(m, n));
      c.expect(rec == r.recurrence(n, m), "asymmetric recurrence at " + at(m, n));
      c.expect(r.closed(m, n) == r.closed(n, m), "asymmetric closed form at " + at(m, n));
    }
}

void oracle_agreement(Check& c, const Routes& r) {
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      const auto codes = count_code_pairs({m, n});
      c.expect(BigCount(static_cast<unsigned long>(codes)) == r.closed(m, n), "code pairs != closed at " + at(m, n));
    }
  for (GridShape shape : {GridShape{1, 1}, GridShape{2, 1}, GridShape{1, 2}, GridShape{1, 3}}) {
    const auto found = enumerate_saturated_bruteforce(shape).size();
    const auto m = static_cast<unsigned>(shape.m), n = static_cast<unsigned>(shape.n);
    c.expect(BigCount(static_cast<unsigned long>(found)) == r.closed(m, n), "brute force != closed at " + at(m, n));
  }
}

void marked_partitions(Check& c, const Routes&) {
  for (unsigned l = 0; l <= 12; ++l)
    for (unsigned r = 0; r <= l; ++r) {
      const MarkedPartitionReport rep = marked_partition_check(l, r);
      c.expect(rep.lhs == rep.rhs, "identity fails at " + at(l, r));
      if (l <= 8) c.expect(rep.direct.has_value() && rep.holds(), "direct count differs at " + at(l, r));
    }
}

void pde(Check& c, const Routes&) { c.expect(pde_check(11), "PDE fails below total degree 11"); }

void fibers(Check& c, const Routes& r) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      const GridShape shape{m, n + 1};
      std::map<Mask, std::vector<SaturatedCover>> fiber;
      for_each_saturated_cover(shape, [&](const SaturatedCover& s) { fiber[classify(s).mask()].push_back(s); });
      for (Mask a = 0; a <= low_bits(m + 1); ++a) {
        const ClassLabel label(m, a);
        const auto& members = fiber[a];
        const unsigned base_m = label.is_full() ? static_cast<unsigned>(m) : static_cast<unsigned>(label.size());
        const std::string where = "label " + std::to_string(a) + " on " + at(m, n + 1);
        c.expect(BigCount(static_cast<unsigned long>(members.size())) == r.closed(base_m, n), "fiber size of " + where);
        for (const auto& s : members)
          c.expect(expand(collapse(s, label), label, shape) == s, "expand(collapse) differs for " + where);
        for_each_saturated_cover({static_cast<int>(base_m), n}, [&](const SaturatedCover& t) {
          c.expect(collapse(expand(t, label, shape), label) == t, "collapse(expand) differs for " + where);
        });
      }
    }
}

void bijections(Check& c, const Routes&) {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      const GridShape shape{m, n};
      for_each_code_pair(shape, [&](const CodePair& code) {
        const SaturatedCover s = cover_from_codes(code, shape);
        c.expect(codes_of(s) == code, "codes_of(cover_from_codes) at " + at(m, n));
        const TransferSystem t = cover_to_system(s);
        c.expect(is_saturated(t), "cover_to_system not saturated at " + at(m, n));
        c.expect(system_to_cover(t) == s, "system_to_cover(cover_to_system) at " + at(m, n));
      });
    }
}

void modular_saturation(Check& c, const Routes&) {
  std::size_t exhaustive = 0, sampled = 0;
  for (Residue k = 1; k <= 60; ++k) {
    const auto orbits = negation_orbit_count(k);
    if (orbits > 16) continue;
    ResidueMask mask(k);
    mask.set(0);
    for (std::uint64_t g = 0; g < (std::uint64_t{1} << orbits); ++g) {
      if (g != 0) {
        const Residue o = static_cast<Residue>(std::countr_zero(g)) + 1;
        mask.flip(o);
        if (k - o != o) mask.flip(k - o);
      }
      const DivisorTransferSystem t = modular_transfer_system(IndexSet::from_mask(mask));
      c.expect(t.is_transfer_system() && t.is_saturated(), "unsaturated system for k = " + std::to_string(k));
      ++exhaustive;
    }
  }
  std::mt19937_64 rng(0x5eed);
  std::bernoulli_distribution coin(0.5);
  for (Residue k = 34; k <= 200; ++k) {
    for (int trial = 0; trial < 1000; ++trial) {
      ResidueMask mask(k);
      mask.set(0);
      for (Residue o = 1; o <= k / 2; ++o)
        if (coin(rng)) {
          mask.set(o);
          mask.set(k - o);
        }
      const DivisorTransferSystem t = modular_transfer_system(IndexSet::from_mask(mask));
      c.expect(t.is_transfer_system() && t.is_saturated(), "unsaturated system for k = " + std::to_string(k));
      ++sampled;
    }
  }
  c.note(std::to_string(exhaustive) + " exhaustive, " + std::to_string(sampled) + " sampled");
}

std::vector<TransferSystem> saturated_systems(GridShape shape) {
  std::vector<TransferSystem> out;
  for_each_saturated_cover(shape, [&](const SaturatedCover& s) { out.push_back(cover_to_system(s)); });
  return out;
}

void realization(Check& c, const Routes& r) {
  const std::uint64_t expected_counts[] = {2, 7, 23};
  std::size_t certificates = 0;
  for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{5, 7}, {7, 5}, {5, 11}})
    for (int n = 0; n <= 2; ++n) {
      const auto systems = saturated_systems({1, n});
      const std::string where = "C_" + std::to_string(p) + "*" + std::to_string(q) + "^" + std::to_string(n);
      c.expect(systems.size() == expected_counts[n], "system count on " + where);
      c.expect(BigCount(static_cast<unsigned long>(systems.size())) == r.closed(1, static_cast<unsigned>(n)),
               "system count differs from closed form on " + where);
      for (const auto& t : systems) {
        try {
          const RealizationCertificate cert = realize(t, p, q);
          const Residue qn = checked_pow(q, n);
          c.expect(verify_certificate(cert) && cert.witness != 0 && cert.witness % qn == 0,
                   "certificate rejected on " + where);
          ++certificates;
        } catch (const std::exception& e) {
          c.expect(false, where + ": " + e.what());
        }
      }
    }
  std::size_t confirmed = 0;
  for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{5, 7}, {5, 11}}) {
    const auto systems = saturated_systems({1, 1});
    std::size_t here = 0;
    for (const auto& t : systems) {
      const int orbits = static_cast<int>(negation_orbit_count(p * q));
      const auto found = find_index_set_bruteforce(t, p, q, orbits);
      const bool ok = found && modular_grid_system(*found, p, q) == t;
      c.expect(ok, "exhaustive search found no index set on C_" + std::to_string(p * q));
      here += ok;
    }
    c.expect(here >= 3, "fewer than 3 confirmations on C_" + std::to_string(p * q));
    confirmed += here;
  }
  c.note(std::to_string(certificates) + " certificates, " + std::to_string(confirmed) + " confirmed by search");
}

void chickenfoot(Check& c, const Routes&) {
  const GridShape shape{1, 1};
  Relation gen(shape);
  gen.add({0, 0}, {1, 1});
  const TransferSystem t = generate(gen);
  c.expect(!is_saturated(t), "chickenfoot reported saturated");
  c.expect(!find_index_set_bruteforce(t, 5, 7).has_value(), "chickenfoot realized on C_35");
}

void determinism(Check& c, const Routes&) {
  auto twice = [&](const std::function<int(std::ostream&, std::ostream&)>& run, const std::string& what) {
    std::ostringstream out1, err1, out2, err2;
    const int s1 = run(out1, err1), s2 = run(out2, err2);
    c.expect(s1 == 0 && s2 == 0, what + " exited nonzero");
    c.expect(!out1.str().empty(), what + " produced no output");
    c.expect(out1.str() == out2.str() && err1.str() == err2.str(), what + " output differs between runs");
  };
  for (const char* format : {"json", "dot", "codes"})
    twice([&](std::ostream& o, std::ostream& e) { return cli::run_enumerate({2, 2, format, {}}, o, e); },
          std::string("enumerate --format ") + format);

  for (int n = 0; n <= 2; ++n) {
    std::ostringstream input;
    for (const auto& t : saturated_systems({1, n})) input << to_json(t).dump() << '\n';
    twice(
        [&](std::ostream& o, std::ostream& e) {
          std::istringstream in(input.str());
          return cli::run_realize(in, {5, 7, {}}, o, e);
        },
        "realize n = " + std::to_string(n));
  }
}

struct Criterion {
  const char* title;
  double limit_seconds;
  void (*body)(Check&, const Routes&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"base rows s(m,0) = 2^m, s(0,n) = 2^n", 1, base_rows},
    {"s(1,1) = 7 by five methods", 5, seven_squares},
    {"recurrence = closed = EGF, symmetry, m,n <= 6", 30, triple_agreement},
    {"code pairs and brute force match closed form", 120, oracle_agreement},
    {"marked-partition identity, l <= 12", 30, marked_partitions},
    {"EGF satisfies the PDE to degree 10", 10, pde},
    {"fiber sizes and collapse/expand, m,n <= 3", 60, fibers},
    {"codes and system bijections, m,n <= 4", 60, bijections},
    {"every index set gives a saturated system", 120, modular_saturation},
    {"saturated systems on C_pq^n are realized", 300, realization},
    {"chickenfoot admits no index set", 60, chickenfoot},
    {"enumerate and realize are deterministic", 60, determinism},
};

}  // namespace

std::vector<int> criteria_for(std::string_view level) {
  if (level == "quick") return {1, 2, 3, 5, 6, 7, 11, 12};
  if (level == "full") {
    std::vector<int> all;
    for (int id = 1; id <= kCriterionCount; ++id) all.push_back(id);
    return all;
  }
  throw std::invalid_argument("selftest level must be quick or full");
}

Outcome run_criterion(int id, const Routes& routes) {
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("no criterion " + std::to_string(id));
  const Criterion& spec = kCriteria[id - 1];
  Outcome out;
  out.id = id;
  out.title = spec.title;
  out.limit_seconds = spec.limit_seconds;
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    spec.body(check, routes);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.passed = check.ok() && out.seconds < out.limit_seconds;
  out.detail = check.detail();
  if (check.ok() && !out.passed) out.detail = "over the time limit";
  return out;
}

int run_suite(const std::vector<int>& ids, std::ostream& out, const Routes& routes) {
  int failed = 0;
  for (int id : ids) {
    const Outcome o = run_criterion(id, routes);
    out << (o.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << o.id << "] " << o.title << "  (" << std::fixed
        << std::setprecision(2) << o.seconds << " s, limit " << std::setprecision(0) << o.limit_seconds << " s)";
    if (!o.detail.empty()) out << "  " << o.detail;
    out << '\n';
    if (!o.passed) {
      out << "      repro: transfer selftest --only " << o.id << '\n';
      ++failed;
    }
  }
  out << (failed == 0 ? "all " : "") << ids.size() - static_cast<std::size_t>(failed) << " of " << ids.size()
      << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace transfer::acceptance
