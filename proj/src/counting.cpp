#include "transfer/counting.hpp"

#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace transfer {

BigCount binomial(unsigned n, unsigned k) {
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigCount factorial(unsigned n) {
  BigCount r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

namespace {

class StirlingMemo {
 public:
  BigCount get(unsigned l, unsigned k) {
    if (k > l) return 0;
    std::lock_guard lock(mu_);
    while (rows_.size() <= l) extend();
    return rows_[l][k];
  }

 private:
  // Row l holds S(l, 0..l).
  void extend() {
    const std::size_t l = rows_.size();
    std::vector<BigCount> row(l + 1);
    if (l == 0) {
      row[0] = 1;
    } else {
      const auto& prev = rows_[l - 1];
      row[0] = 0;
      for (std::size_t k = 1; k <= l; ++k) {
        BigCount same = k < prev.size() ? prev[k] * static_cast<unsigned long>(k) : BigCount(0);
        row[k] = same + prev[k - 1];
      }
    }
    rows_.push_back(std::move(row));
  }

  std::mutex mu_;
  std::vector<std::vector<BigCount>> rows_;
};

StirlingMemo& stirling_memo() {
  static StirlingMemo memo;
  return memo;
}

class RecurrenceMemo {
 public:
  BigCount get(unsigned m, unsigned n) {
    std::lock_guard lock(mu_);
    ensure(m, n);
    return table_[m][n];
  }

  CountTable snapshot() {
    std::lock_guard lock(mu_);
    return table_;
  }

  void seed(CountTable t) {
    std::lock_guard lock(mu_);
    if (table_.empty() || (t.size() >= table_.size() && t[0].size() >= table_[0].size()))
      table_ = std::move(t);
  }

 private:
  // Keeps the table rectangular (rows 0..M, columns 0..N); existing cells are reused.
  void ensure(unsigned m, unsigned n) {
    const std::size_t old_rows = table_.size();
    const std::size_t old_cols = table_.empty() ? 0 : table_[0].size();
    const std::size_t rows = std::max<std::size_t>(m + 1, old_rows);
    const std::size_t cols = std::max<std::size_t>(n + 1, old_cols);
    if (rows == old_rows && cols == old_cols) return;
    table_.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      auto& row = table_[r];
      const std::size_t have = r < old_rows ? old_cols : 0;
      row.resize(cols);
      for (std::size_t c = have; c < cols; ++c) {
        if (c == 0) {
          mpz_ui_pow_ui(row[0].get_mpz_t(), 2, r);
          continue;
        }
        BigCount v = row[c - 1];
        for (std::size_t k = 0; k <= r; ++k)
          v += binomial(static_cast<unsigned>(r + 1), static_cast<unsigned>(k)) * table_[k][c - 1];
        row[c] = v;
      }
    }
  }

  std::mutex mu_;
  CountTable table_;
};

RecurrenceMemo& recurrence_memo() {
  static RecurrenceMemo memo;
  return memo;
}

}  // namespace

BigCount stirling2(unsigned l, unsigned k) { return stirling_memo().get(l, k); }

BigCount stirling2_closed(unsigned l, unsigned k) {
  BigCount sum = 0;
  for (unsigned i = 0; i <= k; ++i) {
    BigCount term;
    mpz_ui_pow_ui(term.get_mpz_t(), i, l);
    term *= binomial(k, i);
    if ((k - i) % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  BigCount q = sum / factorial(k);
  if (q * factorial(k) != sum) throw std::logic_error("Stirling alternating sum not divisible by k!");
  return q;
}

BigCount s_recurrence(unsigned m, unsigned n) { return recurrence_memo().get(m, n); }

BigCount s_closed(unsigned m, unsigned n) {
  BigCount sum = 0;
  for (unsigned j = 2; j <= m + 2; ++j) {
    BigCount power;
    mpz_ui_pow_ui(power.get_mpz_t(), j, n);
    BigCount term = stirling2(m + 1, j - 1) * (factorial(j) / 2) * power;
    // (-1)^{m-j} depends only on the parity of m + j.
    if ((m + j) % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  if (sum < 0) throw std::logic_error("closed form produced a negative count");
  return sum;
}

std::uint64_t count_marked_partitions(unsigned l, unsigned r) {
  if (l > 16) throw std::invalid_argument("direct marked-partition count limited to l <= 16");
  std::uint64_t count = 0;
  std::vector<unsigned> label(l, 0);
  // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i-1]).
  auto walk = [&](auto&& self, unsigned pos, unsigned blocks) -> void {
    if (blocks > r || blocks + (l - pos) < r) return;
    if (pos == l) {
      if (blocks != r) return;
      // An element is its block's minimum iff it is the first with its label.
      std::vector<bool> seen(r, false);
      for (unsigned q = 0; q < l; ++q) {
        if (seen[label[q]])
          ++count;
        else
          seen[label[q]] = true;
      }
      return;
    }
    for (unsigned v = 0; v <= blocks && v < r; ++v) {
      label[pos] = v;
      self(self, pos + 1, v == blocks ? blocks + 1 : blocks);
    }
  };
  walk(walk, 0, 0);
  return count;
}

MarkedPartitionReport marked_partition_check(unsigned l, unsigned r) {
  if (r > l) throw std::invalid_argument("marked partitions need r <= l");
  MarkedPartitionReport rep;
  rep.lhs = stirling2(l, r) * static_cast<unsigned long>(l - r);
  rep.rhs = 0;
  for (unsigned t = 1; t <= l - r; ++t) {
    BigCount term = binomial(l, t + 1) * stirling2(l - t, r);
    if (t % 2 == 1)
      rep.rhs += term;
    else
      rep.rhs -= term;
  }
  if (l <= 10) rep.direct = count_marked_partitions(l, r);
  return rep;
}

RationalSeries2 egf_series(int order) {
  const auto ex = RationalSeries2::exp_linear(order, 1, 0);
  const auto ey = RationalSeries2::exp_linear(order, 0, 1);
  const auto exy = RationalSeries2::exp_linear(order, 1, 1);
  const auto numerator = RationalSeries2::exp_linear(order, 2, 2);
  const auto denominator = ex + ey - exy;  // constant term 1
  return numerator * denominator.reciprocal().pow(3);
}

BigCount egf_coefficient(const RationalSeries2& f, unsigned m, unsigned n) {
  if (static_cast<int>(m + n) > f.order()) throw std::invalid_argument("truncation order too small for coefficient");
  mpq_class v = f.coeff(static_cast<int>(m), static_cast<int>(n));
  v *= mpq_class(factorial(m) * factorial(n));
  v.canonicalize();
  if (v.get_den() != 1 || v < 0) throw std::logic_error("EGF coefficient is not a non-negative integer");
  return v.get_num();
}

BigCount egf_coefficient(unsigned m, unsigned n, int order) {
  if (static_cast<int>(m + n) > order) throw std::invalid_argument("truncation order too small for coefficient");
  return egf_coefficient(egf_series(order), m, n);
}

bool pde_check(const RationalSeries2& f) {
  const int order = f.order();
  if (order < 1) throw std::invalid_argument("PDE check needs order >= 1");
  const auto ex = RationalSeries2::exp_linear(order, 1, 0);
  const auto one = RationalSeries2::constant(order, 1);
  const auto lhs = f.d_dy();
  const auto rhs = (ex + one) * f + (ex - one) * f.d_dx();
  return lhs == rhs.truncated(order - 1);
}

bool pde_check(int order) { return pde_check(egf_series(order)); }

CountTable count_table(unsigned max_m, unsigned max_n, const CountFunction& count) {
  CountTable t(max_m + 1, std::vector<BigCount>(max_n + 1));
  for (unsigned m = 0; m <= max_m; ++m)
    for (unsigned n = 0; n <= max_n; ++n) t[m][n] = count(m, n);
  return t;
}

void write_table_csv(std::ostream& os, const CountTable& table) {
  os << "m\\n";
  const std::size_t cols = table.empty() ? 0 : table[0].size();
  for (std::size_t n = 0; n < cols; ++n) os << ',' << n;
  os << '\n';
  for (std::size_t m = 0; m < table.size(); ++m) {
    os << m;
    for (const auto& v : table[m]) os << ',' << v.get_str();
    os << '\n';
  }
}

CountTable read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("count table: missing header");
  std::size_t cols = 0;
  {
    std::istringstream hs(line);
    std::string cell;
    std::getline(hs, cell, ',');
    while (std::getline(hs, cell, ',')) {
      if (cell != std::to_string(cols)) throw std::runtime_error("count table: bad header");
      ++cols;
    }
  }
  CountTable t;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    if (cell != std::to_string(t.size())) throw std::runtime_error("count table: rows out of order");
    std::vector<BigCount> row;
    while (std::getline(ls, cell, ',')) {
      BigCount v;
      if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos ||
          v.set_str(cell, 10) != 0)
        throw std::runtime_error("count table: bad entry '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != cols) throw std::runtime_error("count table: ragged row");
    t.push_back(std::move(row));
  }
  return t;
}

void save_recurrence_memo(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_table_csv(os, recurrence_memo().snapshot());
}

void load_recurrence_memo(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  CountTable t = read_table_csv(is);
  if (t.empty() || t[0].empty()) throw std::runtime_error("count table is empty");
  for (std::size_t m = 0; m < t.size(); ++m) {
    BigCount base;
    mpz_ui_pow_ui(base.get_mpz_t(), 2, m);
    if (t[m][0] != base) throw std::runtime_error("count table: base column is not 2^m");
    for (std::size_t n = 1; n < t[m].size(); ++n) {
      BigCount v = t[m][n - 1];
      for (std::size_t k = 0; k <= m; ++k)
        v += binomial(static_cast<unsigned>(m + 1), static_cast<unsigned>(k)) * t[k][n - 1];
      if (v != t[m][n]) throw std::runtime_error("count table violates the recurrence");
    }
  }
  recurrence_memo().seed(std::move(t));
}

}  // namespace transfer
