#include "transfer/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace transfer {

// Coefficients are laid out by total degree d = i + j, then by i.
std::size_t RationalSeries2::offset(int i, int j) {
  const std::size_t d = static_cast<std::size_t>(i + j);
  return d * (d + 1) / 2 + static_cast<std::size_t>(i);
}

RationalSeries2::RationalSeries2(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  c_.assign(offset(0, order + 1), mpq_class(0));
}

RationalSeries2 RationalSeries2::constant(int order, const mpq_class& c) {
  RationalSeries2 s(order);
  s.coeff(0, 0) = c;
  return s;
}

RationalSeries2 RationalSeries2::exp_linear(int order, const mpq_class& a, const mpq_class& b) {
  RationalSeries2 s(order);
  // a^i/i! and b^j/j! built incrementally.
  std::vector<mpq_class> pa(static_cast<std::size_t>(order) + 1), pb(static_cast<std::size_t>(order) + 1);
  pa[0] = 1;
  pb[0] = 1;
  for (int i = 1; i <= order; ++i) {
    pa[i] = pa[i - 1] * a / i;
    pb[i] = pb[i - 1] * b / i;
  }
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) s.coeff(i, j) = pa[i] * pb[j];
  return s;
}

const mpq_class& RationalSeries2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) throw std::out_of_range("coefficient beyond truncation order");
  return c_[offset(i, j)];
}

mpq_class& RationalSeries2::coeff(int i, int j) {
  if (i < 0 || j < 0 || i + j > order_) throw std::out_of_range("coefficient beyond truncation order");
  return c_[offset(i, j)];
}

RationalSeries2 RationalSeries2::operator+(const RationalSeries2& o) const {
  RationalSeries2 r(std::min(order_, o.order_));
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
  return r;
}

RationalSeries2 RationalSeries2::operator-(const RationalSeries2& o) const {
  RationalSeries2 r(std::min(order_, o.order_));
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
  return r;
}

RationalSeries2 RationalSeries2::operator*(const RationalSeries2& o) const {
  const int n = std::min(order_, o.order_);
  RationalSeries2 r(n);
  for (int i1 = 0; i1 <= n; ++i1)
    for (int j1 = 0; i1 + j1 <= n; ++j1) {
      const mpq_class& a = coeff(i1, j1);
      if (a == 0) continue;
      for (int i2 = 0; i1 + j1 + i2 <= n; ++i2)
        for (int j2 = 0; i1 + j1 + i2 + j2 <= n; ++j2) r.coeff(i1 + i2, j1 + j2) += a * o.coeff(i2, j2);
    }
  return r;
}

RationalSeries2 RationalSeries2::operator*(const mpq_class& s) const {
  RationalSeries2 r(*this);
  for (auto& c : r.c_) c *= s;
  return r;
}

RationalSeries2 RationalSeries2::reciprocal() const {
  const mpq_class& c0 = coeff(0, 0);
  if (c0 == 0) throw std::domain_error("series has no reciprocal: zero constant term");
  RationalSeries2 g(order_);
  // f g = 1: g_{ij} = -(1/f_00) * sum_{(a,b) != (0,0)} f_{ab} g_{i-a, j-b}
  for (int d = 0; d <= order_; ++d)
    for (int i = 0; i <= d; ++i) {
      const int j = d - i;
      mpq_class acc = (d == 0) ? mpq_class(1) : mpq_class(0);
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          if (a == 0 && b == 0) continue;
          acc -= coeff(a, b) * g.coeff(i - a, j - b);
        }
      g.coeff(i, j) = acc / c0;
    }
  return g;
}

RationalSeries2 RationalSeries2::pow(unsigned e) const {
  RationalSeries2 r = constant(order_, 1);
  for (unsigned k = 0; k < e; ++k) r = r * *this;
  return r;
}

RationalSeries2 RationalSeries2::d_dx() const {
  if (order_ == 0) throw std::domain_error("cannot differentiate an order-0 series");
  RationalSeries2 r(order_ - 1);
  for (int i = 0; i <= r.order_; ++i)
    for (int j = 0; i + j <= r.order_; ++j) r.coeff(i, j) = coeff(i + 1, j) * (i + 1);
  return r;
}

RationalSeries2 RationalSeries2::d_dy() const {
  if (order_ == 0) throw std::domain_error("cannot differentiate an order-0 series");
  RationalSeries2 r(order_ - 1);
  for (int i = 0; i <= r.order_; ++i)
    for (int j = 0; i + j <= r.order_; ++j) r.coeff(i, j) = coeff(i, j + 1) * (j + 1);
  return r;
}

RationalSeries2 RationalSeries2::truncated(int order) const {
  if (order > order_) throw std::invalid_argument("cannot raise truncation order");
  RationalSeries2 r(order);
  std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(r.c_.size()), r.c_.begin());
  return r;
}

bool operator==(const RationalSeries2& a, const RationalSeries2& b) {
  return a.order_ == b.order_ && a.c_ == b.c_;
}

}  // namespace transfer
