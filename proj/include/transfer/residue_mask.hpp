#pragma once

// Membership bitmap for subsets of Z/kZ.

#include <cstdint>
#include <vector>

namespace transfer {

class ResidueMask {
 public:
  ResidueMask() = default;
  explicit ResidueMask(std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  bool test(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  void set(std::uint64_t x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(std::uint64_t x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }
  void flip(std::uint64_t x) { words_[x >> 6] ^= std::uint64_t{1} << (x & 63); }
  std::uint64_t count() const;

  /// Image under Z/kZ -> Z/eZ; e must divide the modulus.
  ResidueMask reduced(std::uint64_t e) const;
  /// True iff S + d = S in Z/kZ.
  bool is_translation_invariant(std::uint64_t d) const;

  std::vector<std::uint64_t> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
      }
    }
  }

  /// Single-word view, valid when modulus <= 64.
  std::uint64_t word() const { return words_.empty() ? 0 : words_[0]; }

  friend bool operator==(const ResidueMask&, const ResidueMask&) = default;

 private:
  std::uint64_t modulus_ = 0;
  std::vector<std::uint64_t> words_;
};

namespace small_mask {

constexpr std::uint64_t low(std::uint64_t e) { return e >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << e) - 1; }

/// Fold a subset of Z/kZ (k <= 64) onto Z/eZ.
constexpr std::uint64_t reduce(std::uint64_t s, std::uint64_t k, std::uint64_t e) {
  std::uint64_t out = 0;
  for (std::uint64_t off = 0; off < k; off += e) out |= (s >> off) & low(e);
  return out;
}

/// Rotation of a subset of Z/eZ (e <= 64) by d.
constexpr std::uint64_t rotate(std::uint64_t s, std::uint64_t e, std::uint64_t d) {
  d %= e;
  if (d == 0) return s;
  return ((s << d) | (s >> (e - d))) & low(e);
}

}  // namespace small_mask

}  // namespace transfer
