#include "transfer/residue_mask.hpp"

#include <stdexcept>

namespace transfer {

ResidueMask::ResidueMask(std::uint64_t modulus) : modulus_(modulus), words_((modulus + 63) / 64, 0) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
}

std::uint64_t ResidueMask::count() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return c;
}

ResidueMask ResidueMask::reduced(std::uint64_t e) const {
  if (e == 0 || modulus_ % e != 0) throw std::invalid_argument("reduction modulus must divide the modulus");
  ResidueMask out(e);
  if (modulus_ <= 64) {
    out.words_[0] = small_mask::reduce(words_[0], modulus_, e);
    return out;
  }
  for_each([&](std::uint64_t x) { out.set(x % e); });
  return out;
}

bool ResidueMask::is_translation_invariant(std::uint64_t d) const {
  if (modulus_ <= 64) return small_mask::rotate(words_[0], modulus_, d) == words_[0];
  d %= modulus_;
  bool ok = true;
  // Translation is a bijection, so S + d contained in S already forces equality.
  for_each([&](std::uint64_t x) {
    if (!ok) return;
    std::uint64_t y = x + d;
    if (y >= modulus_) y -= modulus_;
    ok = test(y);
  });
  return ok;
}

std::vector<std::uint64_t> ResidueMask::members() const {
  std::vector<std::uint64_t> out;
  for_each([&](std::uint64_t x) { out.push_back(x); });
  return out;
}

}  // namespace transfer
