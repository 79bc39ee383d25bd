#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace trigraph {

// Fixed-size bit sequence packed into 64-bit words.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  // True iff every set bit of *this is also set in other.
  bool is_subset_of(const Bitset& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

  // Encodes the bits as an integer key; requires size() <= 64.
  std::uint64_t to_key() const {
    if (nbits_ > 64) throw std::invalid_argument("Bitset::to_key: too many bits");
    return words_.empty() ? 0 : words_[0];
  }
  static Bitset from_key(std::uint64_t key, std::size_t nbits) {
    if (nbits > 64) throw std::invalid_argument("Bitset::from_key: too many bits");
    Bitset b(nbits);
    if (!b.words_.empty()) b.words_[0] = key;
    return b;
  }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t intersect_count(const Bitset& a, const Bitset& b) {
  std::size_t c = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t k = 0; k < wa.size(); ++k) c += std::popcount(wa[k] & wb[k]);
  return c;
}

}  // namespace trigraph
