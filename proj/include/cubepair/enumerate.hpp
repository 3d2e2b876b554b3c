#pragma once

// Canonical subcube enumeration. Subcubes of dimension k in Q_n are ordered by
// star mask (increasing integer value among masks of popcount k), then by
// fixed bits (increasing). Index i maps to the (i >> (n-k))-th star mask and
// the (i & (2^(n-k)-1))-th subset of the complement, so any index range can be
// scanned independently.

#include <cstdint>
#include <iterator>

#include "cubepair/cube.hpp"

namespace cubepair {

// Throws BudgetError when the value does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

// C(n, n-k) * 2^(n-k).
std::uint64_t subcube_count(int n, int k);

// Colex rank of a mask among masks with the same popcount.
std::uint64_t rank_mask(std::uint64_t mask);
std::uint64_t unrank_mask(std::uint64_t rank, int n, int k);

// Gosper's hack: the next larger integer with the same popcount.
constexpr std::uint64_t next_same_popcount(std::uint64_t m) {
  const std::uint64_t c = m & (~m + 1);
  const std::uint64_t r = m + c;
  return (((r ^ m) >> 2) / c) | r;
}

// Software pdep/pext: scatter the low bits of `value` into the set positions
// of `mask`, and the inverse.
std::uint64_t deposit_bits(std::uint64_t value, std::uint64_t mask);
std::uint64_t extract_bits(std::uint64_t value, std::uint64_t mask);

Subcube subcube_at(int n, int k, std::uint64_t index);
std::uint64_t subcube_index(const Subcube& s);

// Calls fn(star_mask, fixed_bits) for every k-subcube with index in
// [begin, end) in canonical order. Stops early when fn returns false and
// returns the index it stopped at (or `end`).
template <class Fn>
std::uint64_t for_each_subcube(int n, int k, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
  if (begin >= end) return end;
  const int fixed_dims = n - k;
  const std::uint64_t per_mask = std::uint64_t{1} << fixed_dims;
  const std::uint64_t full = low_mask(n);
  std::uint64_t mask = unrank_mask(begin >> fixed_dims, n, k);
  std::uint64_t complement = full & ~mask;
  std::uint64_t fixed = deposit_bits(begin & (per_mask - 1), complement);
  std::uint64_t in_mask = begin & (per_mask - 1);
  for (std::uint64_t i = begin; i < end; ++i) {
    if (!fn(mask, fixed)) return i;
    if (++in_mask == per_mask) {
      in_mask = 0;
      if (k > 0 && i + 1 < end) mask = next_same_popcount(mask);
      complement = full & ~mask;
      fixed = 0;
    } else {
      fixed = (fixed - complement) & complement;
    }
  }
  return end;
}

// Calls fn(bits) for every vertex of the subcube in increasing order of the
// starred part.
template <class Fn>
void for_each_vertex(std::uint64_t star_mask, std::uint64_t fixed_bits, Fn&& fn) {
  std::uint64_t sub = 0;
  do {
    fn(fixed_bits | sub);
    sub = (sub - star_mask) & star_mask;
  } while (sub != 0);
}

// Input range over all k-subcubes of Q_n in canonical order.
class SubcubeStream {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Subcube;
    using difference_type = std::ptrdiff_t;
    using pointer = const Subcube*;
    using reference = Subcube;

    iterator() = default;
    Subcube operator*() const { return {n_, mask_, fixed_}; }
    iterator& operator++();
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    friend class SubcubeStream;
    iterator(int n, int k, std::uint64_t index, std::uint64_t count);
    int n_ = 0;
    int k_ = 0;
    std::uint64_t index_ = 0;
    std::uint64_t count_ = 0;
    std::uint64_t mask_ = 0;
    std::uint64_t fixed_ = 0;
  };

  SubcubeStream(int n, int k);
  SubcubeStream(int n, int k, std::uint64_t begin, std::uint64_t end);

  iterator begin() const { return iterator(n_, k_, begin_, end_); }
  iterator end() const { return iterator(n_, k_, end_, end_); }
  std::uint64_t size() const { return end_ - begin_; }

 private:
  int n_;
  int k_;
  std::uint64_t begin_;
  std::uint64_t end_;
};

inline SubcubeStream enumerate_subcubes(int n, int k) { return SubcubeStream(n, k); }

}  // namespace cubepair
