#include "cubepair/enumerate.hpp"

#include <bit>

#include "cubepair/errors.hpp"

namespace cubepair {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > ~std::uint64_t{0}) throw BudgetError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t subcube_count(int n, int k) {
  check_dimension(n);
  if (k < 0 || k > n) throw DimensionError("subcube dimension outside [0, n]");
  const unsigned __int128 total = static_cast<unsigned __int128>(binomial(n, k)) << (n - k);
  if (total > ~std::uint64_t{0}) throw BudgetError("subcube count overflows 64 bits");
  return static_cast<std::uint64_t>(total);
}

std::uint64_t rank_mask(std::uint64_t mask) {
  std::uint64_t rank = 0;
  int i = 0;
  while (mask) {
    const int p = std::countr_zero(mask);
    ++i;
    rank += binomial(p, i);
    mask &= mask - 1;
  }
  return rank;
}

std::uint64_t unrank_mask(std::uint64_t rank, int n, int k) {
  std::uint64_t mask = 0;
  int p = n - 1;
  for (int i = k; i >= 1; --i) {
    while (p >= i && binomial(p, i) > rank) --p;
    if (p < i - 1) throw DimensionError("mask rank out of range");
    if (binomial(p, i) <= rank) rank -= binomial(p, i);
    mask |= std::uint64_t{1} << p;
    --p;
  }
  return mask;
}

std::uint64_t deposit_bits(std::uint64_t value, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask; bit <<= 1) {
    const std::uint64_t low = mask & (~mask + 1);
    if (value & bit) out |= low;
    mask ^= low;
  }
  return out;
}

std::uint64_t extract_bits(std::uint64_t value, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask; bit <<= 1) {
    const std::uint64_t low = mask & (~mask + 1);
    if (value & low) out |= bit;
    mask ^= low;
  }
  return out;
}

Subcube subcube_at(int n, int k, std::uint64_t index) {
  if (index >= subcube_count(n, k)) throw DimensionError("subcube index out of range");
  const int fixed_dims = n - k;
  const std::uint64_t mask = unrank_mask(index >> fixed_dims, n, k);
  const std::uint64_t fixed = deposit_bits(index & low_mask(fixed_dims), low_mask(n) & ~mask);
  return Subcube(n, mask, fixed);
}

std::uint64_t subcube_index(const Subcube& s) {
  const int fixed_dims = s.n - s.dimension();
  return (rank_mask(s.star_mask) << fixed_dims) | extract_bits(s.fixed_bits, low_mask(s.n) & ~s.star_mask);
}

SubcubeStream::SubcubeStream(int n, int k) : SubcubeStream(n, k, 0, subcube_count(n, k)) {}

SubcubeStream::SubcubeStream(int n, int k, std::uint64_t begin, std::uint64_t end)
    : n_(n), k_(k), begin_(begin), end_(end) {
  const std::uint64_t total = subcube_count(n, k);
  if (begin > end || end > total) throw DimensionError("subcube index range out of bounds");
}

SubcubeStream::iterator::iterator(int n, int k, std::uint64_t index, std::uint64_t count)
    : n_(n), k_(k), index_(index), count_(count) {
  if (index_ < count_) {
    const Subcube s = subcube_at(n, k, index_);
    mask_ = s.star_mask;
    fixed_ = s.fixed_bits;
  }
}

SubcubeStream::iterator& SubcubeStream::iterator::operator++() {
  ++index_;
  if (index_ >= count_) return *this;
  const std::uint64_t complement = low_mask(n_) & ~mask_;
  if (fixed_ == complement) {
    mask_ = next_same_popcount(mask_);
    fixed_ = 0;
  } else {
    fixed_ = (fixed_ - complement) & complement;
  }
  return *this;
}

}  // namespace cubepair
