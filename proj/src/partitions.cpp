#include "cubepair/partitions.hpp"

#include <algorithm>
#include <sstream>

#include "cubepair/enumerate.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/parallel.hpp"

namespace cubepair {

namespace {

constexpr int kDenseLabels = 18;
constexpr int kMaxSingletonDimension = 20;

std::uint64_t reverse_bits(std::uint64_t bits, int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    if ((bits >> i) & 1) out |= std::uint64_t{1} << (n - 1 - i);
  }
  return out;
}

std::uint64_t int_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > 64) return 64;  // callers only compare against 63
    r *= base;
  }
  return r;
}

}  // namespace

PartitionFamily::PartitionFamily(int n, Parity side, std::uint32_t cell_count, int hit_dimension, Labeler labeler)
    : n_(n),
      side_(side),
      cell_count_(cell_count),
      hit_dimension_(hit_dimension),
      labeler_(std::make_shared<const Labeler>(std::move(labeler))) {
  check_dimension(n);
  if (n < 1) throw DimensionError("partition needs n >= 1");
  if (cell_count == 0) throw DimensionError("partition needs at least one cell");
  if (n <= kDenseLabels) {
    dense_.assign(std::size_t{1} << n, 0);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      if (parity_of(v) == side) dense_[static_cast<std::size_t>(v)] = (*labeler_)(v);
    }
  }
}

PartitionFamily PartitionFamily::singletons(int n, Parity side, SingletonOrder order) {
  if (n < 1 || n > kMaxSingletonDimension) throw DimensionError("singleton partitions are limited to 1 <= n <= 20");
  std::vector<std::uint64_t> members;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    if (parity_of(v) == side) members.push_back(v);
  }
  if (order == SingletonOrder::big_endian_rank) {
    std::sort(members.begin(), members.end(),
              [n](std::uint64_t a, std::uint64_t b) { return reverse_bits(a, n) < reverse_bits(b, n); });
  }
  auto table = std::make_shared<std::vector<std::uint32_t>>(std::size_t{1} << n, 0);
  for (std::size_t i = 0; i < members.size(); ++i) (*table)[static_cast<std::size_t>(members[i])] = static_cast<std::uint32_t>(i);
  return PartitionFamily(n, side, static_cast<std::uint32_t>(members.size()), n,
                         [table](std::uint64_t bits) { return (*table)[static_cast<std::size_t>(bits)]; });
}

std::uint64_t PartitionFamily::cell_size() const { return (std::uint64_t{1} << (n_ - 1)) / cell_count_; }

std::uint32_t PartitionFamily::index_of(const Vertex& v) const {
  if (v.n != n_) throw DimensionError("index_of: vertex dimension does not match partition");
  if (parity(v) != side_) throw DimensionError("index_of: vertex " + to_string(v) + " has the wrong parity");
  return label(v.bits);
}

std::vector<std::vector<std::uint64_t>> PartitionFamily::cells() const {
  if (n_ > 24) throw BudgetError("cannot materialise partitions beyond n = 24");
  std::vector<std::vector<std::uint64_t>> out(cell_count_);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n_); ++v) {
    if (parity_of(v) == side_) out[label(v)].push_back(v);
  }
  return out;
}

PartitionPair half_plus1(int k) {
  if (k < 1 || (std::uint64_t{1} << std::min(k, 7)) > 63) throw DimensionError("half_plus1 needs 1 <= k and 2^k <= 63");
  if (k == 1) {
    return {PartitionFamily::singletons(2, Parity::even), PartitionFamily::singletons(2, Parity::odd)};
  }
  const auto child = std::make_shared<const PartitionPair>(half_plus1(k - 1));
  const int w = 1 << (k - 1);
  const std::uint32_t h = child->even.cell_count();
  const std::uint64_t low = low_mask(w);
  const int hit = (1 << (k - 1)) + 1;

  auto even = [child, w, h, low](std::uint64_t bits) -> std::uint32_t {
    const std::uint64_t x = bits & low;
    const std::uint64_t y = bits >> w;
    if (parity_of(x) == Parity::even) return (child->even.label(x) + child->even.label(y)) % h;  // G
    return h + (child->odd.label(x) + child->odd.label(y)) % h;                                  // H
  };
  auto odd = [child, w, h, low](std::uint64_t bits) -> std::uint32_t {
    const std::uint64_t x = bits & low;
    const std::uint64_t y = bits >> w;
    if (parity_of(x) == Parity::even) return (child->even.label(x) + child->odd.label(y)) % h;  // I
    return h + (child->odd.label(x) + child->even.label(y)) % h;                                // J
  };
  return {PartitionFamily(2 * w, Parity::even, 2 * h, hit, even), PartitionFamily(2 * w, Parity::odd, 2 * h, hit, odd)};
}

PartitionPair partition_even_odd(int c, int levels) {
  if (c < 2) throw DimensionError("partition_even_odd needs c >= 2");
  if (levels < 1) throw DimensionError("partition_even_odd needs at least one level");
  if (int_pow(static_cast<std::uint64_t>(c), levels) > 63) throw DimensionError("c^levels exceeds 63");
  if (levels == 1) {
    return {PartitionFamily::singletons(c, Parity::even), PartitionFamily::singletons(c, Parity::odd)};
  }
  const auto child = std::make_shared<const PartitionPair>(partition_even_odd(c, levels - 1));
  const int w = static_cast<int>(int_pow(static_cast<std::uint64_t>(c), levels - 1));
  const int n = w * c;
  const std::uint32_t m = child->even.cell_count();

  // Rank of each per-bin parity pattern among patterns of the same parity,
  // ordered as binary numerals with bin 1 most significant.
  auto ranks = std::make_shared<std::vector<std::uint32_t>>(std::size_t{1} << c, 0);
  for (Parity side : {Parity::even, Parity::odd}) {
    std::vector<std::uint64_t> patterns;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << c); ++b) {
      if (parity_of(b) == side) patterns.push_back(b);
    }
    std::sort(patterns.begin(), patterns.end(),
              [c](std::uint64_t a, std::uint64_t b) { return reverse_bits(a, c) < reverse_bits(b, c); });
    for (std::size_t i = 0; i < patterns.size(); ++i) (*ranks)[static_cast<std::size_t>(patterns[i])] = static_cast<std::uint32_t>(i);
  }

  auto labeler = [child, ranks, c, w, m](std::uint64_t bits) -> std::uint32_t {
    std::uint64_t pattern = 0;
    std::uint64_t sum = 0;
    const std::uint64_t low = low_mask(w);
    for (int j = 0; j < c; ++j) {
      const std::uint64_t x = (bits >> (j * w)) & low;
      if (parity_of(x) == Parity::odd) {
        pattern |= std::uint64_t{1} << j;
        sum += child->odd.label(x);
      } else {
        sum += child->even.label(x);
      }
    }
    return (*ranks)[static_cast<std::size_t>(pattern)] * m + static_cast<std::uint32_t>(sum % m);
  };
  const std::uint32_t cells = (1u << (c - 1)) * m;
  const int hit = n - w + 1;
  return {PartitionFamily(n, Parity::even, cells, hit, labeler), PartitionFamily(n, Parity::odd, cells, hit, labeler)};
}

namespace {

// Labels met by the subcube, restricted to vertices of `side`.
void mark_cells(const PartitionFamily& p, std::uint64_t mask, std::uint64_t fixed, std::vector<char>& seen) {
  for_each_vertex(mask, fixed, [&](std::uint64_t u) {
    if (parity_of(u) == p.side()) seen[p.label(u)] = 1;
  });
}

}  // namespace

std::optional<HitFailure> verify_hit_property(const PartitionFamily& p, int d, int jobs) {
  if (d < 0 || d > p.n()) throw DimensionError("hit dimension outside [0, n]");
  const int n = p.n();
  const std::uint64_t total = subcube_count(n, d);
  const std::uint32_t cells = p.cell_count();
  auto scan = [&](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    std::vector<char> seen(cells);
    const std::uint64_t stop = for_each_subcube(n, d, b, e, [&](std::uint64_t mask, std::uint64_t fixed) {
      std::fill(seen.begin(), seen.end(), 0);
      std::uint32_t distinct = 0;
      std::uint64_t sub = 0;
      do {
        const std::uint64_t u = fixed | sub;
        if (parity_of(u) == p.side()) {
          char& s = seen[p.label(u)];
          if (!s) {
            s = 1;
            if (++distinct == cells) return true;
          }
        }
        sub = (sub - mask) & mask;
      } while (sub != 0);
      return false;
    });
    if (stop < e) return stop;
    return std::nullopt;
  };
  const auto first = find_first_failure(total, jobs, scan);
  if (!first) return std::nullopt;
  const Subcube s = subcube_at(n, d, *first);
  std::vector<char> seen(cells);
  mark_cells(p, s.star_mask, s.fixed_bits, seen);
  const auto missing = static_cast<std::uint32_t>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
  return HitFailure{s, missing};
}

std::optional<HitFailure> verify_double_hit(const PartitionPair& pair, int d, int jobs) {
  if (pair.even.n() != pair.odd.n() || pair.even.cell_count() != pair.odd.cell_count()) {
    throw DimensionError("paired partitions must share dimension and cell count");
  }
  const int n = pair.even.n();
  if (d < 0 || d > n) throw DimensionError("hit dimension outside [0, n]");
  const std::uint32_t cells = pair.even.cell_count();
  auto missing_in = [&](std::uint64_t mask, std::uint64_t fixed) -> std::optional<std::uint32_t> {
    std::vector<char> even(cells), odd(cells);
    mark_cells(pair.even, mask, fixed, even);
    mark_cells(pair.odd, mask, fixed, odd);
    for (std::uint32_t l = 0; l < cells; ++l) {
      if (!even[l] || !odd[l]) return l;
    }
    return std::nullopt;
  };
  auto scan = [&](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    const std::uint64_t stop = for_each_subcube(
        n, d, b, e, [&](std::uint64_t mask, std::uint64_t fixed) { return !missing_in(mask, fixed).has_value(); });
    if (stop < e) return stop;
    return std::nullopt;
  };
  const auto first = find_first_failure(subcube_count(n, d), jobs, scan);
  if (!first) return std::nullopt;
  const Subcube s = subcube_at(n, d, *first);
  return HitFailure{s, *missing_in(s.star_mask, s.fixed_bits)};
}

std::string export_partition(const PartitionFamily& p) {
  std::ostringstream out;
  const auto cells = p.cells();
  for (std::uint32_t l = 0; l < cells.size(); ++l) {
    for (std::uint64_t v : cells[l]) out << l << ": " << to_string(Vertex(p.n(), v)) << '\n';
  }
  return out.str();
}

}  // namespace cubepair
