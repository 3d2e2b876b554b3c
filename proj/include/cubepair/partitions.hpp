#pragma once

// Indexed partitions of the even (or odd) parity class of {0,1}^n such that
// every subcube of a given dimension meets every cell. They drive the choice
// of pool strategy in the rotating constructions: a vertex's label is its
// Index, and v-bin strategies are picked by summing labels mod m.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubepair/cube.hpp"

namespace cubepair {

// Ordering of singleton cells in base-case partitions. `by_encoding` sorts by
// the word value (coordinate 1 least significant); `big_endian_rank` reads the
// vector as a binary numeral with coordinate 1 most significant, which is the
// indexing used in the worked Q(9,4) rotation example.
enum class SingletonOrder { by_encoding, big_endian_rank };

class PartitionFamily {
 public:
  using Labeler = std::function<std::uint32_t(std::uint64_t)>;

  PartitionFamily(int n, Parity side, std::uint32_t cell_count, int hit_dimension, Labeler labeler);

  // Every vertex of the class in its own cell.
  static PartitionFamily singletons(int n, Parity side, SingletonOrder order = SingletonOrder::by_encoding);

  int n() const { return n_; }
  Parity side() const { return side_; }
  std::uint32_t cell_count() const { return cell_count_; }
  int hit_dimension() const { return hit_dimension_; }
  std::uint64_t cell_size() const;

  // 0-based label of the cell containing v. Throws on wrong parity/dimension.
  std::uint32_t index_of(const Vertex& v) const;
  // Unchecked variant for hot loops; bits must have the family's parity.
  std::uint32_t label(std::uint64_t bits) const {
    return dense_.empty() ? (*labeler_)(bits) : dense_[static_cast<std::size_t>(bits)];
  }

  // Materialised cells, each sorted by encoding. n <= 24.
  std::vector<std::vector<std::uint64_t>> cells() const;

 private:
  int n_;
  Parity side_;
  std::uint32_t cell_count_;
  int hit_dimension_;
  std::shared_ptr<const Labeler> labeler_;
  std::vector<std::uint32_t> dense_;
};

struct PartitionPair {
  PartitionFamily even;
  PartitionFamily odd;
};

// Partitions of the classes of {0,1}^(2^k) into 2^k cells each, every
// (2^(k-1)+1)-subcube meeting every cell. Built by the G/H/I/J recursion
// (even cells G_0.., H_0..; odd cells I_0.., J_0..).
PartitionPair half_plus1(int k);

// Partitions of the classes of {0,1}^(c^levels) into (2^(c-1))^levels cells,
// every (c^levels - c^(levels-1) + 1)-subcube meeting every cell. Cell label
// is rank(b) * M + l where b is the per-bin parity pattern (ranked in
// lexicographic order of its written form) and l the label sum mod M.
PartitionPair partition_even_odd(int c, int levels);

struct HitFailure {
  Subcube subcube;
  std::uint32_t missing_cell = 0;
};

// First (subcube, cell) pair in canonical order with the subcube missing the
// cell, or nullopt when every d-subcube meets every cell.
std::optional<HitFailure> verify_hit_property(const PartitionFamily& p, int d, int jobs = 1);

// Pairs cell l of the even family with cell l of the odd family and checks
// that every d-subcube holds at least two vertices of every paired color.
std::optional<HitFailure> verify_double_hit(const PartitionPair& pair, int d, int jobs = 1);

// One "label: bitstring" line per vertex, grouped by label.
std::string export_partition(const PartitionFamily& p);

}  // namespace cubepair
