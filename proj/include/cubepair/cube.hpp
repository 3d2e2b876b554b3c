#pragma once

// Vertices, edges and subcubes of the hypercube Q_n encoded in machine words.
//
// Coordinate convention: coordinate i (1-based, as written in vectors like
// (v,0,1,0)) is bit i-1 of the word, and is the i-th character, counting
// from the left, of the textual form. So "100v" is the edge whose base has
// bit 0 set and whose free coordinate is bit 3.

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cubepair {

inline constexpr int kMaxDimension = 63;

enum class Parity { even, odd };

constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

constexpr Parity parity_of(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? Parity::odd : Parity::even;
}

void check_dimension(int n);

struct Vertex {
  int n = 0;
  std::uint64_t bits = 0;

  Vertex() = default;
  Vertex(int n, std::uint64_t bits);

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// An edge of Q_n in canonical form: `base` has bit `free_coord` cleared and
// the endpoints are base and base | (1 << free_coord).
struct Edge {
  std::uint64_t base = 0;
  std::int8_t n = 0;
  std::int8_t free_coord = 0;

  Edge() = default;
  Edge(int n, std::uint64_t base, int free_coord);

  // The edge through `endpoint` in direction `coord`; either endpoint works.
  static Edge through(const Vertex& endpoint, int coord);

  Vertex low() const { return {n, base}; }
  Vertex high() const { return {n, base | (std::uint64_t{1} << free_coord)}; }
  std::uint64_t direction() const { return std::uint64_t{1} << free_coord; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Canonical strategy order: by free coordinate, then base.
inline bool operator<(const Edge& a, const Edge& b) {
  if (a.free_coord != b.free_coord) return a.free_coord < b.free_coord;
  return a.base < b.base;
}

struct Subcube {
  int n = 0;
  std::uint64_t star_mask = 0;
  std::uint64_t fixed_bits = 0;

  Subcube() = default;
  Subcube(int n, std::uint64_t star_mask, std::uint64_t fixed_bits);

  static Subcube point(const Vertex& v) { return {v.n, 0, v.bits}; }
  static Subcube whole(int n) { return {n, low_mask(n), 0}; }

  int dimension() const { return std::popcount(star_mask); }
  int fixed_count() const { return n - dimension(); }
  bool contains(std::uint64_t bits) const { return (bits & ~star_mask) == fixed_bits; }

  friend bool operator==(const Subcube&, const Subcube&) = default;
};

Parity parity(const Vertex& v);

// An edge handles a subcube when both of its endpoints lie in it.
bool handles(const Edge& e, const Subcube& s);

// Membership of a vertex (or, for an edge, of both endpoints) in a subcube.
bool consistent(const Vertex& v, const Subcube& s);
bool consistent(const Edge& e, const Subcube& s);

// Bin decomposition of the coordinates: bin j covers
// [offset(j), offset(j) + size(j)).
class BinLayout {
 public:
  explicit BinLayout(std::vector<int> sizes);
  static BinLayout uniform(int bins, int width);

  int bin_count() const { return static_cast<int>(sizes_.size()); }
  int size(int j) const;
  int offset(int j) const;
  int n_total() const { return total_; }
  std::uint64_t mask(int j) const { return low_mask(size(j)) << offset(j); }
  // The bin containing coordinate `coord`.
  int bin_of(int coord) const;

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

Subcube restrict(const Subcube& s, const BinLayout& layout, int j);
Vertex restrict(const Vertex& v, const BinLayout& layout, int j);

enum class BinLoad { full, heavy, light };

// Classifies a bin restriction for a bin strategy blocking k-subcubes:
// full when every coordinate is fixed, heavy with n-k+1..n-1 fixed,
// light with at most n-k fixed.
BinLoad classify_bin(const Subcube& r, int k);

using BinPart = std::variant<Vertex, Edge>;

// Concatenates per-bin vectors. At most one part may be an edge; the result is
// an edge exactly when one part was.
BinPart glue(std::span<const BinPart> parts, const BinLayout& layout);

// Textual forms. Parsers accept both the compact form ("10v1") and the
// parenthesised form used in listings ("(1,0,v,1)").
Vertex parse_vertex(std::string_view text);
Edge parse_edge(std::string_view text);
Subcube parse_subcube(std::string_view text);

std::string to_string(const Vertex& v);
std::string to_string(const Edge& e);
std::string to_string(const Subcube& s);
std::string to_string(Parity p);

}  // namespace cubepair
