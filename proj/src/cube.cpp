#include "cubepair/cube.hpp"

#include <numeric>

#include "cubepair/errors.hpp"

namespace cubepair {

void check_dimension(int n) {
  if (n < 0 || n > kMaxDimension) {
    throw DimensionError("dimension " + std::to_string(n) + " outside [0, 63]");
  }
}

Vertex::Vertex(int n_, std::uint64_t bits_) : n(n_), bits(bits_) {
  check_dimension(n);
  if (bits & ~low_mask(n)) throw DimensionError("vertex bits exceed dimension " + std::to_string(n));
}

Edge::Edge(int n_, std::uint64_t base_, int free_coord_)
    : base(base_), n(static_cast<std::int8_t>(n_)), free_coord(static_cast<std::int8_t>(free_coord_)) {
  check_dimension(n_);
  if (free_coord_ < 0 || free_coord_ >= n_) throw DimensionError("free coordinate outside [0, n)");
  if (base_ & ~low_mask(n_)) throw DimensionError("edge base exceeds dimension " + std::to_string(n_));
  if (base_ & (std::uint64_t{1} << free_coord_)) throw DimensionError("edge base has its free coordinate set");
}

Edge Edge::through(const Vertex& endpoint, int coord) {
  return Edge(endpoint.n, endpoint.bits & ~(std::uint64_t{1} << coord), coord);
}

Subcube::Subcube(int n_, std::uint64_t star, std::uint64_t fixed) : n(n_), star_mask(star), fixed_bits(fixed) {
  check_dimension(n);
  if ((star | fixed) & ~low_mask(n)) throw DimensionError("subcube bits exceed dimension " + std::to_string(n));
  if (star & fixed) throw DimensionError("subcube fixes a value on a starred coordinate");
}

Parity parity(const Vertex& v) { return parity_of(v.bits); }

namespace {

void require_same_dimension(int a, int b) {
  if (a != b) {
    throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

bool handles(const Edge& e, const Subcube& s) {
  require_same_dimension(e.n, s.n);
  return (s.star_mask & e.direction()) && s.contains(e.base);
}

bool consistent(const Vertex& v, const Subcube& s) {
  require_same_dimension(v.n, s.n);
  return s.contains(v.bits);
}

bool consistent(const Edge& e, const Subcube& s) { return handles(e, s); }

BinLayout::BinLayout(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw DimensionError("bin layout needs at least one bin");
  offsets_.reserve(sizes_.size());
  for (int w : sizes_) {
    if (w <= 0) throw DimensionError("bin widths must be positive");
    offsets_.push_back(total_);
    total_ += w;
  }
  check_dimension(total_);
}

BinLayout BinLayout::uniform(int bins, int width) {
  if (bins <= 0) throw DimensionError("bin count must be positive");
  return BinLayout(std::vector<int>(static_cast<std::size_t>(bins), width));
}

int BinLayout::size(int j) const {
  if (j < 0 || j >= bin_count()) throw DimensionError("invalid bin index " + std::to_string(j));
  return sizes_[static_cast<std::size_t>(j)];
}

int BinLayout::offset(int j) const {
  if (j < 0 || j >= bin_count()) throw DimensionError("invalid bin index " + std::to_string(j));
  return offsets_[static_cast<std::size_t>(j)];
}

int BinLayout::bin_of(int coord) const {
  if (coord < 0 || coord >= total_) throw DimensionError("coordinate outside layout");
  int j = 0;
  while (coord >= offsets_[static_cast<std::size_t>(j)] + sizes_[static_cast<std::size_t>(j)]) ++j;
  return j;
}

Subcube restrict(const Subcube& s, const BinLayout& layout, int j) {
  require_same_dimension(s.n, layout.n_total());
  const int off = layout.offset(j);
  const std::uint64_t m = low_mask(layout.size(j));
  return Subcube(layout.size(j), (s.star_mask >> off) & m, (s.fixed_bits >> off) & m);
}

Vertex restrict(const Vertex& v, const BinLayout& layout, int j) {
  require_same_dimension(v.n, layout.n_total());
  return Vertex(layout.size(j), (v.bits >> layout.offset(j)) & low_mask(layout.size(j)));
}

BinLoad classify_bin(const Subcube& r, int k) {
  const int fixed = r.fixed_count();
  if (fixed == r.n) return BinLoad::full;
  if (fixed <= r.n - k) return BinLoad::light;
  return BinLoad::heavy;
}

BinPart glue(std::span<const BinPart> parts, const BinLayout& layout) {
  if (static_cast<int>(parts.size()) != layout.bin_count()) {
    throw DimensionError("glue: part count does not match bin count");
  }
  std::uint64_t bits = 0;
  int free_coord = -1;
  for (int j = 0; j < layout.bin_count(); ++j) {
    const BinPart& part = parts[static_cast<std::size_t>(j)];
    const int off = layout.offset(j);
    if (const auto* v = std::get_if<Vertex>(&part)) {
      require_same_dimension(v->n, layout.size(j));
      bits |= v->bits << off;
    } else {
      const Edge& e = std::get<Edge>(part);
      require_same_dimension(e.n, layout.size(j));
      if (free_coord >= 0) throw DimensionError("glue: more than one edge part");
      free_coord = off + e.free_coord;
      bits |= e.base << off;
    }
  }
  if (free_coord < 0) return Vertex(layout.n_total(), bits);
  return Edge(layout.n_total(), bits, free_coord);
}

namespace {

// Strips "(", ")", "," and whitespace so both notations parse alike.
std::string compact(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '(' || c == ')' || c == ',' || c == ' ' || c == '\t') continue;
    out.push_back(c);
  }
  if (out.empty()) throw ParseError("empty vector");
  if (out.size() > static_cast<std::size_t>(kMaxDimension)) throw ParseError("vector longer than 63 coordinates");
  return out;
}

struct Pattern {
  int n = 0;
  std::uint64_t ones = 0;
  std::uint64_t stars = 0;
  std::uint64_t vs = 0;
};

Pattern parse_pattern(std::string_view text) {
  const std::string s = compact(text);
  Pattern p;
  p.n = static_cast<int>(s.size());
  for (int i = 0; i < p.n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    switch (s[static_cast<std::size_t>(i)]) {
      case '0': break;
      case '1': p.ones |= bit; break;
      case '*': p.stars |= bit; break;
      case 'v': p.vs |= bit; break;
      default: throw ParseError("unexpected character '" + std::string(1, s[static_cast<std::size_t>(i)]) + "' in vector");
    }
  }
  return p;
}

}  // namespace

Vertex parse_vertex(std::string_view text) {
  const Pattern p = parse_pattern(text);
  if (p.stars || p.vs) throw ParseError("vertex may only contain 0 and 1: " + std::string(text));
  return Vertex(p.n, p.ones);
}

Edge parse_edge(std::string_view text) {
  const Pattern p = parse_pattern(text);
  if (p.stars) throw ParseError("edge may not contain '*': " + std::string(text));
  if (std::popcount(p.vs) != 1) throw ParseError("edge needs exactly one 'v': " + std::string(text));
  return Edge(p.n, p.ones, std::countr_zero(p.vs));
}

Subcube parse_subcube(std::string_view text) {
  const Pattern p = parse_pattern(text);
  if (p.vs) throw ParseError("subcube may not contain 'v': " + std::string(text));
  return Subcube(p.n, p.stars, p.ones);
}

std::string to_string(const Vertex& v) {
  std::string s(static_cast<std::size_t>(v.n), '0');
  for (int i = 0; i < v.n; ++i) {
    if ((v.bits >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::string to_string(const Edge& e) {
  std::string s = to_string(e.low());
  s[static_cast<std::size_t>(e.free_coord)] = 'v';
  return s;
}

std::string to_string(const Subcube& c) {
  std::string s(static_cast<std::size_t>(c.n), '0');
  for (int i = 0; i < c.n; ++i) {
    if ((c.star_mask >> i) & 1) {
      s[static_cast<std::size_t>(i)] = '*';
    } else if ((c.fixed_bits >> i) & 1) {
      s[static_cast<std::size_t>(i)] = '1';
    }
  }
  return s;
}

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

}  // namespace cubepair
