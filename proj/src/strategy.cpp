#include "cubepair/strategy.hpp"

#include <algorithm>
#include <cctype>

#include "cubepair/errors.hpp"

namespace cubepair {

PairingStrategy::PairingStrategy(int n_, int k_, std::string name_, std::vector<Edge> edges_)
    : n(n_), k(k_), name(std::move(name_)), edges(std::move(edges_)) {
  check_dimension(n);
  if (k < 0 || k > n) throw DimensionError("strategy k outside [0, n]");
  for (const Edge& e : edges) {
    if (e.n != n) throw DimensionError("strategy edge " + to_string(e) + " has the wrong dimension");
  }
  std::sort(edges.begin(), edges.end());
}

bool PairingStrategy::contains(const Edge& e) const { return std::binary_search(edges.begin(), edges.end(), e); }

std::uint64_t edge_count_of_cube(int n) {
  check_dimension(n);
  return n == 0 ? 0 : static_cast<std::uint64_t>(n) << (n - 1);
}

std::vector<Edge> parse_edge_list(std::string_view listing) {
  std::vector<Edge> out;
  std::string token;
  bool in_paren = false;
  auto flush = [&] {
    if (!token.empty()) out.push_back(parse_edge(token));
    token.clear();
  };
  for (char c : listing) {
    if (c == '(') {
      flush();
      in_paren = true;
    } else if (c == ')') {
      flush();
      in_paren = false;
    } else if (c == ',' && in_paren) {
      continue;
    } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!in_paren) flush();
    } else {
      token.push_back(c);
    }
  }
  if (in_paren) throw ParseError("unbalanced parenthesis in edge listing");
  flush();
  return out;
}

std::vector<Edge> cyclic_orbit(const Edge& seed) {
  const int n = seed.n;
  std::vector<Edge> orbit;
  Edge e = seed;
  for (int step = 0; step < n; ++step) {
    if (std::find(orbit.begin(), orbit.end(), e) != orbit.end()) break;
    orbit.push_back(e);
    const std::uint64_t rotated = ((e.base << 1) | (e.base >> (n - 1))) & low_mask(n);
    e = Edge(n, rotated, (e.free_coord + 1) % n);
  }
  return orbit;
}

}  // namespace cubepair
