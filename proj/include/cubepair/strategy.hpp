#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubepair/cube.hpp"

namespace cubepair {

// A set of edges of Q_n that Breaker uses as pairs, together with the subcube
// dimension k it claims to block. Edges are kept sorted in canonical order.
struct PairingStrategy {
  int n = 0;
  int k = 0;
  std::string name;
  std::vector<Edge> edges;

  PairingStrategy() = default;
  PairingStrategy(int n, int k, std::string name, std::vector<Edge> edges);

  std::size_t size() const { return edges.size(); }
  bool contains(const Edge& e) const;

  friend bool operator==(const PairingStrategy&, const PairingStrategy&) = default;
};

// Members share (n, k).
struct StrategyFamily {
  std::vector<PairingStrategy> members;
  std::string provenance;
};

std::uint64_t edge_count_of_cube(int n);

// Parses a listing such as "(v,0,0,0), (0,v,1,0)" or "v000 0v10".
std::vector<Edge> parse_edge_list(std::string_view listing);

// Orbit of `seed` under cyclic rotation of all n coordinates, coordinate i
// moving to i+1 (mod n) together with the 'v'. Returned in rotation order
// without duplicates.
std::vector<Edge> cyclic_orbit(const Edge& seed);

// The explicitly listed strategies. All are checked to be matchings on load.
PairingStrategy ps_4_2();
PairingStrategy ps_j_4_2(int j);
PairingStrategy ps_j_3_2(int j);
PairingStrategy bv_3();
PairingStrategy q6_3();

StrategyFamily ps_4_2_family();
StrategyFamily ps_3_2_family();

}  // namespace cubepair
