#include <string>

#include "cubepair/errors.hpp"
#include "cubepair/strategy.hpp"
#include "cubepair/verifier.hpp"

namespace cubepair {

namespace {

// Listings in the (v,0,1,0) notation, coordinate 1 leftmost.
constexpr const char* kPs42[4] = {
    "(v,0,0,0), (0,v,1,0), (0,0,v,1), (0,1,0,v), (v,1,1,1), (1,v,0,1), (1,1,v,0), (1,0,1,v)",
    "(v,0,1,1), (0,v,0,1), (0,0,v,0), (0,1,1,v), (v,1,0,0), (1,v,1,0), (1,1,v,1), (1,0,0,v)",
    "(v,1,0,1), (0,v,1,1), (0,1,v,0), (0,0,0,v), (v,0,1,0), (1,v,0,0), (1,0,v,1), (1,1,1,v)",
    "(v,1,1,0), (0,v,0,0), (0,1,v,1), (0,0,1,v), (v,0,0,1), (1,v,1,1), (1,0,v,0), (1,1,0,v)",
};

constexpr const char* kPs32[4] = {
    "(v,0,0), (1,v,1), (0,1,v)",
    "(v,0,1), (0,v,0), (1,1,v)",
    "(v,1,0), (0,v,1), (1,0,v)",
    "(v,1,1), (1,v,0), (0,0,v)",
};

constexpr const char* kBv3 = "(v,0,1), (1,v,0), (0,1,v)";

constexpr const char* kQ63Seeds = "(v,0,1,0,0,0), (v,1,0,1,1,1), (v,0,1,1,0,0), (v,1,0,0,1,1)";

PairingStrategy load(int n, int k, std::string name, std::vector<Edge> edges) {
  PairingStrategy ps(n, k, std::move(name), std::move(edges));
  if (const auto conflict = find_matching_conflict(ps)) {
    throw PreconditionError("listed strategy " + ps.name + " is not a matching: " + to_string(conflict->first) +
                            " and " + to_string(conflict->second));
  }
  return ps;
}

void check_index(int j) {
  if (j < 0 || j > 3) throw DimensionError("strategy index j must be in 0..3");
}

}  // namespace

PairingStrategy ps_4_2() { return load(4, 2, "PS(4,2)", parse_edge_list(kPs42[0])); }

PairingStrategy ps_j_4_2(int j) {
  check_index(j);
  return load(4, 2, "PS_" + std::to_string(j) + "(4,2)", parse_edge_list(kPs42[j]));
}

PairingStrategy ps_j_3_2(int j) {
  check_index(j);
  return load(3, 2, "PS_" + std::to_string(j) + "(3,2)", parse_edge_list(kPs32[j]));
}

PairingStrategy bv_3() { return load(3, 2, "v_3", parse_edge_list(kBv3)); }

PairingStrategy q6_3() {
  std::vector<Edge> edges;
  for (const Edge& seed : parse_edge_list(kQ63Seeds)) {
    for (const Edge& e : cyclic_orbit(seed)) edges.push_back(e);
  }
  return load(6, 3, "Q(6,3) cyclic", std::move(edges));
}

StrategyFamily ps_4_2_family() {
  StrategyFamily fam;
  fam.provenance = "PS_j(4,2), j=0..3";
  for (int j = 0; j < 4; ++j) fam.members.push_back(ps_j_4_2(j));
  return fam;
}

StrategyFamily ps_3_2_family() {
  StrategyFamily fam;
  fam.provenance = "PS_j(3,2), j=0..3";
  for (int j = 0; j < 4; ++j) fam.members.push_back(ps_j_3_2(j));
  return fam;
}

}  // namespace cubepair
