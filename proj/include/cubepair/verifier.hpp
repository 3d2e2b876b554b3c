#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cubepair/cube.hpp"
#include "cubepair/strategy.hpp"

namespace cubepair {

struct MatchingConflict {
  Edge first;
  Edge second;
  Vertex shared;
};

// The conflict with the smallest shared vertex, if any vertex lies in two
// edges (duplicate edges count).
std::optional<MatchingConflict> find_matching_conflict(const PairingStrategy& ps);
inline bool is_matching(const PairingStrategy& ps) { return !find_matching_conflict(ps).has_value(); }

struct CoverageResult {
  bool covered = true;
  std::optional<Subcube> counterexample;  // first uncovered subcube in canonical order
  std::uint64_t subcubes_checked = 0;
  double seconds = 0.0;
};

// Exhaustive: every k-subcube of Q_n must contain an edge of ps.
CoverageResult check_coverage(const PairingStrategy& ps, int k, int jobs = 1);
inline bool covers_all(const PairingStrategy& ps, int k, int jobs = 1) { return check_coverage(ps, k, jobs).covered; }

// `samples` uniformly random k-subcubes drawn from a seeded generator; the
// counterexample is the first uncovered sample in draw order.
CoverageResult check_coverage_sampled(const PairingStrategy& ps, int k, std::uint64_t samples, std::uint64_t seed);

Subcube random_subcube(int n, int k, std::mt19937_64& rng);

// The subcubes among `targets` that no edge of ps handles, in input order.
std::vector<Subcube> unhandled_among(const PairingStrategy& ps, std::span<const Subcube> targets);

struct PartitionDefect {
  enum class Kind { dimension_mismatch, duplicate_edge, missing_edge } kind;
  Edge edge;
  std::size_t member_a = 0;
  std::size_t member_b = 0;
  std::string describe() const;
};

// Members pairwise disjoint and their union equal to E(Q_n).
std::optional<PartitionDefect> find_partition_defect(const StrategyFamily& fam);
inline bool is_edge_partition(const StrategyFamily& fam) { return !find_partition_defect(fam).has_value(); }

struct PolychromaticResult {
  bool ok = true;
  std::string reason;
  std::size_t member = 0;
  std::optional<Subcube> counterexample;
};

// Every member is a matching and every d-subcube contains an edge of every
// member, i.e. the family is a d-polychromatic proper edge coloring.
PolychromaticResult polychromatic_proper_check(const StrategyFamily& fam, int d, int jobs = 1);

// Smallest k for which some matching of Q_n covers every k-subcube. n <= 4.
int brute_force_min_k(int n);

// Whether some matching of Q_n blocks all k-subcubes (exhaustive backtracking).
bool matching_cover_exists(int n, int k);

struct MinimalityStats {
  std::size_t edges = 0;
  std::size_t essential = 0;  // edges that are the only handler of some subcube
  std::size_t redundant() const { return edges - essential; }
};

// Never asserts anything about the strategy; only measures it. n <= 20.
MinimalityStats minimality_probe(const PairingStrategy& ps, int k);

}  // namespace cubepair
