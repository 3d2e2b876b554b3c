#pragma once

// Strategy builders: bin constructions (plain and rotating), the recursive
// Q(4^(d+1), 4^d+1) and Q(3^(d+1), 3^d+1) families, the (n,k) -> (n+1,k+1)
// lift, truncation, and the best-k schedule for 3 <= n <= 63.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubepair/cube.hpp"
#include "cubepair/partitions.hpp"
#include "cubepair/strategy.hpp"
#include "cubepair/verifier.hpp"

namespace cubepair {

// Bin-set of one bin: E = even vertices, O = odd vertices, V = the bin game
// strategy (carries the free coordinate).
enum class BinTag { E, O, V };

struct BinForm {
  std::vector<BinTag> tags;
  int shift = 0;
  Edge source_edge;

  int v_bin() const;
  friend bool operator==(const BinForm&, const BinForm&) = default;
};

// One form per pattern edge: 0 -> E, 1 -> O, v -> V.
std::vector<BinForm> bin_forms(const PairingStrategy& pattern, int shift = 0);
std::string to_string(const BinForm& f);

// Blocked dimension of the plain bin construction over c bins of Q(n,k):
// max{c(k-1)+1, n+k}; for c = 4 this is max{4k-3, n+k}.
int bin_ps_dimension(int bins, int n, int k);
// Same for the rotating construction: max{c(k-1)+1, n+1}.
int rotating_dimension(int bins, int n, int k);

// Plain construction. `pattern` is a Q(c,2) strategy whose edges become the
// forms; the default is PS(4,2). The input strategy is verified first.
PairingStrategy bin_ps(const PairingStrategy& bv);
PairingStrategy bin_ps(const PairingStrategy& bv, const PairingStrategy& pattern);

struct RotationScheme {
  int m = 1;
  int s = 0;
  PartitionPair partitions;
  std::vector<PairingStrategy> pool;
};

// Throws PreconditionError when the pool does not cover E(Q_n), has the wrong
// size or mixed (n,k), or the partitions are too coarse for the bin width.
void validate(const RotationScheme& scheme);

PairingStrategy bin_ps_rotating(const RotationScheme& scheme, const PairingStrategy& pattern, std::string name = {});
// Pattern PS_j(4,2).
PairingStrategy bin_ps_rotating(const RotationScheme& scheme, int pattern_j);
// Skips validate(); the output is still checked to be a matching but carries
// no coverage guarantee.
PairingStrategy bin_ps_rotating_unchecked(const RotationScheme& scheme, const PairingStrategy& pattern, std::string name = {});

// The worked three-bin example: pattern v_3, pools PS_j(3,2) with m = 4,
// s = 0 and singleton cells indexed by base-2 rank. A strategy for Q(9,4).
RotationScheme q9_demo_scheme();
PairingStrategy q9_demo();

// Members ordered j-major, s-minor; member j*m + s is named
// "Thm4 d=<d> j=<j> s=<s>" (resp. Thm6). Results are memoised per level.
StrategyFamily q4_family(int d, int jobs = 1);
StrategyFamily q3_family(int d, int jobs = 1);

// Copies of ps in both layers of the new last coordinate. The output is
// re-verified: exhaustively when small, else on a random sample.
PairingStrategy lift_plus1(const PairingStrategy& ps);

// Edges with coordinates n+1..N fixed at 0, cut to length n.
PairingStrategy truncate(const PairingStrategy& ps, int n);

struct BestRoute {
  int n = 0;
  int k = 0;
  std::string route;
  bool materialisable = false;
};

BestRoute best_route(int n);
// Throws BudgetError for dimensions whose strategy is too large to build.
PairingStrategy best_strategy(int n);

// The plain bin construction without materialising its edges, for boards
// whose edge count is out of reach (e.g. Q(36,13)).
class ImplicitBinPS {
 public:
  explicit ImplicitBinPS(const PairingStrategy& bv);
  ImplicitBinPS(const PairingStrategy& bv, const PairingStrategy& pattern);

  int n() const { return layout_.n_total(); }
  int k() const { return k_; }
  const std::vector<BinForm>& forms() const { return forms_; }
  std::uint64_t size() const;

  bool contains(const Edge& e) const;
  // Some strategy edge inside s, scanning forms in pattern order.
  std::optional<Edge> witness(const Subcube& s) const;

 private:
  PairingStrategy bv_;
  BinLayout layout_;
  std::vector<BinForm> forms_;
  int k_ = 0;
};

CoverageResult check_coverage_sampled(const ImplicitBinPS& ps, int k, std::uint64_t samples, std::uint64_t seed);

}  // namespace cubepair
