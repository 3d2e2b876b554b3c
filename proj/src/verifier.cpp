#include "cubepair/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <unordered_set>

#include "cubepair/enumerate.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/parallel.hpp"

namespace cubepair {

namespace {

constexpr int kDenseLimit = 24;

struct EdgeKey {
  std::uint64_t base;
  int coord;
  bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const noexcept {
    return static_cast<std::size_t>((k.base * 0x9E3779B97F4A7C15ull) ^ static_cast<std::uint64_t>(k.coord));
  }
};

// Answers "does this subcube contain an edge of the strategy". Up to 24
// dimensions it stores, per vertex, the directions of its strategy edges; a
// subcube is handled iff one of its vertices has a direction among the stars.
// Beyond that it hashes edges and probes the subcube's internal edges.
class CoverageIndex {
 public:
  explicit CoverageIndex(const PairingStrategy& ps) : n_(ps.n) {
    if (n_ <= 16) {
      narrow_.assign(std::size_t{1} << n_, 0);
      for (const Edge& e : ps.edges) {
        narrow_[e.base] |= static_cast<std::uint16_t>(1u << e.free_coord);
        narrow_[e.base | e.direction()] |= static_cast<std::uint16_t>(1u << e.free_coord);
      }
    } else if (n_ <= kDenseLimit) {
      wide_.assign(std::size_t{1} << n_, 0);
      for (const Edge& e : ps.edges) {
        wide_[e.base] |= 1u << e.free_coord;
        wide_[e.base | e.direction()] |= 1u << e.free_coord;
      }
    } else {
      hashed_.reserve(ps.edges.size());
      for (const Edge& e : ps.edges) hashed_.insert({e.base, e.free_coord});
    }
  }

  bool handled(std::uint64_t mask, std::uint64_t fixed) const {
    if (!narrow_.empty()) return scan_dense(narrow_, mask, fixed);
    if (!wide_.empty()) return scan_dense(wide_, mask, fixed);
    if (hashed_.empty()) return false;
    std::uint64_t sub = 0;
    do {
      const std::uint64_t u = fixed | sub;
      for (std::uint64_t dirs = mask & ~u; dirs; dirs &= dirs - 1) {
        if (hashed_.contains({u, std::countr_zero(dirs)})) return true;
      }
      sub = (sub - mask) & mask;
    } while (sub != 0);
    return false;
  }

 private:
  template <class Word>
  static bool scan_dense(const std::vector<Word>& dirs, std::uint64_t mask, std::uint64_t fixed) {
    std::uint64_t sub = 0;
    do {
      if (dirs[fixed | sub] & mask) return true;
      sub = (sub - mask) & mask;
    } while (sub != 0);
    return false;
  }

  int n_;
  std::vector<std::uint16_t> narrow_;
  std::vector<std::uint32_t> wide_;
  std::unordered_set<EdgeKey, EdgeKeyHash> hashed_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_k(int n, int k) {
  if (k < 0 || k > n) throw DimensionError("subcube dimension " + std::to_string(k) + " outside [0, n]");
}

}  // namespace

std::optional<MatchingConflict> find_matching_conflict(const PairingStrategy& ps) {
  const auto& edges = ps.edges;
  std::optional<MatchingConflict> best;
  auto consider = [&](std::uint64_t vertex, std::size_t a, std::size_t b) {
    if (best && best->shared.bits <= vertex) return;
    if (edges[b] < edges[a]) std::swap(a, b);
    best = MatchingConflict{edges[a], edges[b], Vertex(ps.n, vertex)};
  };
  if (ps.n <= kDenseLimit) {
    constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> owner(std::size_t{1} << ps.n, kFree);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::uint64_t v : {edges[i].base, edges[i].base | edges[i].direction()}) {
        if (owner[v] != kFree) {
          consider(v, owner[v], i);
        } else {
          owner[v] = static_cast<std::uint32_t>(i);
        }
      }
    }
    return best;
  }
  std::vector<std::pair<std::uint64_t, std::size_t>> ends;
  ends.reserve(edges.size() * 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ends.emplace_back(edges[i].base, i);
    ends.emplace_back(edges[i].base | edges[i].direction(), i);
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 1; i < ends.size(); ++i) {
    if (ends[i].first == ends[i - 1].first) {
      consider(ends[i].first, ends[i - 1].second, ends[i].second);
      break;
    }
  }
  return best;
}

CoverageResult check_coverage(const PairingStrategy& ps, int k, int jobs) {
  check_k(ps.n, k);
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t total = subcube_count(ps.n, k);
  const CoverageIndex index(ps);
  const int n = ps.n;
  auto scan = [&](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    const std::uint64_t stop =
        for_each_subcube(n, k, b, e, [&](std::uint64_t mask, std::uint64_t fixed) { return index.handled(mask, fixed); });
    if (stop < e) return stop;
    return std::nullopt;
  };
  CoverageResult result;
  if (const auto first = find_first_failure(total, jobs, scan)) {
    result.covered = false;
    result.counterexample = subcube_at(n, k, *first);
    result.subcubes_checked = *first + 1;
  } else {
    result.subcubes_checked = total;
  }
  result.seconds = seconds_since(t0);
  return result;
}

Subcube random_subcube(int n, int k, std::mt19937_64& rng) {
  check_k(n, k);
  int coords[kMaxDimension];
  for (int i = 0; i < n; ++i) coords[i] = i;
  std::uint64_t mask = 0;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(coords[i], coords[pick(rng)]);
    mask |= std::uint64_t{1} << coords[i];
  }
  const std::uint64_t fixed = rng() & low_mask(n) & ~mask;
  return Subcube(n, mask, fixed);
}

CoverageResult check_coverage_sampled(const PairingStrategy& ps, int k, std::uint64_t samples, std::uint64_t seed) {
  check_k(ps.n, k);
  const auto t0 = std::chrono::steady_clock::now();
  const CoverageIndex index(ps);
  std::mt19937_64 rng(seed);
  CoverageResult result;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Subcube s = random_subcube(ps.n, k, rng);
    ++result.subcubes_checked;
    if (!index.handled(s.star_mask, s.fixed_bits)) {
      result.covered = false;
      result.counterexample = s;
      break;
    }
  }
  result.seconds = seconds_since(t0);
  return result;
}

std::vector<Subcube> unhandled_among(const PairingStrategy& ps, std::span<const Subcube> targets) {
  std::vector<Subcube> out;
  for (const Subcube& s : targets) {
    if (s.n != ps.n) throw DimensionError("subcube " + to_string(s) + " does not live in Q_" + std::to_string(ps.n));
    const bool hit = std::any_of(ps.edges.begin(), ps.edges.end(), [&](const Edge& e) { return handles(e, s); });
    if (!hit) out.push_back(s);
  }
  return out;
}

std::string PartitionDefect::describe() const {
  switch (kind) {
    case Kind::dimension_mismatch:
      return "members " + std::to_string(member_a) + " and " + std::to_string(member_b) + " differ in dimension";
    case Kind::duplicate_edge:
      return "edge " + to_string(edge) + " appears in members " + std::to_string(member_a) + " and " +
             std::to_string(member_b);
    case Kind::missing_edge:
      return "edge " + to_string(edge) + " is in no member";
  }
  return {};
}

std::optional<PartitionDefect> find_partition_defect(const StrategyFamily& fam) {
  if (fam.members.empty()) return std::nullopt;
  const int n = fam.members.front().n;
  for (std::size_t i = 1; i < fam.members.size(); ++i) {
    if (fam.members[i].n != n) return PartitionDefect{PartitionDefect::Kind::dimension_mismatch, Edge(), 0, i};
  }
  std::vector<std::pair<Edge, std::size_t>> all;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    for (const Edge& e : fam.members[i].edges) all.emplace_back(e, i);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return a.first < b.first;
  });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].first == all[i - 1].first) {
      return PartitionDefect{PartitionDefect::Kind::duplicate_edge, all[i].first, all[i - 1].second, all[i].second};
    }
  }
  if (all.size() == edge_count_of_cube(n)) return std::nullopt;
  // Walk E(Q_n) in canonical order alongside the sorted union.
  std::size_t pos = 0;
  for (int c = 0; c < n; ++c) {
    const std::uint64_t dir = std::uint64_t{1} << c;
    for (std::uint64_t base = 0; base < (std::uint64_t{1} << n); ++base) {
      if (base & dir) continue;
      const Edge e(n, base, c);
      if (pos < all.size() && all[pos].first == e) {
        ++pos;
      } else {
        return PartitionDefect{PartitionDefect::Kind::missing_edge, e, 0, 0};
      }
    }
  }
  return std::nullopt;
}

PolychromaticResult polychromatic_proper_check(const StrategyFamily& fam, int d, int jobs) {
  PolychromaticResult result;
  if (const auto defect = find_partition_defect(fam)) {
    result.ok = false;
    result.reason = "not an edge partition: " + defect->describe();
    return result;
  }
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const PairingStrategy& member = fam.members[i];
    if (const auto conflict = find_matching_conflict(member)) {
      result.ok = false;
      result.member = i;
      result.reason = "color " + std::to_string(i) + " is not a matching at vertex " + to_string(conflict->shared);
      return result;
    }
    const CoverageResult cov = check_coverage(member, d, jobs);
    if (!cov.covered) {
      result.ok = false;
      result.member = i;
      result.counterexample = cov.counterexample;
      result.reason = "color " + std::to_string(i) + " misses subcube " + to_string(*cov.counterexample);
      return result;
    }
  }
  return result;
}

namespace {

// Backtracking over matchings of Q_n, always branching on the first subcube
// not yet handled by the partial matching.
class MatchingCoverSearch {
 public:
  MatchingCoverSearch(int n, int k) {
    for (const Subcube& s : enumerate_subcubes(n, k)) subcubes_.push_back(s);
    for (int c = 0; c < n; ++c) {
      for (std::uint64_t base = 0; base < (std::uint64_t{1} << n); ++base) {
        if (!((base >> c) & 1)) edges_.emplace_back(n, base, c);
      }
    }
    inside_.resize(subcubes_.size());
    containing_.resize(edges_.size());
    for (std::size_t s = 0; s < subcubes_.size(); ++s) {
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (handles(edges_[e], subcubes_[s])) {
          inside_[s].push_back(e);
          containing_[e].push_back(s);
        }
      }
    }
    cover_count_.assign(subcubes_.size(), 0);
  }

  bool run() { return search(0); }

 private:
  bool search(std::uint64_t used) {
    if (++nodes_ > kNodeBudget) throw BudgetError("matching cover search exceeded its node budget");
    std::size_t target = subcubes_.size();
    for (std::size_t s = 0; s < subcubes_.size(); ++s) {
      if (cover_count_[s] == 0) {
        target = s;
        break;
      }
    }
    if (target == subcubes_.size()) return true;
    for (std::size_t e : inside_[target]) {
      const std::uint64_t ends = (std::uint64_t{1} << edges_[e].low().bits) | (std::uint64_t{1} << edges_[e].high().bits);
      if (used & ends) continue;
      for (std::size_t s : containing_[e]) ++cover_count_[s];
      const bool found = search(used | ends);
      for (std::size_t s : containing_[e]) --cover_count_[s];
      if (found) return true;
    }
    return false;
  }

  static constexpr std::uint64_t kNodeBudget = 50'000'000;
  std::uint64_t nodes_ = 0;
  std::vector<Subcube> subcubes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> inside_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<int> cover_count_;
};

}  // namespace

bool matching_cover_exists(int n, int k) {
  if (n < 1 || n > 4) throw BudgetError("brute-force search is capped at 1 <= n <= 4");
  check_k(n, k);
  return MatchingCoverSearch(n, k).run();
}

int brute_force_min_k(int n) {
  if (n < 1 || n > 4) throw BudgetError("brute-force search is capped at 1 <= n <= 4");
  for (int k = 1; k <= n; ++k) {
    if (matching_cover_exists(n, k)) return k;
  }
  throw PreconditionError("no k admits a pairing strategy");
}

MinimalityStats minimality_probe(const PairingStrategy& ps, int k) {
  if (ps.n > 20) throw BudgetError("minimality probe is limited to n <= 20");
  check_k(ps.n, k);
  std::vector<std::uint32_t> dirs(std::size_t{1} << ps.n, 0);
  for (const Edge& e : ps.edges) {
    dirs[e.base] |= 1u << e.free_coord;
    dirs[e.base | e.direction()] |= 1u << e.free_coord;
  }
  std::vector<char> essential(ps.edges.size(), 0);
  for_each_subcube(ps.n, k, 0, subcube_count(ps.n, k), [&](std::uint64_t mask, std::uint64_t fixed) {
    int handlers = 0;
    Edge last;
    for_each_vertex(mask, fixed, [&](std::uint64_t u) {
      for (std::uint64_t d = dirs[u] & mask & ~u; d; d &= d - 1) {
        ++handlers;
        last = Edge(ps.n, u, std::countr_zero(d));
      }
    });
    if (handlers == 1) {
      const auto it = std::lower_bound(ps.edges.begin(), ps.edges.end(), last);
      essential[static_cast<std::size_t>(it - ps.edges.begin())] = 1;
    }
    return true;
  });
  MinimalityStats stats;
  stats.edges = ps.edges.size();
  stats.essential = static_cast<std::size_t>(std::count(essential.begin(), essential.end(), 1));
  return stats;
}

}  // namespace cubepair
