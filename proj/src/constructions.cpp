#include "cubepair/constructions.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>

#include "cubepair/enumerate.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/parallel.hpp"

namespace cubepair {

namespace {

// Exhaustive verification up to this many subcubes, sampling beyond.
constexpr std::uint64_t kExhaustiveBudget = std::uint64_t{1} << 24;
constexpr std::uint64_t kLiftSamples = 20000;
constexpr std::uint64_t kFamilyEdgeBudget = std::uint64_t{1} << 26;
constexpr int kMaterialiseLimit = 24;

std::string pair_label(int n, int k) { return "Q(" + std::to_string(n) + "," + std::to_string(k) + ")"; }

void require_matching(const PairingStrategy& ps, const std::string& what) {
  if (const auto c = find_matching_conflict(ps)) {
    throw PreconditionError(what + " " + ps.name + " is not a matching: " + to_string(c->first) + " and " +
                            to_string(c->second) + " share " + to_string(c->shared));
  }
}

void require_verified(const PairingStrategy& ps, const std::string& what) {
  require_matching(ps, what);
  if (subcube_count(ps.n, ps.k) > kExhaustiveBudget) {
    throw BudgetError(what + " " + ps.name + " is too large to verify exhaustively");
  }
  const CoverageResult cov = check_coverage(ps, ps.k);
  if (!cov.covered) {
    throw PreconditionError(what + " " + ps.name + " does not handle " + to_string(*cov.counterexample));
  }
}

std::vector<std::uint64_t> parity_class(int width, Parity side) {
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << (width - 1));
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) {
    if (parity_of(v) == side) out.push_back(v);
  }
  return out;
}

// Glues every form over `width`-wide bins. For each choice of parity vertices
// in the non-V bins, pick(label_sum) names the V-bin strategy.
template <class Pick>
std::vector<Edge> glue_forms(const std::vector<BinForm>& forms, int width, const PartitionPair* parts, Pick&& pick) {
  const int bins = static_cast<int>(forms.front().tags.size());
  const int n = bins * width;
  const auto evens = parity_class(width, Parity::even);
  const auto odds = parity_class(width, Parity::odd);
  std::vector<std::uint32_t> even_labels(evens.size(), 0), odd_labels(odds.size(), 0);
  if (parts) {
    for (std::size_t i = 0; i < evens.size(); ++i) even_labels[i] = parts->even.label(evens[i]);
    for (std::size_t i = 0; i < odds.size(); ++i) odd_labels[i] = parts->odd.label(odds[i]);
  }
  const std::size_t per_bin = evens.size();

  std::vector<Edge> out;
  for (const BinForm& form : forms) {
    const int vb = form.v_bin();
    std::vector<int> others;
    for (int j = 0; j < bins; ++j) {
      if (j != vb) others.push_back(j);
    }
    std::vector<std::size_t> digit(others.size(), 0);
    for (;;) {
      std::uint64_t fixed = 0;
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < others.size(); ++i) {
        const int j = others[i];
        const bool even = form.tags[j] == BinTag::E;
        fixed |= (even ? evens : odds)[digit[i]] << (j * width);
        sum += (even ? even_labels : odd_labels)[digit[i]];
      }
      const PairingStrategy& bv = pick(sum, form);
      for (const Edge& e : bv.edges) {
        out.emplace_back(n, fixed | (e.base << (vb * width)), e.free_coord + vb * width);
      }
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == per_bin) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  return out;
}

void check_pattern(const PairingStrategy& pattern, int width) {
  require_verified(pattern, "pattern");
  if (pattern.k != 2) throw PreconditionError("pattern " + pattern.name + " must block 2-subcubes");
  if (static_cast<long>(pattern.n) * width > kMaxDimension) {
    throw DimensionError("bin construction would exceed " + std::to_string(kMaxDimension) + " coordinates");
  }
}

PairingStrategy finish(int n, int k, std::string name, std::vector<Edge> edges) {
  PairingStrategy ps(n, k, std::move(name), std::move(edges));
  if (const auto c = find_matching_conflict(ps)) {
    throw Error("construction of " + ps.name + " produced a non-matching at " + to_string(c->shared));
  }
  return ps;
}

// Rotating construction without scheme validation; callers validate.
PairingStrategy rotate_unchecked(const RotationScheme& scheme, const PairingStrategy& pattern, std::string name) {
  const int width = scheme.pool.front().n;
  const int k = scheme.pool.front().k;
  const int bins = pattern.n;
  const auto forms = bin_forms(pattern, scheme.s);
  auto edges = glue_forms(forms, width, &scheme.partitions, [&](std::uint64_t sum, const BinForm&) -> const PairingStrategy& {
    return scheme.pool[static_cast<std::size_t>((static_cast<std::uint64_t>(scheme.s) + sum) % scheme.m)];
  });
  const int b = rotating_dimension(bins, width, k);
  if (name.empty()) name = "RotPS" + pair_label(bins * width, b).substr(1);
  return finish(bins * width, b, std::move(name), std::move(edges));
}

}  // namespace

int BinForm::v_bin() const {
  const auto it = std::find(tags.begin(), tags.end(), BinTag::V);
  return static_cast<int>(it - tags.begin());
}

std::vector<BinForm> bin_forms(const PairingStrategy& pattern, int shift) {
  std::vector<BinForm> out;
  for (const Edge& e : pattern.edges) {
    BinForm f;
    f.shift = shift;
    f.source_edge = e;
    for (int i = 0; i < pattern.n; ++i) {
      if (i == e.free_coord) {
        f.tags.push_back(BinTag::V);
      } else {
        f.tags.push_back(((e.base >> i) & 1) ? BinTag::O : BinTag::E);
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string to_string(const BinForm& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.tags.size(); ++i) {
    if (i) s += ',';
    s += f.tags[i] == BinTag::E ? 'E' : f.tags[i] == BinTag::O ? 'O' : 'V';
  }
  return s + ")";
}

int bin_ps_dimension(int bins, int n, int k) { return std::max(bins * (k - 1) + 1, n + k); }

int rotating_dimension(int bins, int n, int k) { return std::max(bins * (k - 1) + 1, n + 1); }

PairingStrategy bin_ps(const PairingStrategy& bv) { return bin_ps(bv, ps_4_2()); }

PairingStrategy bin_ps(const PairingStrategy& bv, const PairingStrategy& pattern) {
  check_pattern(pattern, bv.n);
  require_verified(bv, "input strategy");
  const auto forms = bin_forms(pattern);
  auto edges = glue_forms(forms, bv.n, nullptr, [&](std::uint64_t, const BinForm&) -> const PairingStrategy& { return bv; });
  const int n = pattern.n * bv.n;
  const int b = bin_ps_dimension(pattern.n, bv.n, bv.k);
  return finish(n, b, "BinPS" + pair_label(n, b).substr(1) + " of " + bv.name, std::move(edges));
}

void validate(const RotationScheme& scheme) {
  if (scheme.m < 1) throw PreconditionError("rotation modulus must be positive");
  if (scheme.s < 0 || scheme.s >= scheme.m) throw PreconditionError("rotation shift must lie in [0, m)");
  if (scheme.pool.size() != static_cast<std::size_t>(scheme.m)) {
    throw PreconditionError("pool holds " + std::to_string(scheme.pool.size()) + " strategies, expected m = " +
                            std::to_string(scheme.m));
  }
  const int n = scheme.pool.front().n;
  const int k = scheme.pool.front().k;
  for (const PairingStrategy& ps : scheme.pool) {
    if (ps.n != n || ps.k != k) throw PreconditionError("pool strategies must share (n, k)");
    require_matching(ps, "pool strategy");
    if (subcube_count(n, k) <= kExhaustiveBudget) {
      const CoverageResult cov = check_coverage(ps, k);
      if (!cov.covered) {
        throw PreconditionError("pool strategy " + ps.name + " does not handle " + to_string(*cov.counterexample));
      }
    }
  }
  if (n > kMaterialiseLimit) throw BudgetError("pool edge check limited to n <= 24");
  std::vector<char> seen(static_cast<std::size_t>(n) << n, 0);
  for (const PairingStrategy& ps : scheme.pool) {
    for (const Edge& e : ps.edges) seen[(static_cast<std::size_t>(e.free_coord) << n) | e.base] = 1;
  }
  for (int c = 0; c < n; ++c) {
    for (std::uint64_t base = 0; base < (std::uint64_t{1} << n); ++base) {
      if ((base >> c) & 1) continue;
      if (!seen[(static_cast<std::size_t>(c) << n) | base]) {
        throw PreconditionError("pool misses edge " + to_string(Edge(n, base, c)));
      }
    }
  }
  const int need = n - k + 2;
  for (const PartitionFamily* p : {&scheme.partitions.even, &scheme.partitions.odd}) {
    if (p->n() != n) throw PreconditionError("partition dimension differs from the bin width");
    if (p->cell_count() != static_cast<std::uint32_t>(scheme.m)) {
      throw PreconditionError("partition has " + std::to_string(p->cell_count()) + " cells, expected m = " +
                              std::to_string(scheme.m));
    }
    if (p->hit_dimension() > need) {
      throw PreconditionError("partition only guarantees hits at dimension " + std::to_string(p->hit_dimension()) +
                              ", need " + std::to_string(need));
    }
    if (subcube_count(n, need) <= kExhaustiveBudget) {
      if (const auto miss = verify_hit_property(*p, need)) {
        throw PreconditionError("subcube " + to_string(miss->subcube) + " misses cell " +
                                std::to_string(miss->missing_cell));
      }
    }
  }
}

PairingStrategy bin_ps_rotating(const RotationScheme& scheme, const PairingStrategy& pattern, std::string name) {
  validate(scheme);
  check_pattern(pattern, scheme.pool.front().n);
  return rotate_unchecked(scheme, pattern, std::move(name));
}

PairingStrategy bin_ps_rotating(const RotationScheme& scheme, int pattern_j) {
  return bin_ps_rotating(scheme, ps_j_4_2(pattern_j));
}

PairingStrategy bin_ps_rotating_unchecked(const RotationScheme& scheme, const PairingStrategy& pattern, std::string name) {
  if (scheme.pool.empty() || scheme.pool.size() != static_cast<std::size_t>(scheme.m)) {
    throw PreconditionError("pool must hold exactly m strategies");
  }
  return rotate_unchecked(scheme, pattern, std::move(name));
}

RotationScheme q9_demo_scheme() {
  RotationScheme scheme{
      4, 0,
      PartitionPair{PartitionFamily::singletons(3, Parity::even, SingletonOrder::big_endian_rank),
                    PartitionFamily::singletons(3, Parity::odd, SingletonOrder::big_endian_rank)},
      {}};
  for (int j = 0; j < 4; ++j) scheme.pool.push_back(ps_j_3_2(j));
  return scheme;
}

PairingStrategy q9_demo() { return bin_ps_rotating(q9_demo_scheme(), bv_3(), "RotPS(9,4) demo"); }

namespace {

enum class Recursion { four, three };

struct FamilyCache {
  std::mutex mutex;
  std::map<int, std::shared_ptr<const StrategyFamily>> levels;
};

FamilyCache& cache_for(Recursion r) {
  static FamilyCache four, three;
  return r == Recursion::four ? four : three;
}

std::shared_ptr<const StrategyFamily> build_level(Recursion r, int d, int jobs) {
  const int c = r == Recursion::four ? 4 : 3;
  const std::string thm = r == Recursion::four ? "Thm4" : "Thm6";
  if (d < 0) throw DimensionError("family level must be >= 0");
  std::uint64_t n = c;
  for (int i = 0; i < d; ++i) n *= static_cast<std::uint64_t>(c);
  if (n > static_cast<std::uint64_t>(kMaxDimension)) {
    throw DimensionError(thm + " level " + std::to_string(d) + " needs " + std::to_string(n) + " coordinates");
  }
  if (static_cast<std::uint64_t>(edge_count_of_cube(static_cast<int>(n))) > kFamilyEdgeBudget) {
    throw BudgetError(thm + " level " + std::to_string(d) + " would hold " +
                      std::to_string(edge_count_of_cube(static_cast<int>(n))) + " edges");
  }

  FamilyCache& cache = cache_for(r);
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.levels.find(d); it != cache.levels.end()) return it->second;
  }

  auto fam = std::make_shared<StrategyFamily>();
  fam->provenance = thm + " d=" + std::to_string(d);
  if (d == 0) {
    fam->members = r == Recursion::four ? ps_4_2_family().members : ps_3_2_family().members;
  } else {
    const auto lower = build_level(r, d - 1, jobs);
    const int m = static_cast<int>(lower->members.size());
    PartitionPair parts = r == Recursion::four ? half_plus1(2 * d) : partition_even_odd(3, d);
    RotationScheme scheme{m, 0, std::move(parts), lower->members};
    validate(scheme);
    std::vector<PairingStrategy> patterns;
    for (int j = 0; j < 4; ++j) {
      patterns.push_back(r == Recursion::four ? ps_j_4_2(j) : ps_j_3_2(j));
      check_pattern(patterns.back(), lower->members.front().n);
    }
    fam->members.resize(static_cast<std::size_t>(4 * m));
    parallel_for(fam->members.size(), jobs, [&](std::size_t idx) {
      const int j = static_cast<int>(idx) / m;
      RotationScheme shifted = scheme;
      shifted.s = static_cast<int>(idx) % m;
      fam->members[idx] = rotate_unchecked(
          shifted, patterns[j], thm + " d=" + std::to_string(d) + " j=" + std::to_string(j) + " s=" + std::to_string(shifted.s));
    });
  }

  std::lock_guard lock(cache.mutex);
  return cache.levels.emplace(d, std::move(fam)).first->second;
}

}  // namespace

StrategyFamily q4_family(int d, int jobs) { return *build_level(Recursion::four, d, jobs); }

StrategyFamily q3_family(int d, int jobs) { return *build_level(Recursion::three, d, jobs); }

PairingStrategy lift_plus1(const PairingStrategy& ps) {
  const int n = ps.n + 1;
  check_dimension(n);
  const std::uint64_t top = std::uint64_t{1} << ps.n;
  std::vector<Edge> edges;
  edges.reserve(ps.edges.size() * 2);
  for (const Edge& e : ps.edges) {
    edges.emplace_back(n, e.base, e.free_coord);
    edges.emplace_back(n, e.base | top, e.free_coord);
  }
  PairingStrategy out(n, ps.k + 1, "lift(" + ps.name + ")", std::move(edges));
  require_matching(out, "lifted strategy");
  const CoverageResult cov = subcube_count(out.n, out.k) <= kExhaustiveBudget
                                 ? check_coverage(out, out.k)
                                 : check_coverage_sampled(out, out.k, kLiftSamples, 0x5eed);
  if (!cov.covered) throw Error("lift of " + ps.name + " fails to handle " + to_string(*cov.counterexample));
  return out;
}

PairingStrategy truncate(const PairingStrategy& ps, int n) {
  if (n < 1 || n > ps.n) throw DimensionError("truncation target must lie in [1, " + std::to_string(ps.n) + "]");
  if (ps.k > n) throw DimensionError("truncation target below the blocked dimension");
  if (n == ps.n) return ps;
  std::vector<Edge> edges;
  for (const Edge& e : ps.edges) {
    if ((e.base >> n) == 0 && e.free_coord < n) edges.emplace_back(n, e.base, e.free_coord);
  }
  return PairingStrategy(n, ps.k, "truncate(" + ps.name + ", " + std::to_string(n) + ")", std::move(edges));
}

namespace {

struct Anchor {
  int n;
  int k;
  std::string label;
};

// The strategies the schedule starts from: 4^(m+1), 6*4^m and 9*4^m.
Anchor anchor(int n) {
  switch (n) {
    case 4: return {4, 2, "PS(4,2)"};
    case 16: return {16, 5, "Thm4 d=1 j=0 s=0"};
    case 64: return {64, 17, "Thm4 d=2 j=0 s=0"};
    case 6: return {6, 3, "Q(6,3) cyclic"};
    case 24: return {24, 9, "BinPS[Q(6,3) cyclic]"};
    case 9: return {9, 4, "Thm6 d=1 j=0 s=0"};
    case 36: return {36, 13, "BinPS[Thm6 d=1 j=0 s=0]"};
    default: throw DimensionError("no anchor strategy for n = " + std::to_string(n));
  }
}

PairingStrategy build_anchor(int n) {
  switch (n) {
    case 4: return ps_4_2();
    case 16: return q4_family(1).members.front();
    case 6: return q6_3();
    case 24: return bin_ps(q6_3());
    case 9: return q3_family(1).members.front();
    default:
      throw BudgetError("anchor " + pair_label(anchor(n).n, anchor(n).k) + " is too large to materialise");
  }
}

struct Plan {
  int base;  // anchor dimension
  int lifts;
  int target;
};

Plan plan_for(int n) {
  if (n < 3 || n > kMaxDimension) throw DimensionError("best strategy defined for 3 <= n <= 63");
  if (n == 3) return {4, 0, 3};
  std::uint64_t q = 1;
  while (16 * q <= static_cast<std::uint64_t>(n)) q *= 4;
  const int a[4] = {static_cast<int>(4 * q), static_cast<int>(6 * q), static_cast<int>(9 * q), static_cast<int>(16 * q)};
  for (int i = 0; i < 3; ++i) {
    if (n == a[i]) return {n, 0, n};
    if (n > a[i] && n < a[i + 1]) {
      const int j = n - a[i];
      if (j <= static_cast<int>(q)) return {a[i], j, n};
      return {a[i + 1], 0, n};
    }
  }
  throw Error("schedule does not reach n = " + std::to_string(n));
}

}  // namespace

BestRoute best_route(int n) {
  const Plan p = plan_for(n);
  const Anchor a = anchor(p.base);
  BestRoute r;
  r.n = n;
  if (p.lifts > 0) {
    r.k = a.k + p.lifts;
    r.route = "lift^" + std::to_string(p.lifts) + " " + pair_label(a.n, a.k) + " [" + a.label + "]";
  } else if (p.base != n) {
    r.k = a.k;
    r.route = "truncate " + pair_label(a.n, a.k) + " [" + a.label + "] to " + std::to_string(n);
  } else {
    r.k = a.k;
    r.route = pair_label(a.n, a.k) + " [" + a.label + "]";
  }
  r.materialisable = n <= kMaterialiseLimit;
  return r;
}

PairingStrategy best_strategy(int n) {
  const BestRoute route = best_route(n);
  if (!route.materialisable) {
    throw BudgetError("best strategy for n = " + std::to_string(n) + " (" + route.route + ") is too large to build");
  }
  const Plan p = plan_for(n);
  PairingStrategy ps = build_anchor(p.base);
  for (int i = 0; i < p.lifts; ++i) ps = lift_plus1(ps);
  if (p.base > n) ps = truncate(ps, n);
  ps.name = "best(" + std::to_string(n) + ") " + route.route;
  return ps;
}

ImplicitBinPS::ImplicitBinPS(const PairingStrategy& bv) : ImplicitBinPS(bv, ps_4_2()) {}

ImplicitBinPS::ImplicitBinPS(const PairingStrategy& bv, const PairingStrategy& pattern)
    : bv_(bv), layout_(BinLayout::uniform(pattern.n, bv.n)), forms_(bin_forms(pattern)) {
  check_pattern(pattern, bv.n);
  require_verified(bv, "input strategy");
  k_ = bin_ps_dimension(pattern.n, bv.n, bv.k);
}

std::uint64_t ImplicitBinPS::size() const {
  const int w = bv_.n;
  std::uint64_t per_form = bv_.size();
  for (int j = 1; j < layout_.bin_count(); ++j) per_form <<= (w - 1);
  return per_form * forms_.size();
}

bool ImplicitBinPS::contains(const Edge& e) const {
  if (e.n != n()) return false;
  const int vb = layout_.bin_of(e.free_coord);
  const int w = bv_.n;
  for (const BinForm& f : forms_) {
    if (f.v_bin() != vb) continue;
    bool match = true;
    for (int j = 0; j < layout_.bin_count() && match; ++j) {
      if (j == vb) continue;
      const Parity p = parity_of((e.base >> layout_.offset(j)) & low_mask(w));
      match = (p == Parity::even) == (f.tags[j] == BinTag::E);
    }
    if (!match) continue;
    return bv_.contains(Edge(w, (e.base >> layout_.offset(vb)) & low_mask(w), e.free_coord - layout_.offset(vb)));
  }
  return false;
}

std::optional<Edge> ImplicitBinPS::witness(const Subcube& s) const {
  if (s.n != n()) throw DimensionError("subcube dimension does not match the strategy");
  for (const BinForm& f : forms_) {
    const int vb = f.v_bin();
    std::uint64_t base = 0;
    bool ok = true;
    for (int j = 0; j < layout_.bin_count() && ok; ++j) {
      if (j == vb) continue;
      const Subcube r = restrict(s, layout_, j);
      const Parity want = f.tags[j] == BinTag::E ? Parity::even : Parity::odd;
      std::uint64_t v = r.fixed_bits;
      if (parity_of(v) != want) {
        if (r.star_mask == 0) {
          ok = false;
          continue;
        }
        v |= r.star_mask & (~r.star_mask + 1);
      }
      base |= v << layout_.offset(j);
    }
    if (!ok) continue;
    const Subcube rv = restrict(s, layout_, vb);
    for (const Edge& e : bv_.edges) {
      if (handles(e, rv)) {
        return Edge(n(), base | (e.base << layout_.offset(vb)), e.free_coord + layout_.offset(vb));
      }
    }
  }
  return std::nullopt;
}

CoverageResult check_coverage_sampled(const ImplicitBinPS& ps, int k, std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CoverageResult result;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Subcube s = random_subcube(ps.n(), k, rng);
    ++result.subcubes_checked;
    if (!ps.witness(s)) {
      result.covered = false;
      result.counterexample = s;
      break;
    }
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace cubepair
