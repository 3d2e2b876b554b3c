#include <gtest/gtest.h>

#include <map>
#include <random>

#include "cubepair/constructions.hpp"
#include "cubepair/enumerate.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/verifier.hpp"
#include "oracles.hpp"

using namespace cubepair;

namespace {

std::pair<std::uint64_t, std::uint64_t> word_masks(const std::string& w) {
  std::uint64_t stars = 0, fixed = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == '*') stars |= std::uint64_t{1} << i;
    if (w[i] == '1') fixed |= std::uint64_t{1} << i;
  }
  return {stars, fixed};
}

// Coverage by walking all 3^n words and every edge inside each subcube.
bool oracle_covers(const PairingStrategy& ps, int k) {
  const auto keys = oracle::edge_keys(ps);
  for (const std::string& w : oracle::all_subcube_words(ps.n, k)) {
    const auto [stars, fixed] = word_masks(w);
    if (!oracle::subcube_has_edge(keys, stars, fixed)) return false;
  }
  return true;
}

bool oracle_covers_sampled(const PairingStrategy& ps, int k, int samples, std::uint64_t seed) {
  const auto keys = oracle::edge_keys(ps);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < samples; ++t) {
    std::vector<int> coords(static_cast<std::size_t>(ps.n));
    for (int i = 0; i < ps.n; ++i) coords[static_cast<std::size_t>(i)] = i;
    std::shuffle(coords.begin(), coords.end(), rng);
    std::uint64_t stars = 0;
    for (int i = 0; i < k; ++i) stars |= std::uint64_t{1} << coords[static_cast<std::size_t>(i)];
    const std::uint64_t fixed = rng() & low_mask(ps.n) & ~stars;
    if (!oracle::subcube_has_edge(keys, stars, fixed)) return false;
  }
  return true;
}

// Tags of the bin form an edge of a uniform c-bin construction belongs to.
std::string form_of(const Edge& e, int bins, int width) {
  std::string out;
  for (int j = 0; j < bins; ++j) {
    const int lo = j * width;
    if (e.free_coord >= lo && e.free_coord < lo + width) {
      out += 'V';
    } else {
      out += __builtin_popcountll((e.base >> lo) & low_mask(width)) % 2 ? 'O' : 'E';
    }
  }
  return out;
}

std::vector<PairingStrategy> all_matchings_q3() {
  std::vector<Edge> all;
  for (int c = 0; c < 3; ++c) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      if (!((b >> c) & 1)) all.emplace_back(3, b, c);
    }
  }
  std::vector<PairingStrategy> out;
  for (std::uint32_t pick = 1; pick < (1u << all.size()); ++pick) {
    std::vector<Edge> chosen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if ((pick >> i) & 1) chosen.push_back(all[i]);
    }
    if (oracle::pairwise_disjoint(chosen)) out.emplace_back(3, 3, "m" + std::to_string(pick), chosen);
  }
  return out;
}

}  // namespace

TEST(BinForms, FromPattern) {
  const auto forms = bin_forms(ps_4_2());
  ASSERT_EQ(forms.size(), 8u);
  std::set<std::string> names;
  for (const BinForm& f : forms) {
    names.insert(to_string(f));
    EXPECT_EQ(f.tags[static_cast<std::size_t>(f.v_bin())], BinTag::V);
    EXPECT_EQ(f.v_bin(), f.source_edge.free_coord);
  }
  EXPECT_EQ(names.size(), 8u);
  const auto v3 = bin_forms(bv_3());
  ASSERT_EQ(v3.size(), 3u);
  EXPECT_EQ(to_string(v3[0]), "(V,E,O)");
  EXPECT_EQ(to_string(v3[1]), "(O,V,E)");
  EXPECT_EQ(to_string(v3[2]), "(E,O,V)");
}

TEST(BinPS, DimensionFormulas) {
  EXPECT_EQ(bin_ps_dimension(4, 3, 2), 5);
  EXPECT_EQ(bin_ps_dimension(4, 12, 5), 17);
  EXPECT_EQ(bin_ps_dimension(4, 6, 3), 9);
  EXPECT_EQ(bin_ps_dimension(4, 16, 9), 33);
  EXPECT_EQ(rotating_dimension(3, 3, 2), 4);
  EXPECT_EQ(rotating_dimension(4, 16, 5), 17);
}

TEST(BinPS, FromBv3) {
  const PairingStrategy ps = bin_ps(bv_3());
  EXPECT_EQ(ps.n, 12);
  EXPECT_EQ(ps.k, 5);
  EXPECT_EQ(ps.size(), 1536u);
  EXPECT_TRUE(oracle::pairwise_disjoint(ps.edges));
  EXPECT_TRUE(oracle_covers(ps, 5));
  EXPECT_TRUE(check_coverage(ps, 5).covered);

  std::map<std::string, std::size_t> per_form;
  for (const Edge& e : ps.edges) ++per_form[form_of(e, 4, 3)];
  ASSERT_EQ(per_form.size(), 8u);
  for (const BinForm& f : bin_forms(ps_4_2())) {
    std::string tags = to_string(f);
    std::erase(tags, '(');
    std::erase(tags, ')');
    std::erase(tags, ',');
    EXPECT_EQ(per_form[tags], 192u) << tags;
  }
}

TEST(BinPS, NamedSubcubesAtOneDimensionLower) {
  const PairingStrategy ps = bin_ps(bv_3());
  const std::vector<Subcube> named{parse_subcube("*11000000***"), parse_subcube("*11*11*11*11")};
  EXPECT_EQ(unhandled_among(ps, named).size(), 2u);
  EXPECT_FALSE(check_coverage(ps, 4).covered);
  for (const Subcube& s : named) EXPECT_EQ(s.dimension(), 4);
}

TEST(BinPS, AlwaysAMatchingOnQ3Inputs) {
  const auto inputs = all_matchings_q3();
  EXPECT_GT(inputs.size(), 50u);
  int blocking_two = 0;
  for (const PairingStrategy& bv : inputs) {
    const PairingStrategy out = bin_ps(bv);
    ASSERT_TRUE(oracle::pairwise_disjoint(out.edges)) << bv.name;
    EXPECT_EQ(out.size(), 8u * 64u * bv.size());
    if (oracle::uncovered(bv, 2).empty()) {
      PairingStrategy two = bv;
      two.k = 2;
      const PairingStrategy glued = bin_ps(two);
      EXPECT_EQ(glued.k, 5);
      EXPECT_TRUE(check_coverage(glued, 5).covered) << bv.name;
      if (blocking_two++ < 2) {
        EXPECT_TRUE(oracle_covers(glued, 5));
      }
    }
  }
  EXPECT_GT(blocking_two, 0);
}

TEST(BinPS, SampledQ4Inputs) {
  std::mt19937_64 rng(17);
  int built = 0;
  while (built < 3) {
    std::vector<Edge> all;
    for (int c = 0; c < 4; ++c) {
      for (std::uint64_t b = 0; b < 16; ++b) {
        if (!((b >> c) & 1)) all.emplace_back(4, b, c);
      }
    }
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Edge> chosen;
    std::vector<char> used(16, 0);
    for (const Edge& e : all) {
      const auto [a, b] = oracle::endpoints(e);
      if (used[a] || used[b]) continue;
      used[a] = used[b] = 1;
      chosen.push_back(e);
    }
    const PairingStrategy bv(4, 3, "r", chosen);
    if (!oracle::uncovered(bv, 3).empty()) continue;
    const PairingStrategy out = bin_ps(bv);
    EXPECT_EQ(out.n, 16);
    EXPECT_EQ(out.k, 9);
    EXPECT_TRUE(check_coverage(out, 9).covered);
    EXPECT_TRUE(oracle_covers_sampled(out, 9, 2000, built));
    ++built;
  }
}

TEST(BinPS, FromQ63ReachesQ24_9) {
  const PairingStrategy ps = bin_ps(q6_3());
  EXPECT_EQ(ps.n, 24);
  EXPECT_EQ(ps.k, 9);
  EXPECT_EQ(ps.size(), 8u * 32 * 32 * 32 * 24);
  EXPECT_TRUE(check_coverage_sampled(ps, 9, 20000, 3).covered);
  EXPECT_TRUE(oracle_covers_sampled(ps, 9, 2000, 4));
}

TEST(BinPS, RejectsUnverifiedInput) {
  const PairingStrategy weak(3, 1, "weak", bv_3().edges);
  EXPECT_THROW(bin_ps(weak), PreconditionError);
  const PairingStrategy bad(3, 2, "bad", parse_edge_list("v00 0v0"));
  EXPECT_THROW(bin_ps(bad), PreconditionError);
}

TEST(Rotating, Q9Demo) {
  const PairingStrategy ps = q9_demo();
  EXPECT_EQ(ps.n, 9);
  EXPECT_EQ(ps.k, 4);
  EXPECT_EQ(ps.size(), 144u);
  EXPECT_TRUE(oracle::pairwise_disjoint(ps.edges));
  EXPECT_TRUE(oracle::uncovered(ps, 4).empty());
  EXPECT_FALSE(oracle::uncovered(ps, 3).empty());
  // Bins 1 and 3 hold 101 (rank 2) and 001 (rank 0): t = 2, and PS_2(3,2)
  // contains 10v.
  EXPECT_TRUE(ps.contains(parse_edge("10v101001")));
  EXPECT_TRUE(ps_j_3_2(2).contains(parse_edge("10v")));
  EXPECT_TRUE(handles(parse_edge("10v101001"), parse_subcube("10**0*0*1")));
}

TEST(Rotating, SingleCellReducesToPlain) {
  const auto zero = [](std::uint64_t) { return std::uint32_t{0}; };
  RotationScheme scheme{1, 0,
                        PartitionPair{PartitionFamily(3, Parity::even, 1, 0, zero),
                                      PartitionFamily(3, Parity::odd, 1, 0, zero)},
                        {bv_3()}};
  EXPECT_THROW(validate(scheme), PreconditionError);  // bv_3 alone misses edges of Q_3
  const PairingStrategy rotated = bin_ps_rotating_unchecked(scheme, ps_4_2(), "single");
  EXPECT_EQ(rotated.edges, bin_ps(bv_3()).edges);
}

TEST(Rotating, ValidateRejects) {
  RotationScheme good = q9_demo_scheme();
  EXPECT_NO_THROW(validate(good));

  RotationScheme s = good;
  s.s = 4;
  EXPECT_THROW(validate(s), PreconditionError);
  s = good;
  s.m = 0;
  EXPECT_THROW(validate(s), PreconditionError);
  s = good;
  s.pool.pop_back();
  EXPECT_THROW(validate(s), PreconditionError);
  s = good;
  s.pool[1] = bv_3();
  s.pool[1].k = 2;
  EXPECT_THROW(validate(s), PreconditionError);
  s = good;
  s.partitions = half_plus1(1);
  EXPECT_THROW(validate(s), PreconditionError);
}

TEST(Families, Q4Levels) {
  const StrategyFamily base = q4_family(0);
  ASSERT_EQ(base.members.size(), 4u);
  EXPECT_EQ(base.members[2].edges, ps_j_4_2(2).edges);

  const StrategyFamily fam = q4_family(1);
  ASSERT_EQ(fam.members.size(), 16u);
  for (const PairingStrategy& ps : fam.members) {
    EXPECT_EQ(ps.n, 16);
    EXPECT_EQ(ps.k, 5);
    EXPECT_EQ(ps.size(), 32768u);
  }
  EXPECT_EQ(fam.members[11].name, "Thm4 d=1 j=2 s=3");
  EXPECT_TRUE(is_edge_partition(fam));
  EXPECT_TRUE(check_coverage(fam.members[0], 5).covered);
  EXPECT_TRUE(oracle_covers_sampled(fam.members[15], 5, 3000, 8));
  EXPECT_THROW(q4_family(2), DimensionError);
}

TEST(Families, Q3Levels) {
  const StrategyFamily fam = q3_family(1);
  ASSERT_EQ(fam.members.size(), 16u);
  for (const PairingStrategy& ps : fam.members) {
    EXPECT_EQ(ps.n, 9);
    EXPECT_EQ(ps.k, 4);
    EXPECT_EQ(ps.size(), 144u);
    EXPECT_TRUE(oracle::uncovered(ps, 4).empty()) << ps.name;
  }
  EXPECT_EQ(fam.members[5].name, "Thm6 d=1 j=1 s=1");
  EXPECT_TRUE(is_edge_partition(fam));
  EXPECT_TRUE(polychromatic_proper_check(fam, 4).ok);
  EXPECT_THROW(q3_family(2), BudgetError);
}

TEST(Lift, AddsOneToBoth) {
  const PairingStrategy a = lift_plus1(bv_3());
  EXPECT_EQ(a.n, 4);
  EXPECT_EQ(a.k, 3);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_TRUE(oracle::pairwise_disjoint(a.edges));
  EXPECT_TRUE(oracle::uncovered(a, 3).empty());

  const PairingStrategy b = lift_plus1(a);
  EXPECT_EQ(b.k, 4);
  EXPECT_TRUE(oracle::uncovered(b, 4).empty());
  EXPECT_EQ(oracle::all_subcube_words(5, 4).size(), 10u);

  const PairingStrategy c = lift_plus1(q6_3());
  EXPECT_EQ(c.n, 7);
  EXPECT_EQ(c.k, 4);
  EXPECT_TRUE(oracle::uncovered(c, 4).empty());
}

TEST(Truncate, KeepsEdgesOfTheBottomFace) {
  const PairingStrategy same = truncate(q6_3(), 6);
  EXPECT_EQ(same.edges, q6_3().edges);

  const PairingStrategy cut = truncate(q3_family(1).members[0], 7);
  EXPECT_EQ(cut.n, 7);
  EXPECT_EQ(cut.k, 4);
  EXPECT_LE(cut.size(), 64u);
  EXPECT_TRUE(oracle::pairwise_disjoint(cut.edges));
  EXPECT_TRUE(oracle::uncovered(cut, 4).empty());
  EXPECT_THROW(truncate(q6_3(), 2), DimensionError);
  EXPECT_THROW(truncate(q6_3(), 7), DimensionError);
}

TEST(Schedule, KnownValuesAndBound) {
  const std::map<int, int> known{{4, 2}, {5, 3}, {6, 3}, {7, 4}, {9, 4}, {10, 5}, {16, 5},
                                 {20, 9}, {24, 9}, {28, 13}, {36, 13}, {40, 17}};
  for (auto [n, k] : known) EXPECT_EQ(best_route(n).k, k) << n;
  for (int n = 3; n <= 63; ++n) {
    const BestRoute r = best_route(n);
    EXPECT_EQ(r.n, n);
    EXPECT_LE(r.k, 3 * n / 7 + 1) << n;
    EXPECT_EQ(r.materialisable, n <= 24) << n;
    EXPECT_FALSE(r.route.empty());
  }
  EXPECT_THROW(best_route(2), DimensionError);
  EXPECT_THROW(best_route(64), DimensionError);
}

TEST(Schedule, MaterialisedStrategiesBlock) {
  for (int n = 3; n <= 16; ++n) {
    const PairingStrategy ps = best_strategy(n);
    EXPECT_EQ(ps.n, n);
    EXPECT_EQ(ps.k, best_route(n).k);
    EXPECT_TRUE(is_matching(ps)) << n;
    if (n <= 9) {
      EXPECT_TRUE(oracle::uncovered(ps, ps.k).empty()) << n;
    } else {
      EXPECT_TRUE(check_coverage(ps, ps.k).covered) << n;
    }
  }
  const PairingStrategy big = best_strategy(22);
  EXPECT_EQ(big.k, best_route(22).k);
  EXPECT_TRUE(oracle_covers_sampled(big, big.k, 2000, 9));
  EXPECT_THROW(best_strategy(25), BudgetError);
}

TEST(Implicit, AgreesWithMaterialised) {
  const PairingStrategy mat = bin_ps(bv_3());
  const ImplicitBinPS imp(bv_3());
  EXPECT_EQ(imp.n(), 12);
  EXPECT_EQ(imp.k(), 5);
  EXPECT_EQ(imp.size(), mat.size());
  for (int c = 0; c < 12; ++c) {
    for (std::uint64_t b = 0; b < (1u << 12); ++b) {
      if ((b >> c) & 1) continue;
      const Edge e(12, b, c);
      ASSERT_EQ(imp.contains(e), mat.contains(e)) << to_string(e);
    }
  }
  const std::vector<Subcube> all4(enumerate_subcubes(12, 4).begin(), enumerate_subcubes(12, 4).end());
  const auto missed = unhandled_among(mat, all4);
  std::size_t implicit_missed = 0;
  for (const Subcube& s : all4) {
    const auto w = imp.witness(s);
    if (!w) {
      ++implicit_missed;
      continue;
    }
    EXPECT_TRUE(mat.contains(*w));
    EXPECT_TRUE(handles(*w, s));
  }
  EXPECT_EQ(implicit_missed, missed.size());
  for (const Subcube& s : enumerate_subcubes(12, 5)) ASSERT_TRUE(imp.witness(s).has_value());
}

TEST(Implicit, Q36_13Sampled) {
  const ImplicitBinPS imp(q9_demo());
  EXPECT_EQ(imp.n(), 36);
  EXPECT_EQ(imp.k(), 13);
  EXPECT_EQ(imp.size(), 8ull * 256 * 256 * 256 * 144);
  const CoverageResult r = check_coverage_sampled(imp, 13, 100000, 21);
  EXPECT_TRUE(r.covered);
  EXPECT_EQ(r.subcubes_checked, 100000u);
  EXPECT_FALSE(check_coverage_sampled(imp, 9, 100000, 21).covered);
}

TEST(BinPS, EverySubcubeHasTwoHandlers) {
  // No single edge of BinPS(12,5) is essential.
  const PairingStrategy ps = bin_ps(bv_3());
  std::size_t fewest = ps.size();
  for (const std::string& w : oracle::all_subcube_words(12, 5)) {
    std::size_t h = 0;
    for (const Edge& e : ps.edges) {
      const auto [a, b] = oracle::endpoints(e);
      h += oracle::word_contains(w, a) && oracle::word_contains(w, b);
    }
    fewest = std::min(fewest, h);
  }
  EXPECT_EQ(fewest, 2u);
  EXPECT_EQ(minimality_probe(ps, 5).essential, 0u);
  EXPECT_EQ(minimality_probe(q9_demo(), 4).essential, 144u);
}
