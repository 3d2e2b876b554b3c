#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cubepair/constructions.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/game.hpp"
#include "cubepair/verifier.hpp"
#include "oracles.hpp"

using namespace cubepair;

namespace {

void expect_legal(const GameRecord& rec, int n) {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < rec.transcript.size(); ++i) {
    const Move& m = rec.transcript[i];
    EXPECT_EQ(m.player, i % 2 == 0 ? Player::maker : Player::breaker) << i;
    EXPECT_LT(m.vertex, std::uint64_t{1} << n);
    EXPECT_TRUE(seen.insert(m.vertex).second) << "vertex taken twice at move " << i;
  }
  EXPECT_EQ(rec.outcome.moves, rec.transcript.size());
}

// Replays a transcript and asks the full-board oracle whether Maker holds a
// k-subcube.
std::optional<std::string> maker_holds(const GameRecord& rec, int n, int k) {
  std::set<std::uint64_t> held;
  for (const Move& m : rec.transcript) {
    if (m.player == Player::maker) held.insert(m.vertex);
  }
  return oracle::any_full_subcube(n, k, [&](std::uint64_t v) { return held.count(v) > 0; });
}

}  // namespace

TEST(Board, StarMasks) {
  const GameBoard b(ps_4_2(), 2);
  EXPECT_EQ(b.star_masks().size(), 6u);
  EXPECT_TRUE(std::is_sorted(b.star_masks().begin(), b.star_masks().end()));
  EXPECT_EQ(b.partner(parse_vertex("0000").bits), parse_vertex("1000").bits);
  EXPECT_THROW(GameBoard(PairingStrategy(21, 2, "big", {}), 2), DimensionError);
  EXPECT_THROW(GameBoard(PairingStrategy(3, 2, "bad", parse_edge_list("v00 0v0")), 2), PreconditionError);
}

TEST(Breaker, RespondsWithPartnerOrLowestFree) {
  const auto board = std::make_shared<const GameBoard>(ps_4_2(), 2);
  GameState s(board);
  const std::uint64_t x = parse_vertex("0000").bits;
  s.occupy(Player::maker, x);
  const std::uint64_t y = breaker_respond(s, x);
  EXPECT_EQ(to_string(Vertex(4, y)), "1000");
  s.occupy(Player::breaker, y);
  // 1000's partner is gone; Maker taking a vertex whose partner Breaker holds
  // sends Breaker to the lowest free vertex.
  const std::uint64_t z = parse_vertex("1111").bits;
  s.occupy(Player::maker, z);
  const std::uint64_t r = breaker_respond(s, z);
  EXPECT_TRUE(s.is_free(r));
  if (board->partner(z) == GameBoard::kNoPartner || !s.is_free(board->partner(z))) {
    EXPECT_EQ(r, 1u);  // 0000 and 1000 are taken
  } else {
    EXPECT_EQ(r, board->partner(z));
  }
}

TEST(State, RejectsIllegalMoves) {
  GameState s(std::make_shared<const GameBoard>(bv_3(), 2));
  EXPECT_THROW(s.occupy(Player::breaker, 0), GameError);
  s.occupy(Player::maker, 0);
  EXPECT_THROW(s.occupy(Player::breaker, 0), GameError);
  EXPECT_THROW(s.occupy(Player::breaker, 8), GameError);
  EXPECT_THROW(s.occupy(Player::maker, 1), GameError);
  s.occupy(Player::breaker, 1);
  EXPECT_EQ(s.lowest_free(), 2u);
  EXPECT_EQ(s.free_vertices().size(), 6u);
}

TEST(WinCheck, AgreesWithFullBoardScan) {
  std::mt19937_64 rng(4);
  for (int k = 1; k <= 3; ++k) {
    for (int trial = 0; trial < 30; ++trial) {
      GameState s(std::make_shared<const GameBoard>(PairingStrategy(5, k, "empty", {}), k));
      std::set<std::uint64_t> held;
      while (!s.full()) {
        const auto& free = s.free_vertices();
        const std::uint64_t x = free[rng() % free.size()];
        s.occupy(Player::maker, x);
        held.insert(x);
        const auto got = maker_win_check(s, x);
        const auto want = oracle::any_full_subcube(5, k, [&](std::uint64_t v) { return held.count(v) > 0; });
        ASSERT_EQ(got.has_value(), want.has_value());
        if (got) {
          EXPECT_TRUE(got->contains(x));
          EXPECT_EQ(got->dimension(), k);
          break;
        }
        if (s.full()) break;
        s.occupy(Player::breaker, s.free_vertices()[rng() % s.free_vertices().size()]);
      }
    }
  }
}

TEST(Play, RandomGamesAreDeterministicAndLegal) {
  const GameRecord a = play(q6_3(), 3, MakerPolicy::random(7));
  const GameRecord b = play(q6_3(), 3, MakerPolicy::random(7));
  EXPECT_EQ(a.transcript, b.transcript);
  expect_legal(a, 6);
  EXPECT_EQ(a.outcome.winner, Player::breaker);
  EXPECT_EQ(a.transcript.size(), 64u);
  EXPECT_FALSE(maker_holds(a, 6, 3).has_value());
}

TEST(Play, VerifiedStrategiesHoldAgainstRandomAndGreedy) {
  for (const PairingStrategy& ps : {ps_4_2(), bv_3(), q6_3(), q9_demo(), bin_ps(bv_3())}) {
    const BatchSummary r = play_batch(ps, ps.k, MakerPolicy::Kind::random, 200, 1000);
    EXPECT_EQ(r.maker_wins, 0u) << ps.name;
    EXPECT_EQ(r.breaker_wins, 200u);
    const GameRecord g = play(ps, ps.k, MakerPolicy::greedy());
    EXPECT_EQ(g.outcome.winner, Player::breaker) << ps.name;
    expect_legal(g, ps.n);
    EXPECT_EQ(g.transcript.size(), std::size_t{1} << ps.n);
  }
}

TEST(Play, WeakStrategyLosesToRandomMaker) {
  const BatchSummary r = play_batch(PairingStrategy(6, 2, "empty", {}), 2, MakerPolicy::Kind::random, 50, 0);
  EXPECT_GT(r.maker_wins, 0u);
  ASSERT_TRUE(r.first_maker_win.has_value());
  const GameRecord first = play(PairingStrategy(6, 2, "empty", {}), 2, MakerPolicy::random(*r.first_maker_win));
  EXPECT_EQ(first.outcome.winner, Player::maker);
  ASSERT_TRUE(first.outcome.witness.has_value());
  EXPECT_TRUE(maker_holds(first, 6, 2).has_value());
}

TEST(Play, BatchIsIndependentOfJobs) {
  const PairingStrategy full = q6_3();
  const PairingStrategy weak(6, 3, "half", std::vector<Edge>(full.edges.begin(), full.edges.begin() + 12));
  const BatchSummary a = play_batch(weak, 3, MakerPolicy::Kind::random, 300, 5, 1);
  const BatchSummary b = play_batch(weak, 3, MakerPolicy::Kind::random, 300, 5, 3);
  EXPECT_EQ(a.maker_wins, b.maker_wins);
  EXPECT_EQ(a.first_maker_win, b.first_maker_win);
  EXPECT_THROW(play_batch(weak, 3, MakerPolicy::Kind::scripted, 1, 0), PreconditionError);
}

TEST(Play, ScriptedMakerExploitsMissingEdge) {
  // Drop an edge whose removal uncovers some 3-subcube, then let Maker claim
  // that subcube. Breaker's fallback may land inside the subcube first; such
  // orders are illegal scripts and are skipped.
  const PairingStrategy full = q6_3();
  for (std::size_t i = 0; i < full.edges.size(); ++i) {
    auto edges = full.edges;
    edges.erase(edges.begin() + static_cast<long>(i));
    const PairingStrategy broken(6, 3, "broken", edges);
    for (const std::string& word : oracle::uncovered(broken, 3)) {
      auto verts = oracle::vertices_of_word(word);
      std::sort(verts.begin(), verts.end());
      do {
        GameRecord rec;
        try {
          rec = play(broken, 3, MakerPolicy::scripted(verts));
        } catch (const GameError&) {
          continue;
        }
        if (rec.outcome.winner == Player::maker) {
          expect_legal(rec, 6);
          EXPECT_EQ(to_string(*rec.outcome.witness), word);
          EXPECT_TRUE(maker_holds(rec, 6, 3).has_value());
          EXPECT_FALSE(covers_all(broken, 3));
          return;
        }
      } while (std::next_permutation(verts.begin(), verts.end()));
    }
  }
  FAIL() << "no scripted Maker win against any one-edge deletion of q6_3";
}

TEST(Play, IllegalScriptThrows) {
  EXPECT_THROW(play(q6_3(), 3, MakerPolicy::scripted({0, 0})), GameError);
  // Breaker answers 000000 with its partner; Maker may not take it next.
  const GameBoard b(q6_3(), 3);
  if (b.partner(0) != GameBoard::kNoPartner) {
    EXPECT_THROW(play(q6_3(), 3, MakerPolicy::scripted({0, b.partner(0)})), GameError);
  }
}

TEST(Transcript, ExportFormat) {
  const GameRecord rec = play(ps_4_2(), 2, MakerPolicy::random(3));
  const std::string text = export_transcript(rec, 4);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 17);
  EXPECT_EQ(text.substr(0, 2), "M ");
  EXPECT_NE(text.find("result Breaker moves=16\n"), std::string::npos);
  EXPECT_EQ(parse_policy("greedy"), MakerPolicy::Kind::greedy);
  EXPECT_EQ(to_string(MakerPolicy::Kind::random), "random");
  EXPECT_THROW(parse_policy("clever"), ParseError);
}
