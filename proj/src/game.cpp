#include "cubepair/game.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <random>
#include <sstream>

#include "cubepair/enumerate.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/parallel.hpp"

namespace cubepair {

GameBoard::GameBoard(const PairingStrategy& strategy, int k) : n_(strategy.n), k_(k) {
  if (n_ < 1 || n_ > kMaxBoard) throw DimensionError("games are limited to 1 <= n <= 20");
  if (k < 0 || k > n_) throw DimensionError("winning-set dimension outside [0, n]");
  partner_.assign(std::size_t{1} << n_, kNoPartner);
  for (const Edge& e : strategy.edges) {
    const std::uint64_t a = e.base, b = e.base | e.direction();
    if (partner_[a] != kNoPartner || partner_[b] != kNoPartner) {
      throw PreconditionError("strategy " + strategy.name + " is not a matching at edge " + to_string(e));
    }
    partner_[a] = b;
    partner_[b] = a;
  }
  if (k == 0) {
    masks_.push_back(0);
  } else {
    for (std::uint64_t m = low_mask(k); m <= low_mask(n_); m = next_same_popcount(m)) {
      masks_.push_back(m);
      if (m == low_mask(n_)) break;
    }
  }
}

GameState::GameState(std::shared_ptr<const GameBoard> board) : board_(std::move(board)) {
  const std::uint64_t count = board_->vertex_count();
  owner_.assign(count, Owner::none);
  free_.resize(count);
  slot_.resize(count);
  for (std::uint64_t v = 0; v < count; ++v) {
    free_[v] = v;
    slot_[v] = static_cast<std::uint32_t>(v);
  }
  transcript_.reserve(count);
}

void GameState::occupy(Player p, std::uint64_t v) {
  if (v >= owner_.size()) throw GameError("vertex index " + std::to_string(v) + " is off the board");
  if (owner_[v] != Owner::none) {
    throw GameError("vertex " + to_string(Vertex(board_->n(), v)) + " is already occupied");
  }
  if (p != to_move()) throw GameError("move out of turn");
  owner_[v] = p == Player::maker ? Owner::maker : Owner::breaker;
  (p == Player::maker ? maker_count_ : breaker_count_)++;
  const std::uint32_t at = slot_[v];
  free_[at] = free_.back();
  slot_[free_[at]] = at;
  free_.pop_back();
  transcript_.push_back({p, v});
}

std::uint64_t GameState::lowest_free() {
  if (full()) throw GameError("board is full");
  while (owner_[cursor_] != Owner::none) ++cursor_;
  return cursor_;
}

std::uint64_t breaker_respond(GameState& state, std::uint64_t x) {
  const std::uint64_t p = state.board().partner(x);
  if (p != GameBoard::kNoPartner && state.is_free(p)) return p;
  return state.lowest_free();
}

std::optional<Subcube> maker_win_check(const GameState& state, std::uint64_t x) {
  const GameBoard& b = state.board();
  const int k = b.k();
  if (k == 0) return Subcube(b.n(), 0, x);
  // Only coordinates whose neighbour of x Maker holds can be stars.
  std::uint64_t usable = 0;
  for (int i = 0; i < b.n(); ++i) {
    if (state.owner(x ^ (std::uint64_t{1} << i)) == Owner::maker) usable |= std::uint64_t{1} << i;
  }
  const int u = std::popcount(usable);
  if (u < k) return std::nullopt;
  // k-subsets of `usable` in increasing order, so the witness is the one the
  // full star-mask scan would find first.
  for (std::uint64_t pick = low_mask(k);; pick = next_same_popcount(pick)) {
    const std::uint64_t mask = deposit_bits(pick, usable);
    const std::uint64_t fixed = x & ~mask;
    std::uint64_t sub = 0;
    bool all = true;
    do {
      if (state.owner(fixed | sub) != Owner::maker) {
        all = false;
        break;
      }
      sub = (sub - mask) & mask;
    } while (sub != 0);
    if (all) return Subcube(b.n(), mask, fixed);
    if (pick == (low_mask(k) << (u - k))) break;
  }
  return std::nullopt;
}

std::string to_string(MakerPolicy::Kind kind) {
  switch (kind) {
    case MakerPolicy::Kind::random: return "random";
    case MakerPolicy::Kind::greedy: return "greedy";
    case MakerPolicy::Kind::scripted: return "scripted";
  }
  return "?";
}

MakerPolicy::Kind parse_policy(std::string_view name) {
  if (name == "random") return MakerPolicy::Kind::random;
  if (name == "greedy") return MakerPolicy::Kind::greedy;
  if (name == "scripted") return MakerPolicy::Kind::scripted;
  throw ParseError("unknown maker policy '" + std::string(name) + "'");
}

namespace {

constexpr std::uint64_t kGreedyBudget = std::uint64_t{1} << 25;

// Live-subcube counts per vertex. A subcube dies when Breaker enters it.
class GreedyTracker {
 public:
  explicit GreedyTracker(const GameBoard& b) : board_(b) {
    const std::uint64_t total = subcube_count(b.n(), b.k());
    if (total > kGreedyBudget) throw BudgetError("greedy play needs a table of " + std::to_string(total) + " subcubes");
    alive_.assign(total, 1);
    score_.assign(b.vertex_count(), static_cast<std::uint32_t>(b.star_masks().size()));
  }

  void breaker_took(std::uint64_t v) {
    const int free_dims = board_.n() - board_.k();
    const auto& masks = board_.star_masks();
    for (std::size_t r = 0; r < masks.size(); ++r) {
      const std::uint64_t mask = masks[r];
      const std::uint64_t fixed = v & ~mask;
      const std::uint64_t idx = (static_cast<std::uint64_t>(r) << free_dims) | extract_bits(fixed, low_mask(board_.n()) & ~mask);
      if (!alive_[idx]) continue;
      alive_[idx] = 0;
      for_each_vertex(mask, fixed, [&](std::uint64_t u) { --score_[u]; });
    }
  }

  std::uint64_t pick(const GameState& s) const {
    std::uint64_t best = 0;
    std::int64_t best_score = -1;
    for (std::uint64_t v = 0; v < score_.size(); ++v) {
      if (s.is_free(v) && static_cast<std::int64_t>(score_[v]) > best_score) {
        best_score = score_[v];
        best = v;
      }
    }
    return best;
  }

 private:
  const GameBoard& board_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> score_;
};

}  // namespace

GameRecord play(std::shared_ptr<const GameBoard> board, const MakerPolicy& policy) {
  GameState state(board);
  std::mt19937_64 rng(policy.seed);
  std::optional<GreedyTracker> greedy;
  if (policy.kind == MakerPolicy::Kind::greedy) greedy.emplace(*board);
  std::size_t scripted = 0;

  GameRecord rec;
  while (!state.full()) {
    std::uint64_t x = 0;
    switch (policy.kind) {
      case MakerPolicy::Kind::random: {
        const auto& free = state.free_vertices();
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        x = free[pick(rng)];
        break;
      }
      case MakerPolicy::Kind::greedy:
        x = greedy->pick(state);
        break;
      case MakerPolicy::Kind::scripted:
        x = scripted < policy.script.size() ? policy.script[scripted++] : state.lowest_free();
        break;
    }
    state.occupy(Player::maker, x);
    if (auto win = maker_win_check(state, x)) {
      rec.outcome = {Player::maker, win, state.transcript().size()};
      rec.transcript = state.transcript();
      return rec;
    }
    if (state.full()) break;
    const std::uint64_t y = breaker_respond(state, x);
    state.occupy(Player::breaker, y);
    if (greedy) greedy->breaker_took(y);
  }
  rec.outcome = {Player::breaker, std::nullopt, state.transcript().size()};
  rec.transcript = state.transcript();
  return rec;
}

GameRecord play(const PairingStrategy& strategy, int k, const MakerPolicy& policy) {
  return play(std::make_shared<const GameBoard>(strategy, k), policy);
}

BatchSummary play_batch(const PairingStrategy& strategy, int k, MakerPolicy::Kind kind, std::uint64_t games,
                        std::uint64_t base_seed, int jobs) {
  if (kind == MakerPolicy::Kind::scripted) throw PreconditionError("batches support random and greedy Makers only");
  const auto board = std::make_shared<const GameBoard>(strategy, k);
  std::atomic<std::uint64_t> maker_wins{0};
  std::atomic<std::uint64_t> first{games};
  parallel_for(static_cast<std::size_t>(games), jobs, [&](std::size_t g) {
    const MakerPolicy policy = kind == MakerPolicy::Kind::random ? MakerPolicy::random(base_seed + g) : MakerPolicy::greedy();
    const GameRecord rec = play(board, policy);
    if (rec.outcome.winner == Player::maker) {
      ++maker_wins;
      std::uint64_t cur = first.load();
      while (g < cur && !first.compare_exchange_weak(cur, g)) {
      }
    }
  });
  BatchSummary s;
  s.games = games;
  s.maker_wins = maker_wins.load();
  s.breaker_wins = games - s.maker_wins;
  if (first.load() < games) s.first_maker_win = first.load();
  return s;
}

std::string export_transcript(const GameRecord& record, int n) {
  std::ostringstream out;
  for (const Move& m : record.transcript) {
    out << (m.player == Player::maker ? "M " : "B ") << to_string(Vertex(n, m.vertex)) << '\n';
  }
  out << "result " << (record.outcome.winner == Player::maker ? "Maker" : "Breaker") << " moves=" << record.outcome.moves;
  if (record.outcome.witness) out << " witness=" << to_string(*record.outcome.witness);
  out << '\n';
  return out.str();
}

}  // namespace cubepair
