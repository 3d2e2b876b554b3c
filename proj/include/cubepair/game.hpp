#pragma once

// Maker-Breaker play on Q(n,k). Maker moves first; Breaker answers each move
// with its partner under the pairing strategy, or with the lowest free vertex
// when the partner is missing or taken.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubepair/cube.hpp"
#include "cubepair/strategy.hpp"

namespace cubepair {

enum class Player : std::uint8_t { maker, breaker };
enum class Owner : std::uint8_t { none, maker, breaker };

struct Move {
  Player player;
  std::uint64_t vertex;
  friend bool operator==(const Move&, const Move&) = default;
};

struct Outcome {
  Player winner = Player::breaker;
  std::optional<Subcube> witness;  // Maker's completed subcube
  std::size_t moves = 0;
};

// Immutable per-(strategy, k) data shared by every game on the board.
class GameBoard {
 public:
  static constexpr int kMaxBoard = 20;
  static constexpr std::uint64_t kNoPartner = ~std::uint64_t{0};

  GameBoard(const PairingStrategy& strategy, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << n_; }
  std::uint64_t partner(std::uint64_t v) const { return partner_[v]; }
  // All star masks of popcount k, increasing.
  const std::vector<std::uint64_t>& star_masks() const { return masks_; }

 private:
  int n_;
  int k_;
  std::vector<std::uint64_t> partner_;
  std::vector<std::uint64_t> masks_;
};

class GameState {
 public:
  explicit GameState(std::shared_ptr<const GameBoard> board);

  const GameBoard& board() const { return *board_; }
  Owner owner(std::uint64_t v) const { return owner_[v]; }
  bool is_free(std::uint64_t v) const { return owner_[v] == Owner::none; }
  Player to_move() const { return maker_count_ > breaker_count_ ? Player::breaker : Player::maker; }
  std::size_t maker_count() const { return maker_count_; }
  std::size_t breaker_count() const { return breaker_count_; }
  bool full() const { return maker_count_ + breaker_count_ == owner_.size(); }
  const std::vector<Move>& transcript() const { return transcript_; }

  // Throws GameError on an occupied or out-of-range vertex, or out of turn.
  void occupy(Player p, std::uint64_t v);

  // Lowest free vertex; the board must not be full.
  std::uint64_t lowest_free();

  // Free vertices in arbitrary order, for uniform sampling.
  const std::vector<std::uint64_t>& free_vertices() const { return free_; }

 private:
  std::shared_ptr<const GameBoard> board_;
  std::vector<Owner> owner_;
  std::vector<std::uint64_t> free_;
  std::vector<std::uint32_t> slot_;
  std::vector<Move> transcript_;
  std::size_t maker_count_ = 0;
  std::size_t breaker_count_ = 0;
  std::uint64_t cursor_ = 0;
};

// Breaker's reply to Maker taking x. Does not occupy it.
std::uint64_t breaker_respond(GameState& state, std::uint64_t x);

// A k-subcube through x entirely held by Maker, scanning the C(n,k) star masks.
std::optional<Subcube> maker_win_check(const GameState& state, std::uint64_t x);

struct MakerPolicy {
  enum class Kind { random, greedy, scripted } kind = Kind::random;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> script;

  static MakerPolicy random(std::uint64_t seed) { return {Kind::random, seed, {}}; }
  static MakerPolicy greedy() { return {Kind::greedy, 0, {}}; }
  // After the script runs out Maker takes the lowest free vertex.
  static MakerPolicy scripted(std::vector<std::uint64_t> moves) { return {Kind::scripted, 0, std::move(moves)}; }
};

std::string to_string(MakerPolicy::Kind kind);
MakerPolicy::Kind parse_policy(std::string_view name);

struct GameRecord {
  Outcome outcome;
  std::vector<Move> transcript;
};

GameRecord play(std::shared_ptr<const GameBoard> board, const MakerPolicy& policy);
GameRecord play(const PairingStrategy& strategy, int k, const MakerPolicy& policy);

struct BatchSummary {
  std::uint64_t games = 0;
  std::uint64_t maker_wins = 0;
  std::uint64_t breaker_wins = 0;
  std::optional<std::uint64_t> first_maker_win;  // game index
};

// Game g uses seed base_seed + g (random policy); greedy and scripted games
// are deterministic and identical across g.
BatchSummary play_batch(const PairingStrategy& strategy, int k, MakerPolicy::Kind kind, std::uint64_t games,
                        std::uint64_t base_seed, int jobs = 1);

// "M bits" / "B bits" per move, then "result <winner> moves=<count>" and the
// witness subcube when Maker won.
std::string export_transcript(const GameRecord& record, int n);

}  // namespace cubepair
