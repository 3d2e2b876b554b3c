// cubepair: build, verify, tabulate and play pairing strategies on Q(n,k).
//
// Exit codes: 0 success, 1 a checked property failed, 2 bad input.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cubepair/constructions.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/game.hpp"
#include "cubepair/parallel.hpp"
#include "cubepair/report.hpp"
#include "cubepair/strategy_io.hpp"
#include "cubepair/verifier.hpp"

namespace {

using namespace cubepair;

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

PairingStrategy load_single(const std::string& path) {
  auto all = parse_strategies(read_text_file(path));
  if (all.size() != 1) {
    throw ParseError(path + ": expected one strategy, found " + std::to_string(all.size()) + " sections");
  }
  return std::move(all.front());
}

PairingStrategy base_by_name(const std::string& name, int j) {
  if (name == "ps42") return ps_4_2();
  if (name == "ps42-j") return ps_j_4_2(j);
  if (name == "ps32-j") return ps_j_3_2(j);
  if (name == "bv3") return bv_3();
  if (name == "q63") return q6_3();
  throw ParseError("unknown base strategy '" + name + "' (ps42, ps42-j, ps32-j, bv3, q63)");
}

struct ConstructArgs {
  std::string family;
  std::string name = "ps42";
  int j = 0;
  int d = 0;
  int n = 0;
  int s = 0;
  int times = 1;
  int jobs = 1;
  bool demo = false;
  std::string input;
  std::string pool;
  std::string partition = "encoding";
  int pattern_bins = 4;
  std::string output;
};

PartitionPair partition_for(const std::string& kind, int width) {
  if (kind == "encoding") return {PartitionFamily::singletons(width, Parity::even), PartitionFamily::singletons(width, Parity::odd)};
  if (kind == "rank") {
    return {PartitionFamily::singletons(width, Parity::even, SingletonOrder::big_endian_rank),
            PartitionFamily::singletons(width, Parity::odd, SingletonOrder::big_endian_rank)};
  }
  if (kind == "half") {
    for (int k = 1; (1 << k) <= width; ++k) {
      if ((1 << k) == width) return half_plus1(k);
    }
    throw PreconditionError("half partitions need a bin width that is a power of two");
  }
  if (kind == "evenodd") {
    int levels = 0;
    for (int w = width; w > 1 && w % 3 == 0; w /= 3) ++levels;
    int check = 1;
    for (int i = 0; i < levels; ++i) check *= 3;
    if (levels == 0 || check != width) throw PreconditionError("evenodd partitions need a bin width that is a power of three");
    return partition_even_odd(3, levels);
  }
  throw ParseError("unknown partition '" + kind + "' (encoding, rank, half, evenodd)");
}

int run_construct(const ConstructArgs& a) {
  const std::string& f = a.family;
  if (f == "q4" || f == "q3") {
    const StrategyFamily fam = f == "q4" ? q4_family(a.d, a.jobs) : q3_family(a.d, a.jobs);
    emit(render_family(fam), a.output);
    return kOk;
  }
  PairingStrategy out;
  if (f == "base") {
    if (a.name == "ps42-family" || a.name == "ps32-family") {
      emit(render_family(a.name == "ps42-family" ? ps_4_2_family() : ps_3_2_family()), a.output);
      return kOk;
    }
    out = base_by_name(a.name, a.j);
  } else if (f == "binps") {
    out = bin_ps(a.input.empty() ? base_by_name(a.name, a.j) : load_single(a.input));
  } else if (f == "rotate") {
    if (a.demo) {
      out = q9_demo();
    } else {
      if (a.pool.empty()) throw ParseError("rotate needs --pool <family file> or --demo");
      const StrategyFamily pool = parse_family(read_text_file(a.pool));
      if (pool.members.empty()) throw ParseError("pool file holds no strategies");
      const int m = static_cast<int>(pool.members.size());
      RotationScheme scheme{m, a.s, partition_for(a.partition, pool.members.front().n), pool.members};
      const PairingStrategy pattern = a.pattern_bins == 4 ? ps_j_4_2(a.j) : a.pattern_bins == 3 ? ps_j_3_2(a.j)
                                                                                                   : throw ParseError("--bins must be 3 or 4");
      out = bin_ps_rotating(scheme, pattern);
    }
  } else if (f == "lift") {
    if (a.input.empty()) throw ParseError("lift needs --input");
    out = load_single(a.input);
    for (int i = 0; i < a.times; ++i) out = lift_plus1(out);
  } else if (f == "truncate") {
    if (a.input.empty()) throw ParseError("truncate needs --input");
    out = truncate(load_single(a.input), a.n);
  } else if (f == "best") {
    out = best_strategy(a.n);
  } else {
    throw ParseError("unknown family '" + f + "'");
  }
  emit(render_strategy(out), a.output);
  return kOk;
}

struct VerifyArgs {
  std::string file;
  std::string checks = "matching,coverage";
  std::optional<int> k;
  int jobs = 1;
  std::string json;
};

int run_verify(const VerifyArgs& a) {
  const auto checks = parse_checks(a.checks);
  StrategyFamily fam = parse_family(read_text_file(a.file));
  if (fam.members.empty()) throw ParseError(a.file + ": no strategy sections");
  const int k = a.k.value_or(fam.members.front().k);
  if (k < 0 || k > fam.members.front().n) throw DimensionError("--k outside [0, n]");
  const VerificationReport rep = verify_family(fam, checks, k, a.jobs);
  std::cout << rep.to_text();
  if (!a.json.empty()) emit(rep.to_json(), a.json);
  return rep.passed() ? kOk : kPropertyFailure;
}

int run_table(int min_n, int max_n) {
  if (min_n < 3 || max_n > kMaxDimension || min_n > max_n) throw DimensionError("table range must lie within [3, 63]");
  std::cout << "n\tk\tbound\troute\n";
  int status = kOk;
  for (int n = min_n; n <= max_n; ++n) {
    const BestRoute r = best_route(n);
    const int bound = 3 * n / 7 + 1;
    if (r.k > bound) status = kPropertyFailure;
    std::cout << n << '\t' << r.k << '\t' << bound << '\t' << r.route << '\n';
  }
  return status;
}

struct PlayArgs {
  std::optional<int> n;
  std::optional<int> k;
  std::string strategy;
  std::string maker = "random";
  std::uint64_t games = 1;
  std::uint64_t seed = 0;
  std::string script;
  std::string transcript;
  int jobs = 1;
};

std::vector<std::uint64_t> parse_script(const std::string& text, int n) {
  std::vector<std::uint64_t> moves;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    const Vertex v = parse_vertex(tok);
    if (v.n != n) throw ParseError("scripted move '" + tok + "' is not a vertex of Q_" + std::to_string(n));
    moves.push_back(v.bits);
  }
  return moves;
}

int run_play(const PlayArgs& a) {
  const PairingStrategy ps = load_single(a.strategy);
  if (a.n && *a.n != ps.n) throw GameError("--n " + std::to_string(*a.n) + " does not match the strategy board Q_" + std::to_string(ps.n));
  const int k = a.k.value_or(ps.k);
  const MakerPolicy::Kind kind = parse_policy(a.maker);
  const bool verified = is_matching(ps) && check_coverage(ps, k, a.jobs).covered;

  BatchSummary sum;
  if (kind == MakerPolicy::Kind::scripted || !a.transcript.empty()) {
    MakerPolicy policy = kind == MakerPolicy::Kind::scripted ? MakerPolicy::scripted(parse_script(a.script, ps.n))
                         : kind == MakerPolicy::Kind::greedy  ? MakerPolicy::greedy()
                                                              : MakerPolicy::random(a.seed);
    const GameRecord rec = play(ps, k, policy);
    if (!a.transcript.empty()) emit(export_transcript(rec, ps.n), a.transcript);
    sum.games = 1;
    sum.maker_wins = rec.outcome.winner == Player::maker;
    sum.breaker_wins = 1 - sum.maker_wins;
    if (sum.maker_wins) sum.first_maker_win = 0;
    if (kind != MakerPolicy::Kind::scripted && a.games > 1) {
      const BatchSummary rest = play_batch(ps, k, kind, a.games - 1, a.seed + 1, a.jobs);
      sum.games += rest.games;
      sum.maker_wins += rest.maker_wins;
      sum.breaker_wins += rest.breaker_wins;
      if (!sum.first_maker_win && rest.first_maker_win) sum.first_maker_win = *rest.first_maker_win + 1;
    }
  } else {
    sum = play_batch(ps, k, kind, a.games, a.seed, a.jobs);
  }
  std::cout << "board=Q(" << ps.n << ',' << k << ")\n"
            << "strategy=" << ps.name << '\n'
            << "verified=" << (verified ? "yes" : "no") << '\n'
            << "maker=" << a.maker << '\n'
            << "seed=" << a.seed << '\n'
            << "games=" << sum.games << '\n'
            << "breaker_wins=" << sum.breaker_wins << '\n'
            << "maker_wins=" << sum.maker_wins << '\n';
  if (sum.first_maker_win) std::cout << "first_maker_win=" << *sum.first_maker_win << '\n';
  if (verified && sum.maker_wins > 0) {
    std::cerr << "error: Maker beat a verified pairing strategy\n";
    return kPropertyFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairing strategies for Maker-Breaker games on hypercube subcubes"};
  app.require_subcommand(1);
  const int jobs_default = default_jobs();

  ConstructArgs ca;
  ca.jobs = jobs_default;
  auto* construct = app.add_subcommand("construct", "Build a strategy or family and write it as a strategy file");
  construct->add_option("family", ca.family, "base, binps, rotate, q4, q3, lift, truncate or best")->required();
  construct->add_option("--name", ca.name, "Base strategy: ps42, ps42-j, ps32-j, bv3, q63, ps42-family, ps32-family");
  construct->add_option("--j", ca.j, "Pattern or listing index 0..3");
  construct->add_option("--d", ca.d, "Recursion level for q4/q3");
  construct->add_option("--n", ca.n, "Target dimension for truncate/best");
  construct->add_option("--s", ca.s, "Rotation shift");
  construct->add_option("--times", ca.times, "Number of lifts");
  construct->add_option("--input", ca.input, "Input strategy file (binps, lift, truncate)");
  construct->add_option("--pool", ca.pool, "Pool family file (rotate)");
  construct->add_option("--partition", ca.partition, "Pool index partitions: encoding, rank, half, evenodd");
  construct->add_option("--bins", ca.pattern_bins, "Rotating pattern: 4 for PS_j(4,2), 3 for PS_j(3,2)");
  construct->add_flag("--demo", ca.demo, "The three-bin rotation example for Q(9,4)");
  construct->add_option("--jobs", ca.jobs, "Worker threads");
  construct->add_option("-o,--output", ca.output, "Output file (default stdout)");

  VerifyArgs va;
  va.jobs = jobs_default;
  auto* verify = app.add_subcommand("verify", "Check properties of a strategy file");
  verify->add_option("file", va.file, "Strategy or family file")->required();
  verify->add_option("--checks", va.checks, "Comma list of matching, coverage, partition, polychromatic");
  verify->add_option("--k", va.k, "Subcube dimension (default: the header's k)");
  verify->add_option("--jobs", va.jobs, "Worker threads (default CUBEPAIR_JOBS or all cores)");
  verify->add_option("--json", va.json, "Also write the report as JSON ('-' for stdout)");

  int min_n = 3, max_n = 63;
  auto* table = app.add_subcommand("table", "Best k per dimension from the lift/truncate schedule");
  table->add_option("--min-n", min_n, "Smallest dimension");
  table->add_option("--max-n", max_n, "Largest dimension");

  PlayArgs pa;
  pa.jobs = jobs_default;
  auto* playc = app.add_subcommand("play", "Simulate games with Breaker following a strategy");
  playc->add_option("--n", pa.n, "Board dimension (must match the strategy)");
  playc->add_option("--k", pa.k, "Winning subcube dimension (default: the header's k)");
  playc->add_option("--strategy", pa.strategy, "Strategy file")->required();
  playc->add_option("--maker", pa.maker, "random, greedy or scripted");
  playc->add_option("--games", pa.games, "Number of games");
  playc->add_option("--seed", pa.seed, "Base seed; game g uses seed + g");
  playc->add_option("--script", pa.script, "Scripted Maker moves, comma separated bitstrings");
  playc->add_option("--transcript", pa.transcript, "Write the first game's transcript here");
  playc->add_option("--jobs", pa.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*construct) return run_construct(ca);
    if (*verify) return run_verify(va);
    if (*table) return run_table(min_n, max_n);
    if (*playc) return run_play(pa);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
