#include "xqct/harness.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

#include "xqct/parallel.hpp"
#include "xqct/search.hpp"

namespace xqct {

std::string_view end_reason_name(EndReason r) {
  switch (r) {
    case EndReason::KingCaptured: return "king-captured";
    case EndReason::NoLegalMove: return "no-legal-move";
    case EndReason::Repetition: return "repetition";
    case EndReason::PlyLimit: return "ply-limit";
  }
  return "?";
}

GameLog play_game(const WeightStore& red, const WeightStore& black, const Position& opening,
                  std::uint64_t node_budget) {
  GameLog log;
  Position pos = opening;
  pos.set_ply(0);
  pos.clear_history();
  BudgetOptions opts;
  opts.node_budget = node_budget;
  opts.repetition_draws = true;
  for (;;) {
    if (pos.king_index(Color::Red) < 0 || pos.king_index(Color::Black) < 0) {
      log.outcome = pos.king_index(Color::Red) < 0 ? Outcome::BlackWin : Outcome::RedWin;
      log.reason = EndReason::KingCaptured;
      break;
    }
    if (!has_legal_move(pos)) {
      log.outcome = pos.side_to_move() == Color::Red ? Outcome::BlackWin : Outcome::RedWin;
      log.reason = EndReason::NoLegalMove;
      break;
    }
    if (threefold_repetition(pos)) {
      log.outcome = Outcome::Draw;
      log.reason = EndReason::Repetition;
      break;
    }
    if (pos.ply() >= kMaxPlies) {
      log.outcome = Outcome::Draw;
      log.reason = EndReason::PlyLimit;
      break;
    }
    const WeightStore& ws = pos.side_to_move() == Color::Red ? red : black;
    SearchResult r = search_with_budget(pos, ws, opts);
    const Move m = r.pv.front();
    pos.make(m);
    log.moves.push_back(m);
  }
  log.plies = pos.ply();
  return log;
}

double MatchGame::a_score() const {
  if (outcome == Outcome::Draw || outcome == Outcome::Ongoing) return 0.5;
  bool red_won = outcome == Outcome::RedWin;
  return red_won == a_is_red ? 1.0 : 0.0;
}

double MatchResult::win_rate() const {
  int n = wins + draws + losses;
  return n ? (wins + 0.5 * draws) / n : 0.0;
}

double MatchResult::standard_error() const {
  // Each opening's color-swapped pair is one observation.
  std::map<int, std::pair<double, int>> pairs;
  for (const auto& g : games) {
    auto& [sum, n] = pairs[g.opening];
    sum += g.a_score();
    ++n;
  }
  if (pairs.size() < 2) return 0.0;
  double mean = 0.0;
  for (const auto& [id, p] : pairs) mean += p.first / p.second;
  mean /= static_cast<double>(pairs.size());
  double var = 0.0;
  for (const auto& [id, p] : pairs) var += (p.first / p.second - mean) * (p.first / p.second - mean);
  var /= static_cast<double>(pairs.size() - 1);
  return std::sqrt(var / static_cast<double>(pairs.size()));
}

MatchResult summarize(std::vector<MatchGame> games) {
  MatchResult m;
  m.games = std::move(games);
  for (const auto& g : m.games) {
    double s = g.a_score();
    if (s == 1.0) {
      ++m.wins;
    } else if (s == 0.0) {
      ++m.losses;
    } else {
      ++m.draws;
    }
  }
  return m;
}

MatchResult run_match(const WeightStore& a, const WeightStore& b, const std::vector<Position>& openings,
                      std::uint64_t node_budget, int workers) {
  std::vector<MatchGame> games(openings.size() * 2);
  parallel_for(games.size(), workers, [&](std::size_t i) {
    MatchGame& g = games[i];
    g.opening = static_cast<int>(i / 2);
    g.a_is_red = i % 2 == 0;
    const WeightStore& red = g.a_is_red ? a : b;
    const WeightStore& black = g.a_is_red ? b : a;
    GameLog log = play_game(red, black, openings[i / 2], node_budget);
    g.outcome = log.outcome;
    g.reason = log.reason;
    g.plies = log.plies;
  });
  return summarize(std::move(games));
}

std::string format_report(const MatchResult& m) {
  std::ostringstream out;
  for (const auto& g : m.games) {
    const char* res = g.outcome == Outcome::RedWin ? "1-0" : g.outcome == Outcome::BlackWin ? "0-1" : "1/2-1/2";
    out << "game opening=" << g.opening << " a=" << (g.a_is_red ? "red" : "black") << " result=" << res
        << " a_score=" << g.a_score() << " plies=" << g.plies << " end=" << end_reason_name(g.reason) << '\n';
  }
  out << "summary games=" << m.games.size() << " wins=" << m.wins << " draws=" << m.draws << " losses=" << m.losses
      << '\n';
  out << "win_rate=" << m.win_rate() << " stderr=" << m.standard_error() << '\n';
  return out.str();
}

std::vector<Position> generate_openings(const WeightStore& ws, int count, std::uint64_t seed, int min_plies,
                                        int max_plies, double max_abs_score) {
  std::mt19937_64 rng(seed);
  std::vector<Position> out;
  std::unordered_set<std::uint64_t> seen;
  for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < count * 200; ++attempt) {
    Position pos = Position::start();
    int plies = std::uniform_int_distribution<int>(min_plies, max_plies)(rng);
    bool ok = true;
    for (int p = 0; p < plies && ok; ++p) {
      auto moves = legal_moves(pos);
      if (moves.empty()) {
        ok = false;
        break;
      }
      pos.make(moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
    }
    if (!ok || !seen.insert(pos.hash()).second) continue;
    if (std::abs(search(pos, 2, ws).score) > max_abs_score) continue;
    pos.set_ply(0);
    pos.clear_history();
    out.push_back(pos);
  }
  return out;
}

}  // namespace xqct
