// Engine-vs-engine matches: every opening is played twice with colors
// swapped, moves chosen by a node-budgeted search.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xqct/board.hpp"
#include "xqct/eval.hpp"

namespace xqct {

enum class EndReason : std::uint8_t { KingCaptured, NoLegalMove, Repetition, PlyLimit };

std::string_view end_reason_name(EndReason r);

struct GameLog {
  Outcome outcome = Outcome::Ongoing;
  EndReason reason = EndReason::PlyLimit;
  std::vector<Move> moves;
  int plies = 0;
};

GameLog play_game(const WeightStore& red, const WeightStore& black, const Position& opening,
                  std::uint64_t node_budget);

struct MatchGame {
  int opening = 0;
  bool a_is_red = true;
  Outcome outcome = Outcome::Ongoing;
  EndReason reason = EndReason::PlyLimit;
  int plies = 0;
  // 1 win, 0.5 draw, 0 loss, from A's point of view.
  double a_score() const;
};

struct MatchResult {
  std::vector<MatchGame> games;
  int wins = 0;
  int draws = 0;
  int losses = 0;
  double win_rate() const;
  // Standard error of the win rate, treating each opening pair as one sample.
  double standard_error() const;
};

MatchResult summarize(std::vector<MatchGame> games);

MatchResult run_match(const WeightStore& a, const WeightStore& b, const std::vector<Position>& openings,
                      std::uint64_t node_budget, int workers = 1);

// One line per game, then a summary block.
std::string format_report(const MatchResult& m);

// Distinct positions after a few random plies from the start, keeping only
// those a shallow search with `ws` scores within `max_abs_score`.
std::vector<Position> generate_openings(const WeightStore& ws, int count, std::uint64_t seed, int min_plies = 2,
                                        int max_plies = 6, double max_abs_score = 400.0);

}  // namespace xqct
