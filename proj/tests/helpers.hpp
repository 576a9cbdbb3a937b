#pragma once

#include <random>
#include <vector>

#include "xqct/board.hpp"
#include "xqct/eval.hpp"

namespace testutil {

inline const char* kStartFen = "rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR w";
inline const char* kThreatFen = "1r2ka3/4a4/2n3N2/2p1p4/c1p3p2/1nP2R2P/4C4/9/5N3/2BK5 w";

// Positions reached by uniformly random legal play from the start.
inline std::vector<xqct::Position> random_positions(std::size_t count, std::uint64_t seed, int min_plies = 0,
                                                    int max_plies = 120) {
  std::mt19937_64 rng(seed);
  std::vector<xqct::Position> out;
  while (out.size() < count) {
    xqct::Position pos = xqct::Position::start();
    int plies = std::uniform_int_distribution<int>(min_plies, max_plies)(rng);
    for (int i = 0; i < plies; ++i) {
      auto moves = xqct::legal_moves(pos);
      if (moves.empty()) break;
      pos.make(moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
    }
    if (!xqct::legal_moves(pos).empty()) out.push_back(pos);
  }
  return out;
}

// Weights with a distinct pseudo-random value on every slot.
inline xqct::WeightStore random_weights(const xqct::FeatureLayout& layout, std::uint64_t seed, double scale = 100.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  xqct::WeightStore ws(layout);
  for (int i = 0; i < ws.size(); ++i) {
    ws.opening[i] = u(rng);
    ws.endgame[i] = u(rng);
  }
  return ws;
}

}  // namespace testutil
