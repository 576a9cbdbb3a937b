// Fixed-depth negamax alpha-beta with principal-variation extraction.
#pragma once

#include <cstdint>
#include <vector>

#include "xqct/board.hpp"
#include "xqct/eval.hpp"

namespace xqct {

inline constexpr double kMate = 1'000'000.0;

struct SearchResult {
  double score = 0.0;  // side-to-move perspective
  std::vector<Move> pv;
  std::uint64_t nodes = 0;
  int depth = 0;
};

// Plain alpha-beta over the fixed-order move list. Leaves are scored by
// evaluate(); a side with no king or no legal move scores -(kMate - ply),
// and a position at the ply limit scores 0.
SearchResult search(const Position& pos, int depth, const WeightStore& ws);

struct BudgetOptions {
  std::uint64_t node_budget = 400'000;
  int max_depth = 32;
  // Captures first and the previous iteration's best move first.
  bool order_moves = true;
  // Score any return to an earlier position of the game or line as a draw.
  bool repetition_draws = false;
};

// Iterative deepening until the node budget runs out; returns the deepest
// completed iteration. Depth 1 always completes.
SearchResult search_with_budget(const Position& pos, const WeightStore& ws, const BudgetOptions& opts);

// Static value of a search leaf: evaluate() or the terminal score, from the
// leaf's side to move. `distance` is the leaf's ply distance from the root.
double leaf_value(const Position& leaf, int distance, const WeightStore& ws);

struct PrincipalLeaf {
  Position leaf;
  double value = 0.0;  // backed-up value of the move, root mover's perspective
  int distance = 0;    // plies from the root to the leaf
};

// Leaf at the end of the principal variation below apply(pos, first_move),
// searched to depth - 1.
PrincipalLeaf principal_leaf(const Position& pos, const Move& first_move, int depth, const WeightStore& ws);
Position pv_leaf(const Position& pos, const Move& first_move, int depth, const WeightStore& ws);

}  // namespace xqct
