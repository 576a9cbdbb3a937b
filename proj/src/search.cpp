#include "xqct/search.hpp"

#include <algorithm>
#include <limits>

namespace xqct {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BudgetExceeded {};

class Searcher {
 public:
  Searcher(const WeightStore& ws, std::uint64_t budget, bool order, bool repetition_draws = false)
      : ws_(ws), budget_(budget), order_(order), repetition_draws_(repetition_draws) {}

  double negamax(Position& pos, int depth, double alpha, double beta, int ply, std::vector<Move>& pv) {
    ++nodes_;
    if (budget_ && nodes_ > budget_) throw BudgetExceeded{};
    pv.clear();
    if (pos.king_index(pos.side_to_move()) < 0) return -(kMate - ply);
    if (repetition_draws_ && ply > 0 && repeats(pos)) return 0.0;
    if (depth == 0) return leaf_value(pos, ply, ws_);

    std::vector<Move> moves = legal_moves(pos);
    if (moves.empty()) return -(kMate - ply);
    if (pos.ply() >= kMaxPlies) return 0.0;
    if (order_) order(moves, ply == 0 ? root_hint_ : nullptr);

    double best = -kInf;
    std::vector<Move> child_pv;
    for (const Move& m : moves) {
      pos.make(m);
      double v = -negamax(pos, depth - 1, -beta, -alpha, ply + 1, child_pv);
      pos.unmake(m);
      if (v > best) {
        best = v;
        pv.assign(1, m);
        pv.insert(pv.end(), child_pv.begin(), child_pv.end());
      }
      alpha = std::max(alpha, v);
      if (alpha >= beta) break;
    }
    return best;
  }

  std::uint64_t nodes() const { return nodes_; }
  void set_root_hint(const Move* m) { root_hint_ = m; }

 private:
  static bool repeats(const Position& pos) {
    const auto& h = pos.history();
    return std::find(h.begin(), h.end(), pos.hash()) != h.end();
  }

  // Stable: hint move, then captures by victim value desc and attacker value
  // asc, then the generator order.
  static void order(std::vector<Move>& moves, const Move* hint) {
    auto key = [&](const Move& m) {
      if (hint && m == *hint) return -1'000'000'000;
      if (!m.captured) return 0;
      return -(piece_value(m.captured->kind) * 16) + 1;
    };
    std::stable_sort(moves.begin(), moves.end(), [&](const Move& a, const Move& b) { return key(a) < key(b); });
  }

  const WeightStore& ws_;
  std::uint64_t budget_;
  bool order_;
  bool repetition_draws_;
  std::uint64_t nodes_ = 0;
  const Move* root_hint_ = nullptr;
};

}  // namespace

double leaf_value(const Position& leaf, int distance, const WeightStore& ws) {
  if (leaf.king_index(leaf.side_to_move()) < 0 || !has_legal_move(leaf)) return -(kMate - distance);
  if (leaf.ply() >= kMaxPlies) return 0.0;
  return evaluate(leaf, ws);
}

SearchResult search(const Position& pos, int depth, const WeightStore& ws) {
  Searcher s(ws, 0, false);
  Position work = pos;
  SearchResult r;
  r.score = s.negamax(work, std::max(depth, 0), -kInf, kInf, 0, r.pv);
  r.nodes = s.nodes();
  r.depth = depth;
  return r;
}

SearchResult search_with_budget(const Position& pos, const WeightStore& ws, const BudgetOptions& opts) {
  SearchResult best;
  std::uint64_t spent = 0;
  for (int depth = 1; depth <= opts.max_depth; ++depth) {
    std::uint64_t remaining = opts.node_budget > spent ? opts.node_budget - spent : 0;
    Searcher s(ws, depth == 1 ? 0 : remaining, opts.order_moves, opts.repetition_draws);
    Move hint;
    if (!best.pv.empty()) {
      hint = best.pv.front();
      s.set_root_hint(&hint);
    }
    Position work = pos;
    SearchResult r;
    try {
      r.score = s.negamax(work, depth, -kInf, kInf, 0, r.pv);
    } catch (const BudgetExceeded&) {
      best.nodes = spent + s.nodes();
      return best;
    }
    spent += s.nodes();
    r.nodes = spent;
    r.depth = depth;
    best = std::move(r);
    if (spent >= opts.node_budget) break;
    // A forced result cannot change with more depth.
    if (std::abs(best.score) > kMate / 2 || static_cast<int>(best.pv.size()) < depth) break;
  }
  return best;
}

PrincipalLeaf principal_leaf(const Position& pos, const Move& first_move, int depth, const WeightStore& ws) {
  PrincipalLeaf out;
  out.leaf = pos;
  out.leaf.make(first_move);
  SearchResult r = search(out.leaf, std::max(depth - 1, 0), ws);
  for (const Move& m : r.pv) out.leaf.make(m);
  out.distance = 1 + static_cast<int>(r.pv.size());
  // The child search counts plies from the child; shift terminal scores so
  // they are measured from the root like a full-tree search would.
  double v = r.score;
  if (v > kMate / 2) v -= 1.0;
  if (v < -kMate / 2) v += 1.0;
  out.value = -v;
  return out;
}

Position pv_leaf(const Position& pos, const Move& first_move, int depth, const WeightStore& ws) {
  return principal_leaf(pos, first_move, depth, ws).leaf;
}

}  // namespace xqct
