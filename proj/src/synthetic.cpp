#include "xqct/synthetic.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

namespace xqct {
namespace {

// Own-frame square bonus.
double square_bonus(PieceKind kind, Square sq) {
  int f = sq.file, r = sq.rank;
  int center = std::abs(f - 4);
  switch (kind) {
    case PieceKind::King:
      return (f == 4 ? 20 : 0) - 20 * r;
    case PieceKind::Guard:
      return r == 1 ? 20 : r == 0 ? 0 : -10;
    case PieceKind::Minister:
      if (r == 2 && f == 4) return 20;
      if (r == 0) return 10;
      return r == 2 ? -10 : 0;
    case PieceKind::Rook: {
      double v = 0;
      if (r == 4 || r == 5) v += 20;
      if (r >= 6 && r <= 8) v += 30;
      if (center <= 1) v += 10;
      if (r == 0 && center == 4) v -= 20;
      return v;
    }
    case PieceKind::Knight: {
      double v = 10.0 * std::min(r, 7) - 12.0 * center;
      if (center == 4) v -= 20;
      if (r == 9) v -= 20;
      return v;
    }
    case PieceKind::Cannon:
      if (f == 4 && r <= 3) return 40;
      if (r == 9) return 30;
      return -4.0 * center;
    case PieceKind::Pawn: {
      if (r <= 4) return r == 4 ? 10 : 0;
      static constexpr double kAdvance[10] = {0, 0, 0, 0, 0, 40, 70, 90, 80, 10};
      return kAdvance[r] + 6.0 * (4 - center);
    }
  }
  return 0;
}

// Teacher value of every legal move; returns the index of the strict best
// or -1 when the best value is shared.
int strict_best(const Position& pos, const WeightStore& teacher, int depth, std::vector<Move>& moves) {
  MoveLeaves ml = evaluate_moves(pos, teacher, depth);
  moves = ml.moves;
  if (ml.moves.size() < 2) return -1;
  int best = 0;
  bool tie = false;
  for (int i = 1; i < static_cast<int>(ml.values.size()); ++i) {
    if (ml.values[i] > ml.values[best]) {
      best = i;
      tie = false;
    } else if (ml.values[i] == ml.values[best]) {
      tie = true;
    }
  }
  return tie ? -1 : best;
}

}  // namespace

WeightStore teacher_weights(const FeatureLayout& layout) {
  const SetBlock* matl = layout.find(FeatureSet::Matl);
  const SetBlock* loc = layout.find(FeatureSet::Loc);
  if (!matl || !loc) throw TrainingError("teacher_weights: layout needs MATL and LOC");
  WeightStore ws(layout);
  for (PieceKind k : kMaterialKinds) {
    ws.opening[matl->offset + material_slot(k)] = initial_material_weight(k);
    ws.endgame[matl->offset + material_slot(k)] = initial_material_weight(k);
  }
  for (int k = 0; k < kNumKinds; ++k) {
    auto kind = static_cast<PieceKind>(k);
    for (int i = 0; i < kSquares; ++i) {
      Square sq = Square::at(i);
      if (sq.file > 4 || !legal_square(Piece{Color::Red, kind}, sq)) continue;
      int slot = loc->offset + loc_index(kind, sq);
      ws.opening[slot] = ws.endgame[slot] = 2.0 * square_bonus(kind, sq);
    }
  }
  return ws;
}

std::vector<TrainingSample> synthetic_samples(const WeightStore& teacher, std::size_t count, std::uint64_t seed,
                                              int depth) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<TrainingSample> out;
  std::unordered_set<std::uint64_t> seen;
  std::vector<Move> moves;
  while (out.size() < count) {
    Position pos = Position::start();
    int length = std::uniform_int_distribution<int>(10, 160)(rng);
    for (int ply = 0; ply < length && out.size() < count; ++ply) {
      int best = strict_best(pos, teacher, depth, moves);
      if (moves.empty()) break;
      if (best >= 0 && coin(rng) < 0.25 && seen.insert(pos.hash()).second) {
        Position sample = pos;
        sample.set_ply(0);
        sample.clear_history();
        out.push_back({std::move(sample), moves[static_cast<std::size_t>(best)]});
      }
      std::size_t pick = (best >= 0 && coin(rng) < 0.6)
                             ? static_cast<std::size_t>(best)
                             : std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng);
      pos.make(moves[pick]);
      if (pos.king_index(Color::Red) < 0 || pos.king_index(Color::Black) < 0) break;
    }
  }
  return out;
}

std::vector<GameRecord> samples_to_records(const std::vector<TrainingSample>& samples) {
  std::vector<GameRecord> out;
  out.reserve(samples.size());
  int id = 1;
  for (const auto& s : samples) {
    GameRecord r;
    r.id = id++;
    r.initial = format_fen(s.position);
    r.moves.push_back(to_iccs(s.expert_move));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace xqct
