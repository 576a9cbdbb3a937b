// Xiangqi rules: board representation, move generation, make/undo, outcome.
//
// Squares are indexed rank * 9 + file. Red owns ranks 0-4 and moves first.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xqct {

enum class Color : std::uint8_t { Red = 0, Black = 1 };

constexpr Color opposite(Color c) { return c == Color::Red ? Color::Black : Color::Red; }

enum class PieceKind : std::uint8_t { King, Guard, Minister, Rook, Knight, Cannon, Pawn };

inline constexpr int kNumKinds = 7;
inline constexpr int kFiles = 9;
inline constexpr int kRanks = 10;
inline constexpr int kSquares = 90;
inline constexpr int kMaxPlies = 400;

struct Piece {
  Color color;
  PieceKind kind;
  friend bool operator==(const Piece&, const Piece&) = default;
};

struct Square {
  int file = 0;
  int rank = 0;

  constexpr int index() const { return rank * kFiles + file; }
  static constexpr Square at(int index) { return {index % kFiles, index / kFiles}; }
  constexpr Square mirrored() const { return {kFiles - 1 - file, rank}; }
  constexpr Square flipped() const { return {file, kRanks - 1 - rank}; }
  constexpr bool valid() const { return file >= 0 && file < kFiles && rank >= 0 && rank < kRanks; }
  friend bool operator==(const Square&, const Square&) = default;
};

struct Move {
  Square from;
  Square to;
  std::optional<Piece> captured;
  friend bool operator==(const Move&, const Move&) = default;
};

enum class Outcome : std::uint8_t { Ongoing, RedWin, BlackWin, Draw };

class FenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalMove : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Packed cell: 0 empty, otherwise (kind + 1) | (color << 3).
using Cell = std::uint8_t;

constexpr Cell encode(Piece p) {
  return static_cast<Cell>((static_cast<int>(p.kind) + 1) | (static_cast<int>(p.color) << 3));
}
constexpr std::optional<Piece> decode(Cell c) {
  if (c == 0) return std::nullopt;
  return Piece{static_cast<Color>(c >> 3), static_cast<PieceKind>((c & 7) - 1)};
}

// Square legality for a piece kind, from the point of view of its own color.
bool legal_square(Piece p, Square sq);

class Position {
 public:
  Position();  // empty board, red to move
  static Position start();

  std::optional<Piece> at(Square sq) const { return decode(cells_[sq.index()]); }
  Cell cell(int index) const { return cells_[index]; }
  const std::array<Cell, kSquares>& cells() const { return cells_; }
  Color side_to_move() const { return side_; }
  int ply() const { return ply_; }
  std::uint64_t hash() const { return hash_; }
  // Hashes of every position before the current one, oldest first.
  const std::vector<std::uint64_t>& history() const { return history_; }
  // -1 when that king is gone.
  int king_index(Color c) const { return kings_[static_cast<int>(c)]; }

  // In-place make/unmake without legality checks; used by search and tests.
  void make(const Move& m);
  void unmake(const Move& m);

  // Placement editing for setup code; keeps the hash consistent.
  void put(Square sq, std::optional<Piece> p);
  void set_side_to_move(Color c);
  void set_ply(int ply) { ply_ = ply; }
  void clear_history() { history_.clear(); }

  friend bool operator==(const Position&, const Position&) = default;

 private:
  std::array<Cell, kSquares> cells_{};
  Color side_ = Color::Red;
  int ply_ = 0;
  std::uint64_t hash_ = 0;
  std::vector<std::uint64_t> history_;
  std::array<int, 2> kings_{-1, -1};
};

Position parse_fen(std::string_view text);
std::string format_fen(const Position& pos);

std::string to_iccs(const Move& m);
// Resolves an ICCS string ("h2e2") against the legal moves of pos.
std::optional<Move> find_move(const Position& pos, std::string_view iccs);

// Destinations the piece on `from` may reach by its movement rule, ignoring
// the safety of its own king. Appends to out.
void pseudo_destinations(const Position& pos, int from, std::vector<int>& out);

// Squares of pieces of color `by` that attack `target` (could capture a piece
// standing there). The flying-general face-off is not an attack here.
struct AttackList {
  std::array<std::uint8_t, 16> squares{};
  int count = 0;
  void push(int sq) { squares[count++] = static_cast<std::uint8_t>(sq); }
};
AttackList attackers(const Position& pos, int target, Color by);
bool attacked(const Position& pos, int target, Color by);

bool kings_facing(const Position& pos);
// Own king capturable next ply, missing, or facing the other king.
bool king_exposed(const Position& pos, Color c);
bool in_check(const Position& pos, Color c);

std::vector<Move> legal_moves(const Position& pos);
// Stops at the first legal move found.
bool has_legal_move(const Position& pos);
Position apply_move(const Position& pos, const Move& m);
Position undo_move(const Position& pos, const Move& m);

Outcome outcome(const Position& pos);
// Draw by the simplified repetition rule: the current hash occurred at least
// twice before with the same side to move.
bool threefold_repetition(const Position& pos);

std::uint64_t perft(const Position& pos, int depth);

// Ranks flipped and colors swapped, with the same color to move, so the new
// mover owns the army that belonged to the old opponent.
Position mirror_color_swap(const Position& pos);

char piece_letter(Piece p);
std::string square_name(Square sq);

}  // namespace xqct
