#include "xqct/board.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace xqct {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Zobrist {
  std::array<std::array<std::uint64_t, kSquares>, 16> piece{};
  std::uint64_t black_to_move = 0;
};

constexpr Zobrist make_zobrist() {
  Zobrist z;
  std::uint64_t state = 0x5851F42D4C957F2DULL;
  for (auto& row : z.piece)
    for (auto& v : row) v = splitmix64(state);
  z.black_to_move = splitmix64(state);
  return z;
}

constexpr Zobrist kZobrist = make_zobrist();

constexpr std::array<int, kNumKinds> kMaxCount = {1, 2, 2, 2, 2, 2, 5};

inline int file_of(int sq) { return sq % kFiles; }
inline int rank_of(int sq) { return sq / kFiles; }
inline bool on_board(int f, int r) { return f >= 0 && f < kFiles && r >= 0 && r < kRanks; }
inline int sq_of(int f, int r) { return r * kFiles + f; }

inline Color color_of(Cell c) { return static_cast<Color>(c >> 3); }
inline PieceKind kind_of(Cell c) { return static_cast<PieceKind>((c & 7) - 1); }
inline Cell cell_of(Color c, PieceKind k) { return encode(Piece{c, k}); }

inline int own_rank(Color c, int rank) { return c == Color::Red ? rank : kRanks - 1 - rank; }

inline bool in_palace(Color c, int f, int r) {
  int rr = own_rank(c, r);
  return f >= 3 && f <= 5 && rr >= 0 && rr <= 2;
}

inline bool on_own_half(Color c, int r) { return own_rank(c, r) <= 4; }

inline int forward(Color c) { return c == Color::Red ? 1 : -1; }

constexpr int kOrth[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr int kDiag[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
constexpr int kKnight[8][2] = {{1, 2}, {-1, 2}, {1, -2}, {-1, -2},
                               {2, 1}, {2, -1}, {-2, 1}, {-2, -1}};

}  // namespace

bool legal_square(Piece p, Square sq) {
  if (!sq.valid()) return false;
  int f = sq.file;
  int r = own_rank(p.color, sq.rank);
  switch (p.kind) {
    case PieceKind::King:
      return f >= 3 && f <= 5 && r <= 2;
    case PieceKind::Guard:
      return (r == 0 || r == 2) ? (f == 3 || f == 5) : (r == 1 && f == 4);
    case PieceKind::Minister:
      if (r == 0 || r == 4) return f == 2 || f == 6;
      return r == 2 && (f == 0 || f == 4 || f == 8);
    case PieceKind::Pawn:
      if (r >= 5) return true;
      return (r == 3 || r == 4) && f % 2 == 0;
    default:
      return true;
  }
}

Position::Position() = default;

Position Position::start() { return parse_fen("rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR w"); }

void Position::put(Square sq, std::optional<Piece> p) {
  int i = sq.index();
  Cell old = cells_[i];
  if (old != 0) {
    hash_ ^= kZobrist.piece[old][i];
    if (kind_of(old) == PieceKind::King) kings_[static_cast<int>(color_of(old))] = -1;
  }
  cells_[i] = p ? encode(*p) : 0;
  if (p) {
    hash_ ^= kZobrist.piece[cells_[i]][i];
    if (p->kind == PieceKind::King) kings_[static_cast<int>(p->color)] = i;
  }
}

void Position::set_side_to_move(Color c) {
  if (c != side_) hash_ ^= kZobrist.black_to_move;
  side_ = c;
}

void Position::make(const Move& m) {
  int from = m.from.index();
  int to = m.to.index();
  Cell moving = cells_[from];
  Cell taken = cells_[to];
  history_.push_back(hash_);
  hash_ ^= kZobrist.piece[moving][from] ^ kZobrist.piece[moving][to] ^ kZobrist.black_to_move;
  if (taken != 0) {
    hash_ ^= kZobrist.piece[taken][to];
    if (kind_of(taken) == PieceKind::King) kings_[static_cast<int>(color_of(taken))] = -1;
  }
  if (kind_of(moving) == PieceKind::King) kings_[static_cast<int>(color_of(moving))] = to;
  cells_[to] = moving;
  cells_[from] = 0;
  side_ = opposite(side_);
  ++ply_;
}

void Position::unmake(const Move& m) {
  int from = m.from.index();
  int to = m.to.index();
  Cell moving = cells_[to];
  cells_[from] = moving;
  cells_[to] = m.captured ? encode(*m.captured) : 0;
  if (kind_of(moving) == PieceKind::King) kings_[static_cast<int>(color_of(moving))] = from;
  if (m.captured && m.captured->kind == PieceKind::King) kings_[static_cast<int>(m.captured->color)] = to;
  side_ = opposite(side_);
  --ply_;
  hash_ = history_.back();
  history_.pop_back();
}

char piece_letter(Piece p) {
  static constexpr char kLetters[kNumKinds] = {'K', 'A', 'B', 'R', 'N', 'C', 'P'};
  char c = kLetters[static_cast<int>(p.kind)];
  return p.color == Color::Red ? c : static_cast<char>(c - 'A' + 'a');
}

std::string square_name(Square sq) {
  return {static_cast<char>('a' + sq.file), static_cast<char>('0' + sq.rank)};
}

namespace {

std::optional<Piece> piece_from_letter(char c) {
  Color color = (c >= 'A' && c <= 'Z') ? Color::Red : Color::Black;
  char u = static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c);
  switch (u) {
    case 'K': return Piece{color, PieceKind::King};
    case 'A': case 'G': return Piece{color, PieceKind::Guard};
    case 'B': case 'E': case 'M': return Piece{color, PieceKind::Minister};
    case 'R': return Piece{color, PieceKind::Rook};
    case 'N': case 'H': return Piece{color, PieceKind::Knight};
    case 'C': return Piece{color, PieceKind::Cannon};
    case 'P': return Piece{color, PieceKind::Pawn};
    default: return std::nullopt;
  }
}

}  // namespace

Position parse_fen(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string placement, side;
  in >> placement >> side;
  if (placement.empty()) throw FenError("fen: empty piece placement field");

  Position pos;
  std::array<std::array<int, kNumKinds>, 2> counts{};
  int rank = kRanks - 1;
  int file = 0;
  auto finish_rank = [&] {
    if (file != kFiles)
      throw FenError("fen: piece placement field, rank " + std::to_string(rank) + " has length " +
                     std::to_string(file) + ", expected 9");
  };
  for (char c : placement) {
    if (c == '/') {
      finish_rank();
      if (--rank < 0) throw FenError("fen: piece placement field has more than 10 ranks");
      file = 0;
      continue;
    }
    if (c >= '1' && c <= '9') {
      file += c - '0';
      if (file > kFiles) finish_rank();
      continue;
    }
    auto p = piece_from_letter(c);
    if (!p) throw FenError(std::string("fen: piece placement field, unknown piece '") + c + "'");
    if (file >= kFiles) finish_rank();
    Square sq{file, rank};
    if (!legal_square(*p, sq))
      throw FenError(std::string("fen: piece placement field, illegal square ") + square_name(sq) +
                     " for '" + c + "'");
    int& n = counts[static_cast<int>(p->color)][static_cast<int>(p->kind)];
    if (++n > kMaxCount[static_cast<int>(p->kind)])
      throw FenError(std::string("fen: piece count exceeded for '") + c + "'");
    pos.put(sq, p);
    ++file;
  }
  finish_rank();
  if (rank != 0) throw FenError("fen: piece placement field has fewer than 10 ranks");
  for (int c = 0; c < 2; ++c)
    if (counts[c][0] != 1) throw FenError("fen: piece count, each side needs exactly one king");
  if (kings_facing(pos)) throw FenError("fen: piece placement field, kings face each other");

  if (side == "w" || side == "r") {
    pos.set_side_to_move(Color::Red);
  } else if (side == "b") {
    pos.set_side_to_move(Color::Black);
  } else {
    throw FenError("fen: side to move field must be 'w' or 'b', got '" + side + "'");
  }
  return pos;
}

std::string format_fen(const Position& pos) {
  std::string out;
  for (int r = kRanks - 1; r >= 0; --r) {
    int empty = 0;
    for (int f = 0; f < kFiles; ++f) {
      auto p = pos.at({f, r});
      if (!p) {
        ++empty;
        continue;
      }
      if (empty) out += static_cast<char>('0' + empty);
      empty = 0;
      out += piece_letter(*p);
    }
    if (empty) out += static_cast<char>('0' + empty);
    if (r) out += '/';
  }
  out += pos.side_to_move() == Color::Red ? " w" : " b";
  return out;
}

std::string to_iccs(const Move& m) { return square_name(m.from) + square_name(m.to); }

std::optional<Move> find_move(const Position& pos, std::string_view iccs) {
  if (iccs.size() != 4) return std::nullopt;
  auto parse = [](char f, char r) { return Square{f - 'a', r - '0'}; };
  Square from = parse(iccs[0], iccs[1]);
  Square to = parse(iccs[2], iccs[3]);
  if (!from.valid() || !to.valid()) return std::nullopt;
  for (const Move& m : legal_moves(pos))
    if (m.from == from && m.to == to) return m;
  return std::nullopt;
}

void pseudo_destinations(const Position& pos, int from, std::vector<int>& out) {
  Cell c = pos.cell(from);
  if (c == 0) return;
  Color me = color_of(c);
  int f0 = file_of(from), r0 = rank_of(from);
  auto can_land = [&](int sq) {
    Cell t = pos.cell(sq);
    return t == 0 || color_of(t) != me;
  };
  switch (kind_of(c)) {
    case PieceKind::King:
      for (auto& d : kOrth) {
        int f = f0 + d[0], r = r0 + d[1];
        if (in_palace(me, f, r) && can_land(sq_of(f, r))) out.push_back(sq_of(f, r));
      }
      break;
    case PieceKind::Guard:
      for (auto& d : kDiag) {
        int f = f0 + d[0], r = r0 + d[1];
        if (in_palace(me, f, r) && can_land(sq_of(f, r))) out.push_back(sq_of(f, r));
      }
      break;
    case PieceKind::Minister:
      for (auto& d : kDiag) {
        int f = f0 + 2 * d[0], r = r0 + 2 * d[1];
        if (!on_board(f, r) || !on_own_half(me, r)) continue;
        if (pos.cell(sq_of(f0 + d[0], r0 + d[1])) != 0) continue;
        if (can_land(sq_of(f, r))) out.push_back(sq_of(f, r));
      }
      break;
    case PieceKind::Knight:
      for (auto& d : kKnight) {
        int f = f0 + d[0], r = r0 + d[1];
        if (!on_board(f, r)) continue;
        int leg = std::abs(d[0]) == 2 ? sq_of(f0 + d[0] / 2, r0) : sq_of(f0, r0 + d[1] / 2);
        if (pos.cell(leg) != 0) continue;
        if (can_land(sq_of(f, r))) out.push_back(sq_of(f, r));
      }
      break;
    case PieceKind::Rook:
      for (auto& d : kOrth) {
        for (int f = f0 + d[0], r = r0 + d[1]; on_board(f, r); f += d[0], r += d[1]) {
          int sq = sq_of(f, r);
          if (pos.cell(sq) == 0) {
            out.push_back(sq);
            continue;
          }
          if (can_land(sq)) out.push_back(sq);
          break;
        }
      }
      break;
    case PieceKind::Cannon:
      for (auto& d : kOrth) {
        bool screened = false;
        for (int f = f0 + d[0], r = r0 + d[1]; on_board(f, r); f += d[0], r += d[1]) {
          int sq = sq_of(f, r);
          if (!screened) {
            if (pos.cell(sq) == 0) {
              out.push_back(sq);
            } else {
              screened = true;
            }
          } else if (pos.cell(sq) != 0) {
            if (can_land(sq)) out.push_back(sq);
            break;
          }
        }
      }
      break;
    case PieceKind::Pawn: {
      int r = r0 + forward(me);
      if (on_board(f0, r) && can_land(sq_of(f0, r))) out.push_back(sq_of(f0, r));
      if (!on_own_half(me, r0)) {
        for (int df : {-1, 1}) {
          int f = f0 + df;
          if (on_board(f, r0) && can_land(sq_of(f, r0))) out.push_back(sq_of(f, r0));
        }
      }
      break;
    }
  }
}

AttackList attackers(const Position& pos, int target, Color by) {
  AttackList list;
  int tf = file_of(target), tr = rank_of(target);

  for (auto& d : kOrth) {
    int seen = 0;
    for (int f = tf + d[0], r = tr + d[1]; on_board(f, r); f += d[0], r += d[1]) {
      int sq = sq_of(f, r);
      Cell c = pos.cell(sq);
      if (c == 0) continue;
      if (color_of(c) == by) {
        PieceKind k = kind_of(c);
        if (seen == 0 && k == PieceKind::Rook) list.push(sq);
        if (seen == 1 && k == PieceKind::Cannon) list.push(sq);
      }
      if (++seen == 2) break;
    }
  }

  // A knight standing at t - d reaches t by the move d; its leg is adjacent
  // to the knight in the direction of the long component.
  for (auto& d : kKnight) {
    int kf = tf - d[0], kr = tr - d[1];
    if (!on_board(kf, kr)) continue;
    int ksq = sq_of(kf, kr);
    if (pos.cell(ksq) != cell_of(by, PieceKind::Knight)) continue;
    int leg = std::abs(d[0]) == 2 ? sq_of(kf + d[0] / 2, kr) : sq_of(kf, kr + d[1] / 2);
    if (pos.cell(leg) == 0) list.push(ksq);
  }

  {
    Cell pawn = cell_of(by, PieceKind::Pawn);
    int r = tr - forward(by);
    if (on_board(tf, r) && pos.cell(sq_of(tf, r)) == pawn) list.push(sq_of(tf, r));
    if (!on_own_half(by, tr)) {
      for (int df : {-1, 1}) {
        int f = tf + df;
        if (on_board(f, tr) && pos.cell(sq_of(f, tr)) == pawn) list.push(sq_of(f, tr));
      }
    }
  }

  if (in_palace(by, tf, tr)) {
    for (auto& d : kOrth) {
      int f = tf + d[0], r = tr + d[1];
      if (in_palace(by, f, r) && pos.cell(sq_of(f, r)) == cell_of(by, PieceKind::King))
        list.push(sq_of(f, r));
    }
    for (auto& d : kDiag) {
      int f = tf + d[0], r = tr + d[1];
      if (in_palace(by, f, r) && pos.cell(sq_of(f, r)) == cell_of(by, PieceKind::Guard))
        list.push(sq_of(f, r));
    }
  }

  if (on_own_half(by, tr)) {
    for (auto& d : kDiag) {
      int f = tf + 2 * d[0], r = tr + 2 * d[1];
      if (!on_board(f, r)) continue;
      if (pos.cell(sq_of(f, r)) != cell_of(by, PieceKind::Minister)) continue;
      if (pos.cell(sq_of(tf + d[0], tr + d[1])) == 0) list.push(sq_of(f, r));
    }
  }
  return list;
}

bool attacked(const Position& pos, int target, Color by) { return attackers(pos, target, by).count > 0; }

bool kings_facing(const Position& pos) {
  int a = pos.king_index(Color::Red), b = pos.king_index(Color::Black);
  if (a < 0 || b < 0 || file_of(a) != file_of(b)) return false;
  for (int sq = a + kFiles; sq < b; sq += kFiles)
    if (pos.cell(sq) != 0) return false;
  return true;
}

bool king_exposed(const Position& pos, Color c) {
  int k = pos.king_index(c);
  if (k < 0) return true;
  if (kings_facing(pos)) return true;
  return attacked(pos, k, opposite(c));
}

bool in_check(const Position& pos, Color c) {
  int k = pos.king_index(c);
  return k >= 0 && (attacked(pos, k, opposite(c)) || kings_facing(pos));
}

std::vector<Move> legal_moves(const Position& pos) {
  std::vector<Move> moves;
  Position work = pos;
  Color me = pos.side_to_move();
  std::vector<int> dests;
  dests.reserve(32);
  for (int from = 0; from < kSquares; ++from) {
    Cell c = pos.cell(from);
    if (c == 0 || color_of(c) != me) continue;
    dests.clear();
    pseudo_destinations(pos, from, dests);
    std::sort(dests.begin(), dests.end());
    for (int to : dests) {
      Move m{Square::at(from), Square::at(to), decode(pos.cell(to))};
      work.make(m);
      bool ok = !king_exposed(work, me);
      work.unmake(m);
      if (ok) moves.push_back(m);
    }
  }
  return moves;
}

bool has_legal_move(const Position& pos) {
  Position work = pos;
  Color me = pos.side_to_move();
  std::vector<int> dests;
  for (int from = 0; from < kSquares; ++from) {
    Cell c = pos.cell(from);
    if (c == 0 || color_of(c) != me) continue;
    dests.clear();
    pseudo_destinations(pos, from, dests);
    for (int to : dests) {
      Move m{Square::at(from), Square::at(to), decode(pos.cell(to))};
      work.make(m);
      bool ok = !king_exposed(work, me);
      work.unmake(m);
      if (ok) return true;
    }
  }
  return false;
}

Position apply_move(const Position& pos, const Move& m) {
  auto moves = legal_moves(pos);
  if (std::find(moves.begin(), moves.end(), m) == moves.end())
    throw IllegalMove("apply_move: " + to_iccs(m) + " is not legal in " + format_fen(pos));
  Position next = pos;
  next.make(m);
  return next;
}

Position undo_move(const Position& pos, const Move& m) {
  auto moved = pos.at(m.to);
  if (pos.history().empty() || !moved || moved->color == pos.side_to_move() || pos.at(m.from))
    throw IllegalMove("undo_move: " + to_iccs(m) + " was not the last move");
  Position prev = pos;
  prev.unmake(m);
  return prev;
}

Outcome outcome(const Position& pos) {
  if (pos.king_index(Color::Red) < 0) return Outcome::BlackWin;
  if (pos.king_index(Color::Black) < 0) return Outcome::RedWin;
  if (legal_moves(pos).empty())
    return pos.side_to_move() == Color::Red ? Outcome::BlackWin : Outcome::RedWin;
  // Once 400 plies are on the board any continuation exceeds the limit.
  if (pos.ply() >= kMaxPlies) return Outcome::Draw;
  return Outcome::Ongoing;
}

bool threefold_repetition(const Position& pos) {
  const auto& h = pos.history();
  int seen = 0;
  for (auto it = h.rbegin(); it != h.rend(); ++it)
    if (*it == pos.hash() && ++seen >= 2) return true;
  return false;
}

namespace {

std::uint64_t perft_rec(Position& pos, int depth) {
  auto moves = legal_moves(pos);
  if (depth == 1) return moves.size();
  std::uint64_t n = 0;
  for (const Move& m : moves) {
    pos.make(m);
    n += perft_rec(pos, depth - 1);
    pos.unmake(m);
  }
  return n;
}

}  // namespace

std::uint64_t perft(const Position& pos, int depth) {
  if (depth <= 0) return 1;
  Position work = pos;
  return perft_rec(work, depth);
}

Position mirror_color_swap(const Position& pos) {
  Position out;
  for (int i = 0; i < kSquares; ++i) {
    auto p = pos.at(Square::at(i));
    if (!p) continue;
    out.put(Square::at(i).flipped(), Piece{opposite(p->color), p->kind});
  }
  out.set_side_to_move(pos.side_to_move());
  out.set_ply(pos.ply());
  return out;
}

}  // namespace xqct
