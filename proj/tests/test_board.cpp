#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "oracle/brute_movegen.hpp"
#include "xqct/board.hpp"

using namespace xqct;
using testutil::kStartFen;

namespace {

std::set<std::string> engine_set(const Position& pos) {
  std::set<std::string> s;
  for (const auto& m : legal_moves(pos)) s.insert(to_iccs(m));
  return s;
}

std::set<std::string> oracle_set(const Position& pos) {
  std::set<std::string> s;
  for (const auto& m : oracle::legal(oracle::grid_from_fen(format_fen(pos)))) {
    std::string t;
    t += static_cast<char>('a' + m.from_file);
    t += static_cast<char>('0' + m.from_rank);
    t += static_cast<char>('a' + m.to_file);
    t += static_cast<char>('0' + m.to_rank);
    s.insert(t);
  }
  return s;
}

}  // namespace

TEST_CASE("start position parses and round-trips") {
  Position p = parse_fen(kStartFen);
  CHECK(p == Position::start());
  CHECK(p.side_to_move() == Color::Red);
  CHECK(format_fen(p) == kStartFen);
  CHECK(p.at({4, 0}) == Piece{Color::Red, PieceKind::King});
  CHECK(p.at({4, 9}) == Piece{Color::Black, PieceKind::King});
  CHECK(p.at({1, 2}) == Piece{Color::Red, PieceKind::Cannon});
  CHECK(p.at({0, 6}) == Piece{Color::Black, PieceKind::Pawn});
  CHECK_FALSE(p.at({4, 4}).has_value());
}

TEST_CASE("fen errors name the problem") {
  auto message = [](const char* fen) {
    try {
      parse_fen(fen);
    } catch (const FenError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKKBNR w").find("piece count") !=
        std::string::npos);
  CHECK(message("rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABN w").find("length") != std::string::npos);
  CHECK(message("3k5/9/9/9/9/9/9/9/4K4 w").find("fewer than 10") != std::string::npos);
  CHECK(message("rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR x").find("side to move") !=
        std::string::npos);
  CHECK(message("4k4/9/9/9/9/9/9/9/9/3AK4 w").find("kings face") != std::string::npos);
  CHECK(message("3k5/9/9/9/9/9/9/9/9/A3K4 w").find("illegal square") != std::string::npos);
  CHECK(message("3k5/9/9/9/9/9/9/9/B8/4K4 w").find("illegal square") != std::string::npos);
  CHECK(message("3k5/9/9/9/9/9/9/P8/9/4K4 w").find("illegal square") != std::string::npos);
  CHECK(message("3k5/9/9/9/9/9/9/9/9/5X3 w").find("unknown piece") != std::string::npos);
  CHECK(message("").find("empty") != std::string::npos);
  CHECK(message("3k5/9/9/9/9/9/9/9/9/9 w").find("piece count") != std::string::npos);
}

TEST_CASE("perft matches published values and the brute-force oracle") {
  Position start = Position::start();
  CHECK(perft(start, 0) == 1);
  CHECK(perft(start, 1) == 44);
  CHECK(perft(start, 2) == 1920);
  CHECK(perft(start, 2) == oracle::perft(oracle::grid_from_fen(kStartFen), 2));
  CHECK(perft(start, 3) == 79666);

  const char* fens[] = {"r1ba1a3/4kn3/2n1b4/pNp1p1p1p/4c4/6P2/P1P2R2P/1CcC5/9/2BAKAB2 w",
                        "5a3/3k5/3aR4/9/5r3/5n3/9/3A1A3/5K3/2BC2B2 w", testutil::kThreatFen};
  for (const char* fen : fens) {
    Position p = parse_fen(fen);
    auto g = oracle::grid_from_fen(fen);
    for (int d = 1; d <= 2; ++d) CHECK(perft(p, d) == oracle::perft(g, d));
  }
  CHECK(perft(parse_fen(fens[0]), 3) == 43929);
  CHECK(perft(parse_fen(fens[1]), 3) == 9850);
}

TEST_CASE("perft is the sum over children") {
  for (const auto& p : testutil::random_positions(5, 11, 10, 60)) {
    std::uint64_t sum = 0;
    for (const auto& m : legal_moves(p)) sum += perft(apply_move(p, m), 1);
    CHECK(sum == perft(p, 2));
  }
}

TEST_CASE("legal move sets agree with the oracle on random positions") {
  for (const auto& p : testutil::random_positions(300, 5, 0, 200)) {
    INFO(format_fen(p));
    CHECK(engine_set(p) == oracle_set(p));
  }
}

TEST_CASE("legal moves are sorted and never leave the king exposed") {
  for (const auto& p : testutil::random_positions(100, 6, 0, 150)) {
    auto moves = legal_moves(p);
    CHECK(std::is_sorted(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
      return std::pair(a.from.index(), a.to.index()) < std::pair(b.from.index(), b.to.index());
    }));
    for (const auto& m : moves) {
      CHECK(m.from != m.to);
      if (m.captured) CHECK(m.captured->color != p.side_to_move());
      Position c = apply_move(p, m);
      CHECK_FALSE(king_exposed(c, p.side_to_move()));
      CHECK_FALSE(kings_facing(c));
    }
  }
}

TEST_CASE("check evasion with a rook on the king's file") {
  Position p = parse_fen("4k4/9/9/9/4r4/9/9/9/9/4K4 w");
  CHECK(in_check(p, Color::Red));
  auto moves = legal_moves(p);
  REQUIRE(moves.size() == 2);
  for (const auto& m : moves) CHECK(m.to.file != 4);
  CHECK(engine_set(p) == std::set<std::string>{"e0d0", "e0f0"});
}

TEST_CASE("only a king move escapes") {
  // Rook checks along rank 0; the king cannot stay on rank 0 and e1 is the
  // only square not covered by the rook or the facing black king on d9.
  Position p = parse_fen("3k5/9/9/9/9/9/9/9/9/r3K4 w");
  CHECK(engine_set(p) == std::set<std::string>{"e0e1"});
  CHECK(engine_set(p) == oracle_set(p));
}

TEST_CASE("no legal move is a loss for the side to move") {
  // Rooks on the two back ranks leave the black king no escape.
  Position p = parse_fen("3k5/8R/9/9/9/9/9/9/9/R3K4 w");
  Move m = *find_move(p, "a0a9");
  Position after = apply_move(p, m);
  CHECK(legal_moves(after).empty());
  CHECK(outcome(after) == Outcome::RedWin);
}

TEST_CASE("make and unmake restore the position bit-exactly") {
  std::mt19937_64 rng(1234);
  for (int game = 0; game < 1000; ++game) {
    Position pos = Position::start();
    std::vector<Position> before;
    std::vector<Move> played;
    int length = std::uniform_int_distribution<int>(1, 40)(rng);
    for (int i = 0; i < length; ++i) {
      auto moves = legal_moves(pos);
      if (moves.empty()) break;
      Move m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      before.push_back(pos);
      played.push_back(m);
      Position next = apply_move(pos, m);
      CHECK(next.ply() == pos.ply() + 1);
      pos = next;
    }
    while (!played.empty()) {
      pos = undo_move(pos, played.back());
      REQUIRE(pos == before.back());
      played.pop_back();
      before.pop_back();
    }
    CHECK(pos == Position::start());
  }
}

TEST_CASE("illegal moves are rejected") {
  Position p = Position::start();
  Move bogus{{4, 0}, {4, 2}, std::nullopt};
  CHECK_THROWS_AS(apply_move(p, bogus), IllegalMove);
  CHECK_FALSE(find_move(p, "e0e2").has_value());
  CHECK_FALSE(find_move(p, "zz").has_value());
  CHECK(find_move(p, "h2e2").has_value());
  CHECK_THROWS_AS(undo_move(p, *find_move(p, "h2e2")), IllegalMove);
}

TEST_CASE("king capture wins for the mover") {
  // Not reachable by legal play, but the rules engine must still score it.
  Position p = parse_fen("3k5/9/9/9/9/9/9/9/9/3RK4 w");
  Move cap{{3, 0}, {3, 9}, Piece{Color::Black, PieceKind::King}};
  p.make(cap);
  CHECK(p.king_index(Color::Black) == -1);
  CHECK(outcome(p) == Outcome::RedWin);
}

TEST_CASE("ply limit draws the game") {
  Position p = Position::start();
  while (p.ply() < 400) {
    CHECK(outcome(p) != Outcome::Draw);
    // Shuffle knights back and forth so the game never ends early.
    const char* cycle[] = {"b0c2", "b9c7", "c2b0", "c7b9"};
    p.make(*find_move(p, cycle[p.ply() % 4]));
  }
  CHECK(p.ply() == 400);
  CHECK(outcome(p) == Outcome::Draw);
}

TEST_CASE("repetition is detected from the hash history") {
  Position p = Position::start();
  const char* cycle[] = {"b0c2", "b9c7", "c2b0", "c7b9"};
  for (int i = 0; i < 4; ++i) p.make(*find_move(p, cycle[i]));
  CHECK_FALSE(threefold_repetition(p));
  for (int i = 0; i < 4; ++i) p.make(*find_move(p, cycle[i]));
  CHECK(threefold_repetition(p));
  CHECK(p.hash() == Position::start().hash());
}

TEST_CASE("hash follows placement edits") {
  Position a = parse_fen("3k5/9/9/9/9/9/9/9/9/4K4 w");
  Position b = a;
  b.put({0, 3}, Piece{Color::Red, PieceKind::Rook});
  CHECK(b.hash() != a.hash());
  b.put({0, 3}, std::nullopt);
  CHECK(b.hash() == a.hash());
  b.set_side_to_move(Color::Black);
  CHECK(b.hash() != a.hash());
}

TEST_CASE("mirror color swap is an involution that keeps the mover") {
  for (const auto& p : testutil::random_positions(50, 9)) {
    Position m = mirror_color_swap(p);
    CHECK(m.side_to_move() == p.side_to_move());
    Position back = mirror_color_swap(m);
    CHECK(format_fen(back) == format_fen(p));
  }
  CHECK(mirror_color_swap(Position::start()) == Position::start());
  Position q = parse_fen("3k5/9/9/9/9/9/9/9/R8/4K4 w");
  Position sq = mirror_color_swap(q);
  CHECK(sq.at({0, 8}) == Piece{Color::Black, PieceKind::Rook});
  CHECK(sq.at({3, 0}) == Piece{Color::Red, PieceKind::King});
  CHECK(sq.side_to_move() == Color::Red);
}
