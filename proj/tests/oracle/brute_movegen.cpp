#include "brute_movegen.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace oracle {
namespace {

bool is_red(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
char kind(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool in_palace(bool red, int f, int r) {
  if (f < 3 || f > 5) return false;
  return red ? (r <= 2) : (r >= 7);
}

bool own_half(bool red, int r) { return red ? r <= 4 : r >= 5; }

int pieces_between(const Grid& g, int ff, int fr, int tf, int tr) {
  int n = 0;
  if (ff == tf) {
    int lo = std::min(fr, tr), hi = std::max(fr, tr);
    for (int r = lo + 1; r < hi; ++r) n += g.cell[r][ff] != '.';
  } else {
    int lo = std::min(ff, tf), hi = std::max(ff, tf);
    for (int f = lo + 1; f < hi; ++f) n += g.cell[fr][f] != '.';
  }
  return n;
}

}  // namespace

Grid grid_from_fen(const std::string& fen) {
  Grid g;
  for (auto& row : g.cell) row.fill('.');
  int rank = 9, file = 0;
  std::size_t i = 0;
  for (; i < fen.size() && fen[i] != ' '; ++i) {
    char c = fen[i];
    if (c == '/') {
      --rank;
      file = 0;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      file += c - '0';
    } else {
      g.cell[rank][file++] = c;
    }
  }
  g.red_to_move = !(i + 1 < fen.size() && fen[i + 1] == 'b');
  return g;
}

bool rule_allows(const Grid& g, int ff, int fr, int tf, int tr) {
  char p = g.cell[fr][ff];
  if (p == '.') return false;
  if (ff == tf && fr == tr) return false;
  char target = g.cell[tr][tf];
  bool red = is_red(p);
  if (target != '.' && is_red(target) == red) return false;
  int df = tf - ff, dr = tr - fr;
  int adf = std::abs(df), adr = std::abs(dr);
  switch (kind(p)) {
    case 'k':
      return adf + adr == 1 && in_palace(red, tf, tr);
    case 'a':
      return adf == 1 && adr == 1 && in_palace(red, tf, tr);
    case 'b':
      return adf == 2 && adr == 2 && own_half(red, tr) &&
             g.cell[fr + dr / 2][ff + df / 2] == '.';
    case 'n': {
      if (!((adf == 1 && adr == 2) || (adf == 2 && adr == 1))) return false;
      int lf = ff + (adf == 2 ? df / 2 : 0);
      int lr = fr + (adr == 2 ? dr / 2 : 0);
      return g.cell[lr][lf] == '.';
    }
    case 'r':
      return (df == 0 || dr == 0) && pieces_between(g, ff, fr, tf, tr) == 0;
    case 'c':
      if (df != 0 && dr != 0) return false;
      return pieces_between(g, ff, fr, tf, tr) == (target == '.' ? 0 : 1);
    case 'p': {
      int forward = red ? 1 : -1;
      if (df == 0 && dr == forward) return true;
      bool crossed = !own_half(red, fr);
      return crossed && dr == 0 && adf == 1;
    }
    default:
      throw std::runtime_error("oracle: unknown piece");
  }
}

namespace {

bool king_safe(const Grid& g, bool red) {
  int kf = -1, kr = -1, of = -1, orr = -1;
  for (int r = 0; r < 10; ++r)
    for (int f = 0; f < 9; ++f) {
      char c = g.cell[r][f];
      if (c == (red ? 'K' : 'k')) kf = f, kr = r;
      if (c == (red ? 'k' : 'K')) of = f, orr = r;
    }
  if (kf < 0) return false;
  if (of == kf && pieces_between(g, kf, kr, of, orr) == 0) return false;
  for (int r = 0; r < 10; ++r)
    for (int f = 0; f < 9; ++f) {
      char c = g.cell[r][f];
      if (c == '.' || is_red(c) == red) continue;
      if (rule_allows(g, f, r, kf, kr)) return false;
    }
  return true;
}

}  // namespace

Grid play(const Grid& g, const OracleMove& m) {
  Grid n = g;
  n.cell[m.to_rank][m.to_file] = n.cell[m.from_rank][m.from_file];
  n.cell[m.from_rank][m.from_file] = '.';
  n.red_to_move = !g.red_to_move;
  return n;
}

std::vector<OracleMove> legal(const Grid& g) {
  std::vector<OracleMove> out;
  for (int fr = 0; fr < 10; ++fr)
    for (int ff = 0; ff < 9; ++ff) {
      char p = g.cell[fr][ff];
      if (p == '.' || is_red(p) != g.red_to_move) continue;
      for (int tr = 0; tr < 10; ++tr)
        for (int tf = 0; tf < 9; ++tf) {
          if (!rule_allows(g, ff, fr, tf, tr)) continue;
          OracleMove m{ff, fr, tf, tr};
          if (king_safe(play(g, m), g.red_to_move)) out.push_back(m);
        }
    }
  return out;
}

std::uint64_t perft(const Grid& g, int depth) {
  if (depth == 0) return 1;
  std::uint64_t n = 0;
  for (const auto& m : legal(g)) n += perft(play(g, m), depth - 1);
  return n;
}

}  // namespace oracle
