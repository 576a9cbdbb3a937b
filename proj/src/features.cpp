#include "xqct/features.hpp"

#include <algorithm>
#include <sstream>

namespace xqct {
namespace {

constexpr std::array<std::string_view, 8> kSetNames = {"MATL", "LOC", "MOB", "AKA",
                                                       "SPC",  "COP", "MATL2", "LOC2"};
constexpr std::array<std::string_view, 8> kSchemes = {"matl-v1", "loc-fold-v1", "mob-n9-r17-v1",
                                                      "aka-b5-v1", "spc-b5-v1", "cop-32-v1",
                                                      "matl2-21x21-v1", "loc2-v1"};
constexpr std::array<int, kNumKinds> kMaxCount = {1, 2, 2, 2, 2, 2, 5};
constexpr std::array<char, kNumKinds> kKindLetter = {'K', 'G', 'M', 'R', 'N', 'C', 'P'};

int kind_index(PieceKind k) { return static_cast<int>(k); }

Square own_frame(Color c, Square sq) { return c == Color::Red ? sq : sq.flipped(); }

// Location tables per kind in the red frame: folded slot, unfolded slot and
// the representative square of each folded slot.
struct LocationTables {
  std::array<std::array<int, kSquares>, kNumKinds> folded{};
  std::array<std::array<int, kSquares>, kNumKinds> full{};
  std::array<int, kNumKinds> folded_count{};
  std::array<int, kNumKinds> full_count{};
  std::array<int, kNumKinds> loc_base{};
  std::array<std::vector<Square>, kNumKinds> folded_square;
  std::array<std::vector<Square>, kNumKinds> full_square;
};

const LocationTables& tables() {
  static const LocationTables t = [] {
    LocationTables t;
    int base = 0;
    for (int k = 0; k < kNumKinds; ++k) {
      Piece p{Color::Red, static_cast<PieceKind>(k)};
      t.folded[k].fill(-1);
      t.full[k].fill(-1);
      for (int i = 0; i < kSquares; ++i) {
        Square sq = Square::at(i);
        if (!legal_square(p, sq)) continue;
        t.full[k][i] = t.full_count[k]++;
        t.full_square[k].push_back(sq);
        if (sq.file <= 4) {
          t.folded[k][i] = t.folded_count[k]++;
          t.folded_square[k].push_back(sq);
        }
      }
      for (int i = 0; i < kSquares; ++i) {
        Square sq = Square::at(i);
        if (sq.file > 4 && t.full[k][i] >= 0) t.folded[k][i] = t.folded[k][sq.mirrored().index()];
      }
      t.loc_base[k] = base;
      base += t.folded_count[k];
    }
    return t;
  }();
  return t;
}

// COP slots over ordered (attacker, victim) non-king kinds, skipping the four
// pairs that can never meet: guards and ministers never leave their own half.
const std::array<std::array<int, 6>, 6>& cop_slots() {
  static const auto slots = [] {
    std::array<std::array<int, 6>, 6> s{};
    int n = 0;
    for (int a = 0; a < 6; ++a)
      for (int v = 0; v < 6; ++v) s[a][v] = (a < 2 && v < 2) ? -1 : n++;
    return s;
  }();
  return slots;
}

// MATL2 tuple offsets for ordered pairs (own kind a, opponent kind b).
const std::array<int, 37>& matl2_offsets() {
  static const auto offs = [] {
    std::array<int, 37> o{};
    int n = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        o[a * 6 + b] = n;
        n += (kMaxCount[kind_index(kMaterialKinds[a])] + 1) * (kMaxCount[kind_index(kMaterialKinds[b])] + 1);
      }
    o[36] = n;
    return o;
  }();
  return offs;
}

int set_size(FeatureSet s, const std::vector<KindPair>& loc2_pairs) {
  switch (s) {
    case FeatureSet::Matl: return kMatlSize;
    case FeatureSet::Loc: return kLocSize;
    case FeatureSet::Mob: return kMobSize;
    case FeatureSet::Aka: return kAkaSize;
    case FeatureSet::Spc: return kSpcSize;
    case FeatureSet::Cop: return kCopSize;
    case FeatureSet::Matl2: return kMatl2Size;
    case FeatureSet::Loc2: {
      int n = 0;
      for (auto [a, b] : loc2_pairs) n += folded_location_count(a) * full_location_count(b);
      return n;
    }
  }
  return 0;
}

char kind_letter(PieceKind k) { return kKindLetter[kind_index(k)]; }

std::optional<PieceKind> kind_from_letter(char c) {
  for (int k = 0; k < kNumKinds; ++k)
    if (kKindLetter[k] == c) return static_cast<PieceKind>(k);
  return std::nullopt;
}

std::string loc2_scheme(const std::vector<KindPair>& pairs) {
  std::string s = std::string(kSchemes[7]) + ":";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) s += ',';
    s += kind_letter(pairs[i].first);
    s += kind_letter(pairs[i].second);
  }
  return s;
}

// Collects (index, value) contributions and compacts them at the end.
class Accumulator {
 public:
  void add(int index, int value) { raw_.push_back({index, value}); }
  FeatureVector finish() {
    std::sort(raw_.begin(), raw_.end(), [](auto& a, auto& b) { return a.index < b.index; });
    FeatureVector v;
    for (const auto& e : raw_) {
      if (!v.entries.empty() && v.entries.back().index == e.index) {
        v.entries.back().value += e.value;
      } else {
        v.entries.push_back(e);
      }
      if (v.entries.back().value == 0) v.entries.pop_back();
    }
    return v;
  }

 private:
  std::vector<FeatureEntry> raw_;
};

// A destination is safe when nothing attacks it, or when it is defended and
// every attacker is worth at least as much as the piece standing there.
bool safe_landing(const Position& after, int dest, Color owner, PieceKind moved) {
  AttackList enemies = attackers(after, dest, opposite(owner));
  if (enemies.count == 0) return true;
  if (!attacked(after, dest, owner)) return false;
  int cheapest = piece_value(PieceKind::King);
  for (int i = 0; i < enemies.count; ++i) {
    auto p = after.at(Square::at(enemies.squares[i]));
    cheapest = std::min(cheapest, piece_value(p->kind));
  }
  return cheapest >= piece_value(moved);
}

}  // namespace

std::string_view set_name(FeatureSet s) { return kSetNames[static_cast<int>(s)]; }

int material_slot(PieceKind k) { return k == PieceKind::King ? -1 : kind_index(k) - 1; }

int piece_value(PieceKind k) {
  static constexpr std::array<int, kNumKinds> kValues = {100000, 350, 350, 2000, 950, 950, 300};
  return kValues[kind_index(k)];
}

std::vector<KindPair> default_loc2_pairs() {
  return {{PieceKind::Knight, PieceKind::Knight},
          {PieceKind::Knight, PieceKind::Pawn},
          {PieceKind::Cannon, PieceKind::Pawn},
          {PieceKind::Rook, PieceKind::Knight}};
}

int loc_index(PieceKind kind, Square sq) {
  const auto& t = tables();
  if (!sq.valid() || t.folded[kind_index(kind)][sq.index()] < 0)
    throw FeatureError("loc_index: " + square_name(sq) + " is not a legal square for " +
                       std::string(1, kind_letter(kind)));
  return t.loc_base[kind_index(kind)] + t.folded[kind_index(kind)][sq.index()];
}

int full_location_count(PieceKind kind) { return tables().full_count[kind_index(kind)]; }
int folded_location_count(PieceKind kind) { return tables().folded_count[kind_index(kind)]; }

int full_location_index(PieceKind kind, Square sq) {
  int v = sq.valid() ? tables().full[kind_index(kind)][sq.index()] : -1;
  if (v < 0) throw FeatureError("full_location_index: illegal square " + square_name(sq));
  return v;
}

int threat_bucket(int value) { return value <= 0 ? -1 : std::min(value, 5) - 1; }

int mobility_slot(PieceKind kind, int count) {
  if (kind == PieceKind::Knight) return std::min(count, 8);
  return 9 + std::min(count, 16);
}

int mobility(const Position& pos, Square sq) {
  auto p = pos.at(sq);
  if (!p || (p->kind != PieceKind::Rook && p->kind != PieceKind::Knight))
    throw FeatureError("mobility: " + square_name(sq) + " holds no rook or knight");
  std::vector<int> dests;
  pseudo_destinations(pos, sq.index(), dests);
  Position work = pos;
  int n = 0;
  for (int d : dests) {
    Move m{sq, Square::at(d), pos.at(Square::at(d))};
    work.make(m);
    if (!king_exposed(work, p->color) && safe_landing(work, d, p->color, p->kind)) ++n;
    work.unmake(m);
  }
  return n;
}

int aka_value(const Position& pos, Color defender) {
  int k = pos.king_index(defender);
  if (k < 0) return 0;
  Square ks = Square::at(k);
  int total = 0;
  constexpr int kSteps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (auto& d : kSteps) {
    Square nb{ks.file + d[0], ks.rank + d[1]};
    if (!legal_square(Piece{defender, PieceKind::King}, nb)) continue;
    total += attackers(pos, nb.index(), opposite(defender)).count;
  }
  return total;
}

int spc_value(const Position& pos, Color defender) {
  int k = pos.king_index(defender);
  if (k < 0) return 0;
  Color attacker = opposite(defender);
  Position work = pos;
  std::vector<int> dests;
  int n = 0;
  for (int from = 0; from < kSquares; ++from) {
    auto p = pos.at(Square::at(from));
    if (!p || p->color != attacker) continue;
    dests.clear();
    pseudo_destinations(pos, from, dests);
    for (int d : dests) {
      Move m{Square::at(from), Square::at(d), pos.at(Square::at(d))};
      if (m.captured && m.captured->kind == PieceKind::King) continue;
      work.make(m);
      if (!king_exposed(work, attacker) && attacked(work, k, attacker) &&
          safe_landing(work, d, attacker, p->kind))
        ++n;
      work.unmake(m);
    }
  }
  return n;
}

FeatureLayout FeatureLayout::build(std::span<const FeatureSet> enabled, std::vector<KindPair> loc2_pairs) {
  FeatureLayout layout;
  layout.loc2_pairs_ = std::move(loc2_pairs);
  int offset = 0;
  for (FeatureSet s : kAllFeatureSets) {
    if (std::find(enabled.begin(), enabled.end(), s) == enabled.end()) continue;
    SetBlock b{s, offset, set_size(s, layout.loc2_pairs_), std::string(kSchemes[static_cast<int>(s)])};
    if (s == FeatureSet::Loc2) b.scheme = loc2_scheme(layout.loc2_pairs_);
    offset += b.size;
    layout.blocks_.push_back(std::move(b));
  }
  int rel = 0;
  for (auto [a, b] : layout.loc2_pairs_) {
    layout.loc2_offsets_.push_back(rel);
    rel += folded_location_count(a) * full_location_count(b);
  }
  layout.total_ = offset;
  return layout;
}

const SetBlock* FeatureLayout::find(FeatureSet s) const {
  for (const auto& b : blocks_)
    if (b.set == s) return &b;
  return nullptr;
}

std::string FeatureLayout::manifest() const {
  std::ostringstream out;
  for (const auto& b : blocks_) out << set_name(b.set) << ' ' << b.offset << ' ' << b.size << ' ' << b.scheme << '\n';
  return out.str();
}

FeatureLayout FeatureLayout::from_manifest(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<FeatureSet> sets;
  std::vector<KindPair> pairs = default_loc2_pairs();
  std::string name, scheme;
  int offset = 0, size = 0;
  while (in >> name >> offset >> size >> scheme) {
    auto it = std::find(kSetNames.begin(), kSetNames.end(), name);
    if (it == kSetNames.end()) throw FeatureError("layout manifest: unknown feature set " + name);
    auto s = static_cast<FeatureSet>(it - kSetNames.begin());
    sets.push_back(s);
    if (s == FeatureSet::Loc2) {
      auto colon = scheme.find(':');
      if (colon == std::string::npos) throw FeatureError("layout manifest: bad LOC2 scheme " + scheme);
      pairs.clear();
      std::istringstream list(scheme.substr(colon + 1));
      std::string item;
      while (std::getline(list, item, ',')) {
        auto a = item.size() == 2 ? kind_from_letter(item[0]) : std::nullopt;
        auto b = item.size() == 2 ? kind_from_letter(item[1]) : std::nullopt;
        if (!a || !b) throw FeatureError("layout manifest: bad LOC2 pair " + item);
        pairs.emplace_back(*a, *b);
      }
    }
  }
  FeatureLayout layout = build(sets, pairs);
  if (layout.manifest() != text) throw FeatureError("layout manifest does not match this build's schemes");
  return layout;
}

std::string FeatureLayout::describe(int index) const {
  const SetBlock* block = nullptr;
  for (const auto& b : blocks_)
    if (index >= b.offset && index < b.offset + b.size) block = &b;
  if (!block) return "unknown#" + std::to_string(index);
  int rel = index - block->offset;
  std::string name(set_name(block->set));
  auto letter = [](PieceKind k) { return std::string(1, kind_letter(k)); };
  switch (block->set) {
    case FeatureSet::Matl:
      return name + " " + letter(kMaterialKinds[rel]);
    case FeatureSet::Loc: {
      const auto& t = tables();
      for (int k = kNumKinds - 1; k >= 0; --k)
        if (rel >= t.loc_base[k])
          return name + " " + std::string(1, kKindLetter[k]) + "@" +
                 square_name(t.folded_square[k][rel - t.loc_base[k]]);
      break;
    }
    case FeatureSet::Mob:
      if (rel < 9) return name + " N=" + std::to_string(rel);
      return name + (rel == 25 ? " R>=16" : " R=" + std::to_string(rel - 9));
    case FeatureSet::Aka:
    case FeatureSet::Spc:
      return name + (rel == 4 ? " >=5" : " " + std::to_string(rel + 1));
    case FeatureSet::Cop: {
      const auto& slots = cop_slots();
      for (int a = 0; a < 6; ++a)
        for (int v = 0; v < 6; ++v)
          if (slots[a][v] == rel) return name + " " + letter(kMaterialKinds[a]) + ">" + letter(kMaterialKinds[v]);
      break;
    }
    case FeatureSet::Matl2: {
      const auto& offs = matl2_offsets();
      int t = static_cast<int>(std::upper_bound(offs.begin(), offs.end() - 1, rel) - offs.begin()) - 1;
      int a = t / 6, b = t % 6;
      int width = kMaxCount[kind_index(kMaterialKinds[b])] + 1;
      int local = rel - offs[t];
      return name + " own " + letter(kMaterialKinds[a]) + "=" + std::to_string(local / width) + " opp " +
             letter(kMaterialKinds[b]) + "=" + std::to_string(local % width);
    }
    case FeatureSet::Loc2: {
      int t = static_cast<int>(loc2_offsets_.size()) - 1;
      while (t > 0 && loc2_offsets_[t] > rel) --t;
      auto [a, b] = loc2_pairs_[t];
      int local = rel - loc2_offsets_[t];
      int width = full_location_count(b);
      const auto& tb = tables();
      return name + " " + letter(a) + "@" + square_name(tb.folded_square[kind_index(a)][local / width]) + " " +
             letter(b) + "@" + square_name(tb.full_square[kind_index(b)][local % width]);
    }
  }
  return name + "#" + std::to_string(rel);
}

std::vector<FeatureSet> parse_feature_sets(std::string_view text) {
  using F = FeatureSet;
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s.rfind("eval", 0) == 0 && s.size() > 4 && std::isdigit(static_cast<unsigned char>(s[4]))) {
    int v = std::stoi(s.substr(4));
    std::vector<F> base = {F::Matl, F::Loc, F::Mob};
    std::vector<F> eval7 = {F::Matl, F::Loc, F::Mob, F::Aka, F::Spc, F::Cop};
    auto plus = [](std::vector<F> a, std::initializer_list<F> extra) {
      a.insert(a.end(), extra);
      return a;
    };
    switch (v) {
      case 0: return base;
      case 1: return plus(base, {F::Aka});
      case 2: return plus(base, {F::Spc});
      case 3: return plus(base, {F::Cop});
      case 4: return plus(base, {F::Aka, F::Spc});
      case 5: return plus(base, {F::Aka, F::Cop});
      case 6: return plus(base, {F::Spc, F::Cop});
      case 7: return eval7;
      case 8: return plus(base, {F::Matl2});
      case 9: return plus(eval7, {F::Matl2});
      case 10: return plus(base, {F::Loc2});
      case 11: return plus(eval7, {F::Loc2});
      case 12: return plus(base, {F::Matl2, F::Loc2});
      case 13: return plus(eval7, {F::Matl2, F::Loc2});
      default: throw FeatureError("unknown evaluation version " + s);
    }
  }
  std::vector<F> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::string upper = item;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    auto it = std::find(kSetNames.begin(), kSetNames.end(), upper);
    if (it == kSetNames.end()) throw FeatureError("unknown feature set '" + item + "'");
    out.push_back(static_cast<F>(it - kSetNames.begin()));
  }
  if (out.empty()) throw FeatureError("no feature sets given");
  return out;
}

FeatureVector negated(FeatureVector v) {
  for (auto& e : v.entries) e.value = -e.value;
  return v;
}

FeatureVector difference(const FeatureVector& a, const FeatureVector& b) {
  FeatureVector out;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].index < b.entries[j].index)) {
      out.entries.push_back(a.entries[i++]);
    } else if (i == a.entries.size() || b.entries[j].index < a.entries[i].index) {
      out.entries.push_back({b.entries[j].index, -b.entries[j].value});
      ++j;
    } else {
      int v = a.entries[i].value - b.entries[j].value;
      if (v != 0) out.entries.push_back({a.entries[i].index, v});
      ++i;
      ++j;
    }
  }
  return out;
}

std::pair<int, int> tuple_block(const FeatureLayout& layout, FeatureSet set, int tuple) {
  const SetBlock* b = layout.find(set);
  if (!b) throw FeatureError("tuple_block: set not enabled");
  if (set == FeatureSet::Matl2) {
    const auto& offs = matl2_offsets();
    return {b->offset + offs[tuple], offs[tuple + 1] - offs[tuple]};
  }
  auto [k1, k2] = layout.loc2_pairs()[tuple];
  return {b->offset + layout.loc2_offsets()[tuple], folded_location_count(k1) * full_location_count(k2)};
}

namespace {

struct PieceLists {
  // Own-frame squares per color and kind.
  std::array<std::array<std::vector<Square>, kNumKinds>, 2> squares;
};

PieceLists collect(const Position& pos) {
  PieceLists lists;
  for (int i = 0; i < kSquares; ++i) {
    auto p = pos.at(Square::at(i));
    if (!p) continue;
    lists.squares[static_cast<int>(p->color)][kind_index(p->kind)].push_back(own_frame(p->color, Square::at(i)));
  }
  return lists;
}

int loc2_index(PieceKind a, Square sa, PieceKind b, Square sb) {
  const auto& t = tables();
  int width = t.full_count[kind_index(b)];
  int best = -1;
  auto consider = [&](PieceKind ka, Square qa, PieceKind kb, Square qb) {
    for (bool mirror : {false, true}) {
      Square x = mirror ? qa.mirrored() : qa;
      Square y = mirror ? qb.mirrored() : qb;
      if (x.file > 4) continue;
      int idx = t.folded[kind_index(ka)][x.index()] * width + t.full[kind_index(kb)][y.index()];
      if (best < 0 || idx < best) best = idx;
    }
  };
  consider(a, sa, b, sb);
  if (a == b) consider(b, sb, a, sa);
  return best;
}

void add_tuple_activations(const Position& pos, const FeatureLayout& layout, const PieceLists& lists,
                           std::vector<TupleActivation>& out) {
  Color mover = pos.side_to_move();
  if (const SetBlock* b = layout.find(FeatureSet::Matl2)) {
    const auto& offs = matl2_offsets();
    std::array<std::array<int, 6>, 2> counts{};
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 6; ++i) {
        int k = kind_index(kMaterialKinds[i]);
        counts[c][i] = std::min<int>(static_cast<int>(lists.squares[c][k].size()), kMaxCount[k]);
      }
    for (int sign : {1, -1}) {
      int own = static_cast<int>(sign > 0 ? mover : opposite(mover));
      int opp = 1 - own;
      for (int a = 0; a < 6; ++a)
        for (int bk = 0; bk < 6; ++bk) {
          int width = kMaxCount[kind_index(kMaterialKinds[bk])] + 1;
          int idx = b->offset + offs[a * 6 + bk] + counts[own][a] * width + counts[opp][bk];
          out.push_back({FeatureSet::Matl2, a * 6 + bk, sign, idx});
        }
    }
  }
  if (const SetBlock* b = layout.find(FeatureSet::Loc2)) {
    for (int sign : {1, -1}) {
      int own = static_cast<int>(sign > 0 ? mover : opposite(mover));
      for (std::size_t t = 0; t < layout.loc2_pairs().size(); ++t) {
        auto [ka, kb] = layout.loc2_pairs()[t];
        const auto& as = lists.squares[own][kind_index(ka)];
        const auto& bs = lists.squares[own][kind_index(kb)];
        int base = b->offset + layout.loc2_offsets()[t];
        for (std::size_t i = 0; i < as.size(); ++i)
          for (std::size_t j = (ka == kb ? i + 1 : 0); j < bs.size(); ++j)
            out.push_back({FeatureSet::Loc2, static_cast<int>(t), sign, base + loc2_index(ka, as[i], kb, bs[j])});
      }
    }
  }
}

}  // namespace

std::vector<TupleActivation> tuple_activations(const Position& pos, const FeatureLayout& layout) {
  std::vector<TupleActivation> out;
  add_tuple_activations(pos, layout, collect(pos), out);
  return out;
}

FeatureVector extract(const Position& pos, const FeatureLayout& layout) {
  Accumulator acc;
  Color mover = pos.side_to_move();
  auto sign_of = [&](Color c) { return c == mover ? 1 : -1; };
  PieceLists lists = collect(pos);

  if (const SetBlock* b = layout.find(FeatureSet::Matl)) {
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 6; ++i) {
        int n = static_cast<int>(lists.squares[c][kind_index(kMaterialKinds[i])].size());
        if (n) acc.add(b->offset + i, sign_of(static_cast<Color>(c)) * n);
      }
  }
  if (const SetBlock* b = layout.find(FeatureSet::Loc)) {
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < kNumKinds; ++k)
        for (Square sq : lists.squares[c][k])
          acc.add(b->offset + loc_index(static_cast<PieceKind>(k), sq), sign_of(static_cast<Color>(c)));
  }
  if (const SetBlock* b = layout.find(FeatureSet::Mob)) {
    for (int i = 0; i < kSquares; ++i) {
      auto p = pos.at(Square::at(i));
      if (!p || (p->kind != PieceKind::Rook && p->kind != PieceKind::Knight)) continue;
      acc.add(b->offset + mobility_slot(p->kind, mobility(pos, Square::at(i))), sign_of(p->color));
    }
  }
  auto add_threat = [&](FeatureSet set, auto value_fn) {
    const SetBlock* b = layout.find(set);
    if (!b) return;
    for (Color defender : {Color::Red, Color::Black}) {
      int bucket = threat_bucket(value_fn(pos, defender));
      // A threat against the opponent's king counts for the mover.
      if (bucket >= 0) acc.add(b->offset + bucket, -sign_of(defender));
    }
  };
  add_threat(FeatureSet::Aka, aka_value);
  add_threat(FeatureSet::Spc, spc_value);
  if (const SetBlock* b = layout.find(FeatureSet::Cop)) {
    const auto& slots = cop_slots();
    for (int i = 0; i < kSquares; ++i) {
      auto victim = pos.at(Square::at(i));
      if (!victim || victim->kind == PieceKind::King) continue;
      Color chaser = opposite(victim->color);
      AttackList list = attackers(pos, i, chaser);
      for (int j = 0; j < list.count; ++j) {
        auto a = pos.at(Square::at(list.squares[j]));
        if (a->kind == PieceKind::King) continue;
        int slot = slots[material_slot(a->kind)][material_slot(victim->kind)];
        if (slot >= 0) acc.add(b->offset + slot, sign_of(chaser));
      }
    }
  }
  if (layout.find(FeatureSet::Matl2) || layout.find(FeatureSet::Loc2)) {
    std::vector<TupleActivation> acts;
    add_tuple_activations(pos, layout, lists, acts);
    for (const auto& a : acts) acc.add(a.index, a.sign);
  }
  return acc.finish();
}

}  // namespace xqct
