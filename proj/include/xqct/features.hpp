// Sparse feature extraction for the linear n-tuple evaluation.
//
// Every value is side-to-move relative: mover's count minus opponent's count.
// Pieces are located in their own color's frame (black ranks flipped), and
// left-right mirror squares share one location slot.
#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xqct/board.hpp"

namespace xqct {

enum class FeatureSet : std::uint8_t { Matl, Loc, Mob, Aka, Spc, Cop, Matl2, Loc2 };

inline constexpr std::array<FeatureSet, 8> kAllFeatureSets = {
    FeatureSet::Matl, FeatureSet::Loc, FeatureSet::Mob,   FeatureSet::Aka,
    FeatureSet::Spc,  FeatureSet::Cop, FeatureSet::Matl2, FeatureSet::Loc2};

std::string_view set_name(FeatureSet s);

// Fixed block sizes.
inline constexpr int kMatlSize = 6;
inline constexpr int kLocSize = 194;
inline constexpr int kMobSize = 26;
inline constexpr int kAkaSize = 5;
inline constexpr int kSpcSize = 5;
inline constexpr int kCopSize = 32;
inline constexpr int kMatl2Size = 441;

// Non-king kinds in material-slot order: G, M, R, N, C, P.
inline constexpr std::array<PieceKind, 6> kMaterialKinds = {
    PieceKind::Guard, PieceKind::Minister, PieceKind::Rook,
    PieceKind::Knight, PieceKind::Cannon, PieceKind::Pawn};
int material_slot(PieceKind k);  // -1 for the king

// Static piece values used by the safe-destination test.
int piece_value(PieceKind k);

using KindPair = std::pair<PieceKind, PieceKind>;

// Default LOC2 piece-kind pairs: N-N, N-P, C-P, R-N.
std::vector<KindPair> default_loc2_pairs();

struct SetBlock {
  FeatureSet set;
  int offset = 0;
  int size = 0;
  std::string scheme;
};

class FeatureLayout {
 public:
  FeatureLayout() = default;
  static FeatureLayout build(std::span<const FeatureSet> enabled,
                             std::vector<KindPair> loc2_pairs = default_loc2_pairs());

  int total_features() const { return total_; }
  bool enabled(FeatureSet s) const { return find(s) != nullptr; }
  const SetBlock* find(FeatureSet s) const;
  const std::vector<SetBlock>& blocks() const { return blocks_; }
  const std::vector<KindPair>& loc2_pairs() const { return loc2_pairs_; }
  // Offsets of each LOC2 pair block relative to the LOC2 block.
  const std::vector<int>& loc2_offsets() const { return loc2_offsets_; }

  // Human-readable name of a global feature index, e.g. "LOC N@b2".
  std::string describe(int index) const;

  // One line per block: "<NAME> <offset> <size> <scheme>".
  std::string manifest() const;
  static FeatureLayout from_manifest(std::string_view text);

  friend bool operator==(const FeatureLayout& a, const FeatureLayout& b) {
    return a.manifest() == b.manifest();
  }

 private:
  std::vector<SetBlock> blocks_;
  std::vector<KindPair> loc2_pairs_;
  std::vector<int> loc2_offsets_;
  int total_ = 0;
};

// Parses "matl,loc,mob" or a version name "eval0".."eval13".
std::vector<FeatureSet> parse_feature_sets(std::string_view text);

struct FeatureEntry {
  int index;
  int value;
  friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

struct FeatureVector {
  std::vector<FeatureEntry> entries;  // strictly increasing index, no zeros
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

FeatureVector negated(FeatureVector v);
// a - b, dropping zero entries.
FeatureVector difference(const FeatureVector& a, const FeatureVector& b);

class FeatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Slot inside the LOC block; sq is in the piece's own color frame.
int loc_index(PieceKind kind, Square sq);
// Number of legal own-frame squares for the kind, and the unfolded slot.
int full_location_count(PieceKind kind);
int full_location_index(PieceKind kind, Square sq);
int folded_location_count(PieceKind kind);

// Safe destinations of the rook or knight on sq.
int mobility(const Position& pos, Square sq);
// Attacks by the other side on the in-palace squares orthogonally adjacent to
// defender's king.
int aka_value(const Position& pos, Color defender);
// Checking moves by the other side that land on a safe square.
int spc_value(const Position& pos, Color defender);

// Bucket of a threat value 1..4, >=5 into 0..4; -1 for zero.
int threat_bucket(int value);
// MOB slot for a mobility count: knights 0..8, rooks 9 + min(count, 16).
int mobility_slot(PieceKind kind, int count);

// Active feature of one 2-tuple for one perspective (+1 mover, -1 opponent).
struct TupleActivation {
  FeatureSet set;
  int tuple;  // tuple id inside its set
  int sign;
  int index;  // global feature index
};

// MATL2 and LOC2 activations in extraction order.
std::vector<TupleActivation> tuple_activations(const Position& pos, const FeatureLayout& layout);

// First global index and size of a tuple's block.
std::pair<int, int> tuple_block(const FeatureLayout& layout, FeatureSet set, int tuple);

FeatureVector extract(const Position& pos, const FeatureLayout& layout);

}  // namespace xqct
