// Comparison training of tapered weights from expert moves.
//
// Each training position yields an update quantity: the mean difference
// between the expert leaf's features and the features of every sibling leaf
// that currently scores strictly higher. Updates are split between the
// opening and endgame vectors so the interpolated weight at the position's
// own stage moves by exactly the update quantity. Weights are averaged over
// all updates of an epoch, and that average seeds the next epoch.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "xqct/board.hpp"
#include "xqct/eval.hpp"
#include "xqct/features.hpp"

namespace xqct {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainingSample {
  Position position;
  Move expert_move;
};

struct SparseEntry {
  int index;
  double value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

struct UpdateDelta {
  std::vector<SparseEntry> entries;  // increasing index
  double alpha = 1.0;                // stage index of the training position
  bool empty() const { return entries.empty(); }
  double l1() const;
};

struct TrainerConfig {
  int depth = 1;
  int batch_size = 1;
  int workers = 1;
  int max_iterations = 20;
  std::uint64_t seed = 1;
  // Shuffle the training set at the start of every epoch.
  bool shuffle = true;

  void validate() const;
};

struct EpochStats {
  int epoch = 0;
  std::uint64_t updates = 0;  // samples with a non-zero delta
  double mean_abs_delta = 0.0;
  double test_accuracy = 0.0;
};

struct TrainerState {
  WeightStore ws;
  std::vector<double> sum_opening;
  std::vector<double> sum_endgame;
  std::uint64_t snapshots = 0;  // weight vectors summed into the average
  std::uint64_t t = 0;          // samples processed
  std::uint64_t nonzero_updates = 0;
  double abs_delta_sum = 0.0;
  std::vector<EpochStats> history;

  explicit TrainerState(WeightStore initial);
  // Clears the running average and adds the current weights as w(0).
  void begin_epoch();
  void add_snapshot();
  WeightStore averaged() const;
};

// Standard material weights on the MATL slots of both vectors, zero elsewhere.
WeightStore init_weights(const FeatureLayout& layout);
double initial_material_weight(PieceKind k);

// Per-move value and leaf for every legal move, in legal_moves order.
struct MoveLeaves {
  std::vector<Move> moves;
  std::vector<double> values;  // root mover's perspective
  std::vector<Position> leaves;
};
MoveLeaves evaluate_moves(const Position& pos, const WeightStore& ws, int depth);

// Features of a leaf, seen from the root mover.
FeatureVector root_features(const Position& leaf, Color root_mover, const FeatureLayout& layout);

UpdateDelta compare_position(const TrainingSample& sample, const WeightStore& ws, int depth);

// Balanced split: w_o += a/(a^2+(1-a)^2) d, w_e += (1-a)/(a^2+(1-a)^2) d.
void apply_balanced_tapered_inplace(WeightStore& ws, const UpdateDelta& delta);
WeightStore apply_balanced_tapered(WeightStore ws, const UpdateDelta& delta);

// One online step: compare, apply, snapshot.
void train_online(const TrainingSample& sample, TrainerState& state, int depth);

// All deltas are computed against the pre-batch weights, in parallel, then
// applied in sample order; one snapshot is added after the batch.
void train_batch(std::span<const TrainingSample> samples, TrainerState& state, const TrainerConfig& cfg);

// Fraction of samples whose expert move scores strictly above every sibling.
double test_accuracy(const WeightStore& ws, std::span<const TrainingSample> test, int depth, int workers = 1);

struct TrainResult {
  WeightStore best;           // averaged weights of the best epoch
  WeightStore last_raw;       // raw weights at the end of the last epoch
  std::vector<EpochStats> history;
  int best_epoch = 0;
};

using EpochCallback = std::function<void(const EpochStats&)>;

// Epoch loop: stops when test accuracy drops, when an epoch makes no update,
// or after max_iterations.
TrainResult train(std::span<const TrainingSample> dataset, std::span<const TrainingSample> test,
                  const TrainerConfig& cfg, WeightStore initial, const EpochCallback& on_epoch = {});

}  // namespace xqct
