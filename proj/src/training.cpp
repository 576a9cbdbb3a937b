#include "xqct/training.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "xqct/parallel.hpp"
#include "xqct/search.hpp"

namespace xqct {

double UpdateDelta::l1() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::abs(e.value);
  return s;
}

void TrainerConfig::validate() const {
  if (depth < 1) throw TrainingError("depth must be >= 1");
  if (batch_size < 1) throw TrainingError("batch size must be >= 1");
  if (workers < 1) throw TrainingError("worker count must be >= 1");
  if (max_iterations < 1) throw TrainingError("max iterations must be >= 1");
}

TrainerState::TrainerState(WeightStore initial)
    : ws(std::move(initial)), sum_opening(ws.opening.size(), 0.0), sum_endgame(ws.endgame.size(), 0.0) {}

void TrainerState::begin_epoch() {
  std::fill(sum_opening.begin(), sum_opening.end(), 0.0);
  std::fill(sum_endgame.begin(), sum_endgame.end(), 0.0);
  snapshots = 0;
  nonzero_updates = 0;
  abs_delta_sum = 0.0;
  add_snapshot();
}

void TrainerState::add_snapshot() {
  for (std::size_t i = 0; i < sum_opening.size(); ++i) {
    sum_opening[i] += ws.opening[i];
    sum_endgame[i] += ws.endgame[i];
  }
  ++snapshots;
}

WeightStore TrainerState::averaged() const {
  WeightStore out = ws;
  if (snapshots == 0) return out;
  auto n = static_cast<double>(snapshots);
  for (std::size_t i = 0; i < sum_opening.size(); ++i) {
    out.opening[i] = sum_opening[i] / n;
    out.endgame[i] = sum_endgame[i] / n;
  }
  return out;
}

double initial_material_weight(PieceKind k) {
  switch (k) {
    case PieceKind::Guard: return 350;
    case PieceKind::Minister: return 350;
    case PieceKind::Rook: return 2000;
    case PieceKind::Knight: return 950;
    case PieceKind::Cannon: return 950;
    case PieceKind::Pawn: return 300;
    default: return 0;
  }
}

WeightStore init_weights(const FeatureLayout& layout) {
  WeightStore ws(layout);
  if (const SetBlock* b = layout.find(FeatureSet::Matl)) {
    for (PieceKind k : kMaterialKinds) {
      ws.opening[b->offset + material_slot(k)] = initial_material_weight(k);
      ws.endgame[b->offset + material_slot(k)] = initial_material_weight(k);
    }
  }
  return ws;
}

MoveLeaves evaluate_moves(const Position& pos, const WeightStore& ws, int depth) {
  MoveLeaves out;
  out.moves = legal_moves(pos);
  out.values.reserve(out.moves.size());
  out.leaves.reserve(out.moves.size());
  for (const Move& m : out.moves) {
    PrincipalLeaf pl = principal_leaf(pos, m, depth, ws);
    out.values.push_back(pl.value);
    out.leaves.push_back(std::move(pl.leaf));
  }
  return out;
}

FeatureVector root_features(const Position& leaf, Color root_mover, const FeatureLayout& layout) {
  FeatureVector phi = extract(leaf, layout);
  return leaf.side_to_move() == root_mover ? phi : negated(std::move(phi));
}

UpdateDelta compare_position(const TrainingSample& sample, const WeightStore& ws, int depth) {
  if (depth < 1) throw TrainingError("compare_position: depth must be >= 1");
  const Position& pos = sample.position;
  MoveLeaves ml = evaluate_moves(pos, ws, depth);
  if (ml.moves.empty()) throw TrainingError("compare_position: position has no legal moves");
  auto it = std::find(ml.moves.begin(), ml.moves.end(), sample.expert_move);
  if (it == ml.moves.end()) throw TrainingError("compare_position: expert move " + to_iccs(sample.expert_move) + " is not legal");
  auto expert = static_cast<std::size_t>(it - ml.moves.begin());

  UpdateDelta delta;
  delta.alpha = phase_alpha(pos);
  std::vector<std::size_t> violators;
  for (std::size_t i = 0; i < ml.moves.size(); ++i)
    if (i != expert && ml.values[i] > ml.values[expert]) violators.push_back(i);
  if (violators.empty()) return delta;

  Color mover = pos.side_to_move();
  std::map<int, double> acc;
  for (const auto& e : root_features(ml.leaves[expert], mover, ws.layout).entries) acc[e.index] += e.value;
  const double share = 1.0 / static_cast<double>(violators.size());
  if (violators.size() == 1) {
    for (const auto& e : root_features(ml.leaves[violators[0]], mover, ws.layout).entries) acc[e.index] -= e.value;
  } else {
    std::map<int, double> others;
    for (std::size_t i : violators)
      for (const auto& e : root_features(ml.leaves[i], mover, ws.layout).entries) others[e.index] += e.value;
    for (auto [idx, v] : others) acc[idx] -= v * share;
  }
  for (auto [idx, v] : acc)
    if (v != 0.0) delta.entries.push_back({idx, v});
  return delta;
}

void apply_balanced_tapered_inplace(WeightStore& ws, const UpdateDelta& delta) {
  double a = delta.alpha;
  if (!(a >= 0.0 && a <= 1.0)) throw TrainingError("apply_balanced_tapered: stage index outside [0, 1]");
  for (const auto& e : delta.entries) {
    if (!std::isfinite(e.value)) throw TrainingError("apply_balanced_tapered: non-finite update");
    if (e.index < 0 || e.index >= ws.size()) throw TrainingError("apply_balanced_tapered: index outside layout");
  }
  const double norm = a * a + (1.0 - a) * (1.0 - a);
  const double to_opening = a / norm;
  const double to_endgame = (1.0 - a) / norm;
  for (const auto& e : delta.entries) {
    ws.opening[e.index] += to_opening * e.value;
    ws.endgame[e.index] += to_endgame * e.value;
  }
}

WeightStore apply_balanced_tapered(WeightStore ws, const UpdateDelta& delta) {
  apply_balanced_tapered_inplace(ws, delta);
  return ws;
}

namespace {

void record(TrainerState& state, const UpdateDelta& d) {
  ++state.t;
  if (!d.empty()) {
    ++state.nonzero_updates;
    state.abs_delta_sum += d.l1();
  }
}

}  // namespace

void train_online(const TrainingSample& sample, TrainerState& state, int depth) {
  UpdateDelta d = compare_position(sample, state.ws, depth);
  apply_balanced_tapered_inplace(state.ws, d);
  record(state, d);
  state.add_snapshot();
}

void train_batch(std::span<const TrainingSample> samples, TrainerState& state, const TrainerConfig& cfg) {
  if (static_cast<int>(samples.size()) > cfg.batch_size) throw TrainingError("train_batch: more samples than the batch size");
  std::vector<UpdateDelta> deltas(samples.size());
  const WeightStore& frozen = state.ws;
  parallel_for(samples.size(), cfg.workers,
               [&](std::size_t i) { deltas[i] = compare_position(samples[i], frozen, cfg.depth); });
  for (const auto& d : deltas) {
    apply_balanced_tapered_inplace(state.ws, d);
    record(state, d);
  }
  state.add_snapshot();
}

double test_accuracy(const WeightStore& ws, std::span<const TrainingSample> test, int depth, int workers) {
  if (test.empty()) throw TrainingError("test_accuracy: empty test set");
  std::vector<char> correct(test.size(), 0);
  parallel_for(test.size(), workers, [&](std::size_t i) {
    MoveLeaves ml = evaluate_moves(test[i].position, ws, depth);
    auto it = std::find(ml.moves.begin(), ml.moves.end(), test[i].expert_move);
    if (it == ml.moves.end()) return;
    auto e = static_cast<std::size_t>(it - ml.moves.begin());
    bool best = true;
    for (std::size_t j = 0; j < ml.moves.size() && best; ++j)
      if (j != e && ml.values[j] >= ml.values[e]) best = false;
    correct[i] = best;
  });
  return static_cast<double>(std::count(correct.begin(), correct.end(), 1)) / static_cast<double>(test.size());
}

TrainResult train(std::span<const TrainingSample> dataset, std::span<const TrainingSample> test,
                  const TrainerConfig& cfg, WeightStore initial, const EpochCallback& on_epoch) {
  cfg.validate();
  if (dataset.empty() || test.empty()) throw TrainingError("train: training and test sets must be non-empty");
  initial.validate();

  TrainerState state(std::move(initial));
  TrainResult result;
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(cfg.seed);
  std::vector<TrainingSample> batch;
  double previous = -1.0;
  double best = -1.0;

  for (int epoch = 1; epoch <= cfg.max_iterations; ++epoch) {
    if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);
    state.begin_epoch();
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(dataset[order[i]]);
      train_batch(batch, state, cfg);
    }
    WeightStore avg = state.averaged();
    EpochStats stats;
    stats.epoch = epoch;
    stats.updates = state.nonzero_updates;
    stats.mean_abs_delta = state.abs_delta_sum / static_cast<double>(dataset.size());
    stats.test_accuracy = test_accuracy(avg, test, cfg.depth, cfg.workers);
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);

    if (stats.test_accuracy > best) {
      best = stats.test_accuracy;
      result.best = avg;
      result.best_epoch = epoch;
    }
    result.last_raw = state.ws;
    if (stats.test_accuracy < previous || stats.updates == 0) break;
    previous = stats.test_accuracy;
    state.ws = std::move(avg);
  }
  state.history = result.history;
  return result;
}

}  // namespace xqct
