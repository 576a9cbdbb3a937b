// Synthetic expert data: positions labeled by the 1-ply argmax of a known
// "teacher" weight vector, for checking that training recovers it.
#pragma once

#include <cstdint>
#include <vector>

#include "xqct/data.hpp"
#include "xqct/eval.hpp"
#include "xqct/training.hpp"

namespace xqct {

// Initial material plus a hand-written piece-square table on the LOC block. The
// layout must enable MATL and LOC; other slots stay zero.
WeightStore teacher_weights(const FeatureLayout& layout);

// Distinct positions reached by seeded playouts that mix the teacher's greedy
// move with random moves. Each is labeled with the teacher's strictly best
// move at `depth`; positions with a tie for best are dropped.
std::vector<TrainingSample> synthetic_samples(const WeightStore& teacher, std::size_t count, std::uint64_t seed,
                                              int depth = 1);

// One single-move record per sample, so synthetic data can go through files.
std::vector<GameRecord> samples_to_records(const std::vector<TrainingSample>& samples);

}  // namespace xqct
