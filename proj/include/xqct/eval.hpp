// Tapered linear evaluation: score = phi(s) . (alpha * w_o + (1 - alpha) * w_e).
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xqct/board.hpp"
#include "xqct/features.hpp"

namespace xqct {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WeightStore {
  FeatureLayout layout;
  std::vector<double> opening;
  std::vector<double> endgame;

  WeightStore() = default;
  explicit WeightStore(FeatureLayout l)
      : layout(std::move(l)), opening(layout.total_features(), 0.0), endgame(layout.total_features(), 0.0) {}

  int size() const { return static_cast<int>(opening.size()); }
  // Interpolated weight of one feature.
  double effective(int index, double alpha) const {
    return alpha * opening[index] + (1.0 - alpha) * endgame[index];
  }
  // Throws EvalError when the arrays disagree with the layout or hold
  // non-finite values.
  void validate() const;

  friend bool operator==(const WeightStore&, const WeightStore&) = default;
};

// Phase points per non-king piece: R 6, N 3, C 3, G 1, M 1, P 1.
int phase_points(PieceKind k);
inline constexpr int kPhaseTotal = 66;
inline constexpr const char* kPhaseScheme = "phase-v1 K0 G1 M1 R6 N3 C3 P1 /66";

// Game stage index in [0, 1]; 1 with all pieces on the board.
double phase_alpha(const Position& pos);

double evaluate(const FeatureVector& phi, double alpha, const WeightStore& ws);
double evaluate(const Position& pos, const WeightStore& ws);

// Round half away from zero.
long long quantize(double score);

struct WeightFile {
  WeightStore weights;
  std::optional<WeightStore> averaged;

  // The averaged vector when present.
  const WeightStore& playing() const { return averaged ? *averaged : weights; }
};

void save_weights(const std::filesystem::path& path, const WeightStore& weights,
                  const WeightStore* averaged = nullptr);
WeightFile load_weights(const std::filesystem::path& path);

}  // namespace xqct
