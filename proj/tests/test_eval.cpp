#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "xqct/eval.hpp"
#include "xqct/training.hpp"

using namespace xqct;
namespace fs = std::filesystem;

namespace {

FeatureLayout full_layout() { return FeatureLayout::build(kAllFeatureSets); }

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("xqct_eval_" + name); }

}  // namespace

TEST_CASE("stage index from remaining pieces") {
  CHECK(phase_alpha(Position::start()) == 1.0);
  CHECK(phase_alpha(parse_fen("3k5/9/9/9/9/9/9/9/9/4K4 w")) == 0.0);
  Position no_rook = parse_fen("rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/1NBAKABNR w");
  CHECK(phase_alpha(no_rook) == doctest::Approx(60.0 / 66.0).epsilon(1e-15));
  int per_side = 2 * phase_points(PieceKind::Rook) + 2 * phase_points(PieceKind::Knight) +
                 2 * phase_points(PieceKind::Cannon) + 2 * phase_points(PieceKind::Guard) +
                 2 * phase_points(PieceKind::Minister) + 5 * phase_points(PieceKind::Pawn);
  CHECK(2 * per_side == kPhaseTotal);
}

TEST_CASE("stage index never increases during a game") {
  std::mt19937_64 rng(8);
  for (int game = 0; game < 30; ++game) {
    Position p = Position::start();
    double prev = phase_alpha(p);
    for (int ply = 0; ply < 200; ++ply) {
      auto moves = legal_moves(p);
      if (moves.empty()) break;
      p.make(moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
      double a = phase_alpha(p);
      CHECK(a <= prev);
      CHECK(a >= 0.0);
      prev = a;
    }
  }
}

TEST_CASE("start position evaluates to zero") {
  FeatureLayout all = full_layout();
  for (std::uint64_t seed : {1, 2, 3}) CHECK(evaluate(Position::start(), testutil::random_weights(all, seed)) == 0.0);
  CHECK(evaluate(Position::start(), init_weights(all)) == 0.0);
}

TEST_CASE("material weights score a knight up") {
  std::vector<FeatureSet> sets{FeatureSet::Matl};
  WeightStore ws = init_weights(FeatureLayout::build(sets));
  Position p = parse_fen("rnbakab1r/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR w");
  CHECK(evaluate(p, ws) == 950.0);
  p.set_side_to_move(Color::Black);
  CHECK(evaluate(p, ws) == -950.0);
}

TEST_CASE("interpolation arithmetic") {
  std::vector<FeatureSet> sets{FeatureSet::Matl};
  WeightStore ws(FeatureLayout::build(sets));
  ws.opening[2] = 2.0;
  FeatureVector phi{{{2, 1}}};
  CHECK(evaluate(phi, 0.5, ws) == 1.0);
  CHECK(evaluate(phi, 1.0, ws) == 2.0);
  CHECK(evaluate(phi, 0.0, ws) == 0.0);
}

TEST_CASE("evaluation negates under the color-swap mirror") {
  FeatureLayout all = full_layout();
  WeightStore ws = testutil::random_weights(all, 77);
  for (const auto& p : testutil::random_positions(200, 13)) {
    CHECK(evaluate(mirror_color_swap(p), ws) == -evaluate(p, ws));
  }
}

TEST_CASE("evaluation is linear in the weights") {
  FeatureLayout all = full_layout();
  WeightStore u = testutil::random_weights(all, 1), v = testutil::random_weights(all, 2);
  WeightStore sum(all);
  for (int i = 0; i < sum.size(); ++i) {
    sum.opening[i] = u.opening[i] + v.opening[i];
    sum.endgame[i] = u.endgame[i] + v.endgame[i];
  }
  for (const auto& p : testutil::random_positions(50, 14)) {
    double expect = evaluate(p, u) + evaluate(p, v);
    CHECK(evaluate(p, sum) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("equal opening and endgame weights make the stage irrelevant") {
  FeatureLayout all = full_layout();
  WeightStore ws = testutil::random_weights(all, 5);
  ws.endgame = ws.opening;
  for (const auto& p : testutil::random_positions(30, 15)) {
    FeatureVector phi = extract(p, all);
    double a = evaluate(phi, 0.0, ws);
    for (double alpha : {0.25, 0.5, 1.0}) CHECK(evaluate(phi, alpha, ws) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("quantization rounds half away from zero") {
  CHECK(quantize(2.5) == 3);
  CHECK(quantize(-2.5) == -3);
  CHECK(quantize(2.49) == 2);
  CHECK(quantize(-0.4) == 0);
}

TEST_CASE("weight store validation") {
  std::vector<FeatureSet> sets{FeatureSet::Matl, FeatureSet::Loc};
  WeightStore ws(FeatureLayout::build(sets));
  CHECK_NOTHROW(ws.validate());
  ws.endgame[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ws.validate(), EvalError);
  ws.endgame.pop_back();
  CHECK_THROWS_AS(ws.validate(), EvalError);
  CHECK_THROWS_AS(evaluate(Position::start(), ws), EvalError);
}

TEST_CASE("weight files round-trip") {
  FeatureLayout all = full_layout();
  WeightStore w = testutil::random_weights(all, 9);
  WeightStore avg = testutil::random_weights(all, 10);
  fs::path path = temp_file("roundtrip.bin");
  save_weights(path, w, &avg);
  WeightFile back = load_weights(path);
  CHECK(back.weights == w);
  REQUIRE(back.averaged.has_value());
  CHECK(*back.averaged == avg);
  CHECK(&back.playing() == &*back.averaged);

  save_weights(path, w);
  WeightFile plain = load_weights(path);
  CHECK_FALSE(plain.averaged.has_value());
  CHECK(plain.playing() == w);
  fs::remove(path);
}

TEST_CASE("corrupt weight files are rejected") {
  std::vector<FeatureSet> sets{FeatureSet::Matl};
  fs::path path = temp_file("corrupt.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOTAWEIGHTFILE";
  }
  CHECK_THROWS_AS(load_weights(path), EvalError);
  save_weights(path, init_weights(FeatureLayout::build(sets)));
  auto size = fs::file_size(path);
  fs::resize_file(path, size - 5);
  CHECK_THROWS_AS(load_weights(path), EvalError);
  CHECK_THROWS_AS(load_weights(temp_file("missing.bin")), EvalError);
  fs::remove(path);
}
