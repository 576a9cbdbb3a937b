// xqct: perft, feature dumps, training, accuracy, matches and weight files.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "json.hpp"
#include "xqct/board.hpp"
#include "xqct/data.hpp"
#include "xqct/eval.hpp"
#include "xqct/features.hpp"
#include "xqct/harness.hpp"
#include "xqct/synthetic.hpp"
#include "xqct/training.hpp"

using namespace xqct;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::uint64_t seed = 1;
  int workers = 1;
};

FeatureLayout layout_from(const std::string& sets) {
  auto enabled = parse_feature_sets(sets);
  return FeatureLayout::build(enabled);
}

Position position_from(const std::string& fen) { return fen.empty() ? Position::start() : parse_fen(fen); }

std::vector<TrainingSample> load_samples(const std::string& path) {
  LoadResult lr = load_records(path);
  for (const auto& w : lr.warnings) std::cerr << "warning: " << w << '\n';
  return collect_samples(lr.records);
}

void write_meta(const fs::path& path, const TrainerConfig& cfg, const std::string& sets, const TrainResult& r,
                std::size_t n_train, std::size_t n_test) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "sets=" << sets << '\n'
      << "depth=" << cfg.depth << '\n'
      << "batch=" << cfg.batch_size << '\n'
      << "seed=" << cfg.seed << '\n'
      << "train_samples=" << n_train << '\n'
      << "test_samples=" << n_test << '\n'
      << "epochs=" << r.history.size() << '\n'
      << "best_epoch=" << r.best_epoch << '\n';
  out << "accuracy=";
  for (std::size_t i = 0; i < r.history.size(); ++i) out << (i ? "," : "") << r.history[i].test_accuracy;
  out << '\n';
}

int cmd_perft(const std::string& fen, int depth) {
  std::cout << perft(position_from(fen), depth) << '\n';
  return 0;
}

int cmd_features(const std::string& fen, const std::string& sets) {
  Position pos = position_from(fen);
  FeatureLayout layout = layout_from(sets);
  FeatureVector v = extract(pos, layout);
  std::cout << "features " << v.entries.size() << " of " << layout.total_features() << '\n';
  for (const auto& e : v.entries) std::cout << e.index << ' ' << layout.describe(e.index) << ' ' << e.value << '\n';
  return 0;
}

struct TrainArgs {
  std::string data, test, sets = "matl,loc", out = "weights.bin";
  int depth = 1, batch = 1, max_iterations = 20;
  double train_fraction = 0.8;
  std::size_t max_samples = 0;
  bool no_shuffle = false;
};

int cmd_train(const TrainArgs& a, const Common& c) {
  LoadResult lr = load_records(a.data);
  for (const auto& w : lr.warnings) std::cerr << "warning: " << w << '\n';
  SampleSplit split;
  if (a.test.empty()) {
    SampleOptions opts;
    opts.train_fraction = a.train_fraction;
    opts.seed = c.seed;
    opts.max_samples = a.max_samples;
    split = expand_samples(lr.records, opts);
  } else {
    split.train = collect_samples(lr.records);
    split.test = load_samples(a.test);
  }
  if (split.train.empty() || split.test.empty()) throw std::runtime_error("not enough samples to train and test");

  TrainerConfig cfg;
  cfg.depth = a.depth;
  cfg.batch_size = a.batch;
  cfg.workers = c.workers;
  cfg.max_iterations = a.max_iterations;
  cfg.seed = c.seed;
  cfg.shuffle = !a.no_shuffle;
  cfg.validate();

  fs::path out = a.out;
  std::ofstream log(fs::path(out).concat(".log"));
  auto on_epoch = [&](const EpochStats& s) {
    nlohmann::json rec = {{"epoch", s.epoch},
                          {"updates", s.updates},
                          {"mean_abs_delta", s.mean_abs_delta},
                          {"test_accuracy", s.test_accuracy}};
    log << rec.dump() << '\n';
    log.flush();
    std::cout << "epoch " << s.epoch << " updates=" << s.updates << " mean_abs_delta=" << s.mean_abs_delta
              << " accuracy=" << s.test_accuracy << '\n';
  };
  FeatureLayout layout = layout_from(a.sets);
  TrainResult r = train(split.train, split.test, cfg, init_weights(layout), on_epoch);
  save_weights(out, r.last_raw, &r.best);
  write_meta(fs::path(out).concat(".meta"), cfg, a.sets, r, split.train.size(), split.test.size());
  std::cout << "best_epoch=" << r.best_epoch << " accuracy=" << r.history[r.best_epoch - 1].test_accuracy
            << " saved " << out.string() << '\n';
  return 0;
}

int cmd_accuracy(const std::string& weights, const std::string& data, int depth, const Common& c) {
  WeightFile wf = load_weights(weights);
  auto samples = load_samples(data);
  if (samples.empty()) throw std::runtime_error("no samples in " + data);
  std::cout << std::fixed << std::setprecision(4) << test_accuracy(wf.playing(), samples, depth, c.workers) << '\n';
  return 0;
}

int cmd_match(const std::string& wa, const std::string& wb, const std::string& openings, std::uint64_t nodes,
              const Common& c) {
  WeightFile a = load_weights(wa);
  WeightFile b = load_weights(wb);
  auto book = load_openings(openings);
  if (book.empty()) throw std::runtime_error("opening list is empty");
  MatchResult m = run_match(a.playing(), b.playing(), book, nodes, c.workers);
  std::cout << format_report(m);
  return 0;
}

int cmd_weights_show(const std::string& path, int top) {
  WeightFile wf = load_weights(path);
  const WeightStore& ws = wf.playing();
  std::vector<int> order(static_cast<std::size_t>(ws.size()));
  std::iota(order.begin(), order.end(), 0);
  auto mag = [&](int i) { return std::max(std::abs(ws.opening[i]), std::abs(ws.endgame[i])); };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return mag(x) > mag(y); });
  std::cout << ws.layout.manifest();
  int shown = 0;
  for (int i : order) {
    if (shown >= top || mag(i) == 0.0) break;
    std::cout << ws.layout.describe(i) << " opening=" << ws.opening[i] << " endgame=" << ws.endgame[i] << '\n';
    ++shown;
  }
  return 0;
}

int cmd_weights_init(const std::string& sets, const std::string& out) {
  save_weights(out, init_weights(layout_from(sets)));
  std::cout << "saved " << out << '\n';
  return 0;
}

int cmd_synth(std::size_t count, const std::string& out, const std::string& teacher_out, const Common& c) {
  std::array<FeatureSet, 2> sets{FeatureSet::Matl, FeatureSet::Loc};
  WeightStore teacher = teacher_weights(FeatureLayout::build(sets));
  auto samples = synthetic_samples(teacher, count, c.seed);
  save_records(out, samples_to_records(samples));
  if (!teacher_out.empty()) save_weights(teacher_out, teacher);
  std::cout << "wrote " << samples.size() << " samples to " << out << '\n';
  return 0;
}

int cmd_book(int count, const std::string& out, const Common& c) {
  std::array<FeatureSet, 1> sets{FeatureSet::Matl};
  auto book = generate_openings(init_weights(FeatureLayout::build(sets)), count, c.seed);
  save_openings(out, book);
  std::cout << "wrote " << book.size() << " openings to " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Xiangqi evaluation training toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  Common common;
  app.add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--workers", common.workers, "Worker threads")
      ->envname("XQCT_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string fen, sets = "matl";
  int depth = 1;
  auto* perft_cmd = app.add_subcommand("perft", "Count leaf nodes of the legal move tree");
  perft_cmd->add_option("--fen", fen, "Position (default: start)");
  perft_cmd->add_option("--depth", depth, "Depth")->check(CLI::Range(0, 6))->capture_default_str();

  auto* features_cmd = app.add_subcommand("features", "Dump the sparse feature vector of a position");
  features_cmd->add_option("--fen", fen, "Position (default: start)");
  features_cmd->add_option("--sets", sets, "Feature sets, e.g. matl,loc,mob or eval7")->capture_default_str();

  TrainArgs ta;
  auto* train_cmd = app.add_subcommand("train", "Comparison training from a record file");
  train_cmd->add_option("--data", ta.data, "Record file")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--test", ta.test, "Separate test record file")->check(CLI::ExistingFile);
  train_cmd->add_option("--sets", ta.sets, "Feature sets")->capture_default_str();
  train_cmd->add_option("--depth", ta.depth, "Search depth for comparisons")->capture_default_str();
  train_cmd->add_option("--batch", ta.batch, "Batch size")->capture_default_str();
  train_cmd->add_option("--max-iterations", ta.max_iterations, "Epoch limit")->capture_default_str();
  train_cmd->add_option("--train-fraction", ta.train_fraction, "Share of samples used for training")
      ->capture_default_str();
  train_cmd->add_option("--max-samples", ta.max_samples, "Random subset size (0 keeps all)");
  train_cmd->add_flag("--no-shuffle", ta.no_shuffle, "Keep the training order fixed");
  train_cmd->add_option("--out", ta.out, "Weight file to write")->capture_default_str();

  std::string weights, data;
  auto* accuracy_cmd = app.add_subcommand("accuracy", "Fraction of expert moves ranked strictly first");
  accuracy_cmd->add_option("--weights", weights, "Weight file")->required()->check(CLI::ExistingFile);
  accuracy_cmd->add_option("--data", data, "Record file")->required()->check(CLI::ExistingFile);
  accuracy_cmd->add_option("--depth", depth, "Search depth")->capture_default_str();

  std::string wa, wb, openings;
  std::uint64_t nodes = 10'000;
  auto* match_cmd = app.add_subcommand("match", "Play every opening twice with colors swapped");
  match_cmd->add_option("--a", wa, "Weights of engine A")->required()->check(CLI::ExistingFile);
  match_cmd->add_option("--b", wb, "Weights of engine B")->required()->check(CLI::ExistingFile);
  match_cmd->add_option("--openings", openings, "FEN list")->required()->check(CLI::ExistingFile);
  match_cmd->add_option("--nodes", nodes, "Node budget per move")->capture_default_str();

  auto* weights_cmd = app.add_subcommand("weights", "Inspect or create weight files");
  weights_cmd->require_subcommand(1);
  int top = 20;
  std::string out;
  auto* show_cmd = weights_cmd->add_subcommand("show", "Largest-magnitude features with names");
  show_cmd->add_option("--weights", weights, "Weight file")->required()->check(CLI::ExistingFile);
  show_cmd->add_option("--top", top, "How many to list")->capture_default_str();
  auto* init_cmd = weights_cmd->add_subcommand("init", "Write freshly initialized weights");
  init_cmd->add_option("--sets", sets, "Feature sets")->capture_default_str();
  init_cmd->add_option("--out", out, "Weight file to write")->required();

  std::size_t count = 5000;
  std::string teacher_out;
  auto* synth_cmd = app.add_subcommand("synth", "Write samples labeled by a known teacher weight vector");
  synth_cmd->add_option("--count", count, "Number of samples")->capture_default_str();
  synth_cmd->add_option("--out", out, "Record file to write")->required();
  synth_cmd->add_option("--teacher-out", teacher_out, "Also save the teacher weights");

  int book_count = 100;
  auto* book_cmd = app.add_subcommand("book", "Generate an opening list by short random play");
  book_cmd->add_option("--count", book_count, "Number of openings")->capture_default_str();
  book_cmd->add_option("--out", out, "FEN list to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*perft_cmd) return cmd_perft(fen, depth);
    if (*features_cmd) return cmd_features(fen, sets);
    if (*train_cmd) return cmd_train(ta, common);
    if (*accuracy_cmd) return cmd_accuracy(weights, data, depth, common);
    if (*match_cmd) return cmd_match(wa, wb, openings, nodes, common);
    if (*show_cmd) return cmd_weights_show(weights, top);
    if (*init_cmd) return cmd_weights_init(sets, out);
    if (*synth_cmd) return cmd_synth(count, out, teacher_out, common);
    if (*book_cmd) return cmd_book(book_count, out, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
