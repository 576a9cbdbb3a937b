#include "xqct/data.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace xqct {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool skippable(const std::string& line) { return line.empty() || line.front() == '#'; }

}  // namespace

std::string result_token(GameResult r) {
  switch (r) {
    case GameResult::RedWin: return "1-0";
    case GameResult::BlackWin: return "0-1";
    case GameResult::Draw: return "1/2-1/2";
    default: return "*";
  }
}

Position GameRecord::initial_position() const { return initial ? parse_fen(*initial) : Position::start(); }

GameRecord parse_record_line(std::string_view line, int id) {
  auto first = line.find('|');
  auto second = first == std::string_view::npos ? first : line.find('|', first + 1);
  if (second == std::string_view::npos)
    throw DataError("record " + std::to_string(id) + ": expected 'FEN | moves | result'");
  GameRecord r;
  r.id = id;
  std::string fen = trim(line.substr(0, first));
  if (!fen.empty()) r.initial = fen;
  std::istringstream moves{std::string(line.substr(first + 1, second - first - 1))};
  for (std::string m; moves >> m;) r.moves.push_back(m);
  std::string res = trim(line.substr(second + 1));
  if (res == "1-0") {
    r.result = GameResult::RedWin;
  } else if (res == "0-1") {
    r.result = GameResult::BlackWin;
  } else if (res == "1/2-1/2") {
    r.result = GameResult::Draw;
  } else if (res == "*" || res.empty()) {
    r.result = GameResult::Unknown;
  } else {
    throw DataError("record " + std::to_string(id) + ": unknown result '" + res + "'");
  }
  return r;
}

std::string format_record(const GameRecord& r) {
  std::string out = r.initial.value_or("");
  out += " |";
  for (const auto& m : r.moves) out += " " + m;
  out += " | " + result_token(r.result);
  return out;
}

LoadResult load_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  LoadResult out;
  std::string line;
  for (int id = 1; std::getline(in, line); ++id) {
    std::string t = trim(line);
    if (skippable(t)) continue;
    try {
      GameRecord r = parse_record_line(t, id);
      Position pos = r.initial_position();
      for (std::size_t ply = 0; ply < r.moves.size(); ++ply) {
        auto m = find_move(pos, r.moves[ply]);
        if (!m)
          throw DataError("record " + std::to_string(id) + ": illegal move '" + r.moves[ply] + "' at ply " +
                          std::to_string(ply + 1));
        pos.make(*m);
      }
      out.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.warnings.emplace_back(e.what());
      ++out.skipped;
    }
  }
  return out;
}

void save_records(const std::filesystem::path& path, const std::vector<GameRecord>& records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& r : records) out << format_record(r) << '\n';
}

std::vector<TrainingSample> collect_samples(const std::vector<GameRecord>& records, int skip_opening_plies) {
  std::vector<TrainingSample> candidates;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& r : records) {
    Position pos = r.initial_position();
    for (std::size_t ply = 0; ply < r.moves.size(); ++ply) {
      auto m = find_move(pos, r.moves[ply]);
      if (!m) throw DataError("record " + std::to_string(r.id) + ": illegal move at ply " + std::to_string(ply + 1));
      if (static_cast<int>(ply) >= skip_opening_plies && seen.insert(pos.hash()).second) {
        Position sample = pos;
        sample.clear_history();
        candidates.push_back({std::move(sample), *m});
      }
      pos.make(*m);
    }
  }
  return candidates;
}

SampleSplit expand_samples(const std::vector<GameRecord>& records, const SampleOptions& opts) {
  if (!(opts.train_fraction > 0.0 && opts.train_fraction < 1.0))
    throw DataError("train fraction must lie strictly between 0 and 1");
  std::vector<TrainingSample> candidates = collect_samples(records, opts.skip_opening_plies);
  std::mt19937_64 rng(opts.seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  if (opts.max_samples && candidates.size() > opts.max_samples) candidates.resize(opts.max_samples);

  auto n_train = static_cast<std::size_t>(static_cast<double>(candidates.size()) * opts.train_fraction + 0.5);
  n_train = std::min(n_train, candidates.size());
  SampleSplit split;
  split.train.assign(std::make_move_iterator(candidates.begin()),
                     std::make_move_iterator(candidates.begin() + static_cast<std::ptrdiff_t>(n_train)));
  split.test.assign(std::make_move_iterator(candidates.begin() + static_cast<std::ptrdiff_t>(n_train)),
                    std::make_move_iterator(candidates.end()));
  return split;
}

std::vector<Position> load_openings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::vector<Position> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    std::string t = trim(line);
    if (skippable(t)) continue;
    try {
      out.push_back(parse_fen(t));
    } catch (const FenError& e) {
      throw DataError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void save_openings(const std::filesystem::path& path, const std::vector<Position>& openings) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& p : openings) out << format_fen(p) << '\n';
}

}  // namespace xqct
