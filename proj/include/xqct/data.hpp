// Game records, sample expansion and opening books.
//
// Record file: one game per line, `FEN | moves | result`, where FEN may be
// empty (standard start), moves are space-separated ICCS strings and result
// is one of 1-0, 0-1, 1/2-1/2 or *. Blank lines and lines starting with '#'
// are ignored.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xqct/board.hpp"
#include "xqct/training.hpp"

namespace xqct {

enum class GameResult : std::uint8_t { RedWin, BlackWin, Draw, Unknown };

std::string result_token(GameResult r);

struct GameRecord {
  int id = 0;  // 1-based line number in the source file
  std::optional<std::string> initial;
  std::vector<std::string> moves;
  GameResult result = GameResult::Unknown;

  Position initial_position() const;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadResult {
  std::vector<GameRecord> records;
  std::vector<std::string> warnings;
  int skipped = 0;
};

// Throws DataError for syntax errors; legality is not checked here.
GameRecord parse_record_line(std::string_view line, int id);
std::string format_record(const GameRecord& r);

// Fully legality-checks every record; bad records are skipped with a warning
// naming the record id and ply.
LoadResult load_records(const std::filesystem::path& path);
void save_records(const std::filesystem::path& path, const std::vector<GameRecord>& records);

struct SampleOptions {
  double train_fraction = 0.8;
  std::uint64_t seed = 1;
  // 0 keeps every candidate; otherwise a random subset of this size.
  std::size_t max_samples = 0;
  // Skip positions before this ply of each game.
  int skip_opening_plies = 0;
};

struct SampleSplit {
  std::vector<TrainingSample> train;
  std::vector<TrainingSample> test;
};

// Every (position, move) pair of every record, deduplicated by position, in
// record order.
std::vector<TrainingSample> collect_samples(const std::vector<GameRecord>& records, int skip_opening_plies = 0);

// Every (position, move) pair of every record becomes a candidate; candidates
// are deduplicated by position, a seeded random subset is drawn, and the
// subset is split so no position is in both halves.
SampleSplit expand_samples(const std::vector<GameRecord>& records, const SampleOptions& opts);

// Plain Xiangqi-FEN list, one per line.
std::vector<Position> load_openings(const std::filesystem::path& path);
void save_openings(const std::filesystem::path& path, const std::vector<Position>& openings);

}  // namespace xqct
