#include "xqct/eval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace xqct {

void WeightStore::validate() const {
  auto n = static_cast<std::size_t>(layout.total_features());
  if (opening.size() != n || endgame.size() != n)
    throw EvalError("weight store size " + std::to_string(opening.size()) + "/" +
                    std::to_string(endgame.size()) + " does not match layout size " + std::to_string(n));
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(opening.begin(), opening.end(), finite) || !std::all_of(endgame.begin(), endgame.end(), finite))
    throw EvalError("weight store holds non-finite values");
}

int phase_points(PieceKind k) {
  static constexpr std::array<int, kNumKinds> kPoints = {0, 1, 1, 6, 3, 3, 1};
  return kPoints[static_cast<int>(k)];
}

double phase_alpha(const Position& pos) {
  int total = 0;
  for (Cell c : pos.cells())
    if (c) total += phase_points(decode(c)->kind);
  return std::clamp(static_cast<double>(total) / kPhaseTotal, 0.0, 1.0);
}

double evaluate(const FeatureVector& phi, double alpha, const WeightStore& ws) {
  double score = 0.0;
  for (const auto& e : phi.entries) {
    if (e.index >= ws.size()) throw EvalError("feature index outside the weight store");
    score += e.value * ws.effective(e.index, alpha);
  }
  return score;
}

double evaluate(const Position& pos, const WeightStore& ws) {
  if (ws.size() != ws.layout.total_features() || ws.endgame.size() != ws.opening.size())
    throw EvalError("evaluate: weight store does not match its layout");
  return evaluate(extract(pos, ws.layout), phase_alpha(pos), ws);
}

long long quantize(double score) { return std::llround(score); }

namespace {

constexpr char kMagic[8] = {'X', 'Q', 'C', 'T', 'W', 'G', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}
std::uint64_t get_uint(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    int c = in.get();
    if (c == EOF) throw EvalError("weight file truncated");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}
void put_array(std::ostream& out, const std::vector<double>& v) {
  for (double d : v) put_u64(out, std::bit_cast<std::uint64_t>(d));
}
std::vector<double> get_array(std::istream& in, std::size_t n) {
  std::vector<double> v(n);
  for (auto& d : v) d = std::bit_cast<double>(get_uint(in, 8));
  return v;
}

}  // namespace

void save_weights(const std::filesystem::path& path, const WeightStore& weights, const WeightStore* averaged) {
  weights.validate();
  if (averaged) {
    averaged->validate();
    if (!(averaged->layout == weights.layout)) throw EvalError("save_weights: averaged layout differs");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EvalError("cannot write " + path.string());
  std::string header = std::string("alpha ") + kPhaseScheme + "\n" + weights.layout.manifest();
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(header.size()));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  put_u64(out, static_cast<std::uint64_t>(weights.size()));
  out.put(averaged ? 1 : 0);
  put_array(out, weights.opening);
  put_array(out, weights.endgame);
  if (averaged) {
    put_array(out, averaged->opening);
    put_array(out, averaged->endgame);
  }
  if (!out) throw EvalError("error writing " + path.string());
}

WeightFile load_weights(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvalError("cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw EvalError(path.string() + ": not a weight file");
  if (get_uint(in, 4) != kVersion) throw EvalError(path.string() + ": unsupported weight file version");
  auto header_len = get_uint(in, 4);
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw EvalError("weight file truncated");
  auto newline = header.find('\n');
  std::string alpha_line = header.substr(0, newline);
  if (alpha_line != std::string("alpha ") + kPhaseScheme)
    throw EvalError(path.string() + ": unknown stage index definition '" + alpha_line + "'");
  FeatureLayout layout = FeatureLayout::from_manifest(header.substr(newline + 1));
  auto n = get_uint(in, 8);
  if (n != static_cast<std::uint64_t>(layout.total_features())) throw EvalError("weight count mismatch");
  bool has_avg = get_uint(in, 1) != 0;

  WeightFile file;
  file.weights.layout = layout;
  file.weights.opening = get_array(in, n);
  file.weights.endgame = get_array(in, n);
  if (has_avg) {
    WeightStore avg;
    avg.layout = layout;
    avg.opening = get_array(in, n);
    avg.endgame = get_array(in, n);
    file.averaged = std::move(avg);
  }
  return file;
}

}  // namespace xqct
