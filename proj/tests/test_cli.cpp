#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(XQCT_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / "xqct_cli_test";
  TempDir() {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("perft and features") {
  CHECK(run("perft").out == "44\n");
  CHECK(run("perft --depth 2").out == "1920\n");
  Run r = run("perft --fen '3k5/9/9/9/9/9/9/9/9/4K4 w' --depth 1");
  CHECK(r.status == 0);
  CHECK(r.out == "2\n");
  CHECK(run("perft --depth 9").status != 0);
  CHECK(run("perft --fen 'nonsense w'").out.find("error:") == 0);

  CHECK(run("features --sets matl").out == "features 0 of 6\n");
  Run f = run("features --fen 'rnbakab1r/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR w' --sets matl");
  CHECK(f.out.find("features 1 of 6") == 0);
  CHECK(f.out.find("MATL N 1") != std::string::npos);
  CHECK(run("features --sets eval7").out.find(" of 268\n") != std::string::npos);
  CHECK(run("features --sets bogus").status != 0);
}

TEST_CASE("weight files from the command line") {
  TempDir dir;
  Run init = run("weights init --sets matl,loc --out " + (dir / "w.bin"));
  CHECK(init.status == 0);
  Run show = run("weights show --top 2 --weights " + (dir / "w.bin"));
  CHECK(show.out.find("MATL 0 6") != std::string::npos);
  CHECK(show.out.find("LOC 6 194") != std::string::npos);
  CHECK(show.out.find("MATL R opening=2000 endgame=2000") != std::string::npos);
  CHECK(run("weights show --weights " + (dir / "missing.bin")).status != 0);
}

TEST_CASE("synthesize, train, measure, play") {
  TempDir dir;
  CHECK(run("synth --count 400 --out " + (dir / "s.txt") + " --teacher-out " + (dir / "t.bin")).status == 0);
  Run train = run("--seed 2 train --data " + (dir / "s.txt") + " --max-iterations 4 --out " + (dir / "w.bin"));
  INFO(train.out);
  REQUIRE(train.status == 0);
  CHECK(train.out.find("best_epoch=") != std::string::npos);
  std::string log = slurp(dir / "w.bin.log");
  CHECK(log.find("{\"epoch\":1,") == 0);
  std::string meta = slurp(dir / "w.bin.meta");
  CHECK(meta.find("sets=matl,loc") != std::string::npos);
  CHECK(meta.find("train_samples=320") != std::string::npos);

  // The teacher ranks its own labels first every time.
  Run teacher = run("accuracy --weights " + (dir / "t.bin") + " --data " + (dir / "s.txt"));
  CHECK(teacher.out == "1.0000\n");
  Run learned = run("accuracy --weights " + (dir / "w.bin") + " --data " + (dir / "s.txt"));
  CHECK(std::stod(learned.out) > 0.7);

  std::ofstream(dir / "book.fen") << "rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR w\n";
  Run match = run("match --a " + (dir / "t.bin") + " --b " + (dir / "t.bin") + " --openings " + (dir / "book.fen") +
                  " --nodes 200");
  CHECK(match.status == 0);
  CHECK(match.out.find("summary games=2") != std::string::npos);
  CHECK(match.out.find("win_rate=0.5 ") != std::string::npos);
}

TEST_CASE("config files and bad input") {
  TempDir dir;
  std::ofstream(dir / "c.ini") << "[perft]\ndepth = 2\n";
  CHECK(run("--config " + (dir / "c.ini") + " perft").out == "1920\n");
  std::ofstream(dir / "bad.txt") << "| h2e2 h9h2 | 1-0\n";
  Run r = run("train --data " + (dir / "bad.txt") + " --out " + (dir / "w.bin"));
  CHECK(r.status != 0);
  CHECK(r.out.find("error:") != std::string::npos);
  CHECK(run("").status != 0);
}
