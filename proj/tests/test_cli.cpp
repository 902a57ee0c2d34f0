// End-to-end checks of the CLI binary: exit codes, decision tokens, and
// manifest-based reproduction.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "hdnt/config.hpp"
#include "hdnt/csv.hpp"
#include "hdnt/parallel.hpp"
#include "hdnt/rng.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = HDNT_CLI_BIN;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "hdnt_cli_tests") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string gaussian_csv(const TempDir& dir, const std::string& name, int n,
                         int d, std::uint64_t seed) {
  hdnt::RngStream rng(seed);
  const hdnt::SampleMatrix x = test_helpers::random_points(n, d, rng);
  const std::string path = dir.file(name);
  hdnt::write_text_file(path, hdnt::write_csv(x));
  return path;
}

}  // namespace

TEST_CASE("exit code 0 on completion regardless of the decision") {
  TempDir dir;
  const std::string csv = gaussian_csv(dir, "ok.csv", 30, 4, 1);
  CHECK(run("test --csv " + csv + " --B 20 --seed 1") == 0);

  // A rejecting run still exits 0; the decision lives in the report.
  hdnt::RngStream rng(2);
  hdnt::RowMajorMatrix cube(60, 4);
  for (int i = 0; i < 60; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double z = rng.normal();
      cube(i, j) = z * z * z;
    }
  }
  const std::string heavy = dir.file("heavy.csv");
  hdnt::write_text_file(heavy, hdnt::write_csv(hdnt::SampleMatrix(cube)));
  const std::string out = dir.file("heavy.txt");
  CHECK(run("test --csv " + heavy + " --B 99 --seed 3 --out " + out) == 0);
  const std::string text = hdnt::read_text_file(out);
  CHECK(text.find("REJECT") != std::string::npos);
}

TEST_CASE("exit code 2 on configuration errors") {
  TempDir dir;
  const std::string csv = gaussian_csv(dir, "cfg.csv", 20, 3, 4);
  CHECK(run("test --csv " + csv + " --B 0") == 2);
  CHECK(run("size --model nosuchmodel") == 2);
  CHECK(run("test --csv " + csv + " --format yaml") == 2);
  CHECK(run("nonsense-subcommand") == 2);
}

TEST_CASE("exit code 3 on data errors") {
  TempDir dir;
  CHECK(run("test --csv " + dir.file("missing.csv")) == 3);

  const std::string bad = dir.file("bad.csv");
  hdnt::write_text_file(bad, "1,2\nabc,4\n");
  CHECK(run("test --csv " + bad) == 3);

  const std::string ragged = dir.file("ragged.csv");
  hdnt::write_text_file(ragged, "1,2\n3\n");
  CHECK(run("test --csv " + ragged) == 3);
}

TEST_CASE("exit code 4 on numerical failures") {
  TempDir dir;
  // Perfectly collinear columns: the Mardia tests need an invertible
  // sample covariance.
  std::string csv;
  for (int i = 0; i < 10; ++i) {
    csv += std::to_string(i) + "," + std::to_string(i * 2) + "\n";
  }
  const std::string path = dir.file("collinear.csv");
  hdnt::write_text_file(path, csv);
  CHECK(run("baseline --csv " + path + " --method mardia") == 4);
}

TEST_CASE("a saved config reproduces the run byte for byte") {
  TempDir dir;
  const std::string cfg = dir.file("run.cfg");
  const std::string out1 = dir.file("a.csv");
  const std::string out2 = dir.file("b.csv");
  CHECK(run("size --model model2 --d 10 --n 30 --B 30 --reps 20 --seed 99"
            " --format csv --save-config " + cfg + " --out " + out1) == 0);
  CHECK(run("size --config " + cfg + " --format csv --out " + out2) == 0);
  CHECK(hdnt::read_text_file(out1) == hdnt::read_text_file(out2));

  // Explicit flags override config values.
  const std::string out3 = dir.file("c.csv");
  CHECK(run("size --config " + cfg + " --reps 5 --format csv --out " + out3) == 0);
  const std::string shorter = hdnt::read_text_file(out3);
  CHECK(std::count(shorter.begin(), shorter.end(), '\n') == 6);  // header + 5
}

TEST_CASE("HDNT_THREADS is the fallback thread budget") {
  setenv("HDNT_THREADS", "3", 1);
  CHECK(hdnt::resolve_threads(0) == 3);
  CHECK(hdnt::resolve_threads(5) == 5);  // explicit value wins
  setenv("HDNT_THREADS", "garbage", 1);
  CHECK(hdnt::resolve_threads(0) >= 1);
  unsetenv("HDNT_THREADS");
  CHECK(hdnt::resolve_threads(0) >= 1);
}

TEST_CASE("manifest goes to stderr, results to stdout") {
  TempDir dir;
  const std::string csv = gaussian_csv(dir, "split.csv", 20, 3, 8);
  const std::string out = dir.file("stdout.txt");
  const std::string err = dir.file("stderr.txt");
  const std::string cmd = kCli + " test --csv " + csv + " --B 10 --seed 1 > " +
                          out + " 2> " + err;
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(hdnt::read_text_file(out).find("p-value") != std::string::npos);
  const std::string manifest = hdnt::read_text_file(err);
  CHECK(manifest.find("# run manifest") != std::string::npos);
  CHECK(manifest.find("# subcommand = test") != std::string::npos);
}
