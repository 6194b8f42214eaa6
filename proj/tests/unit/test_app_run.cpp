#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfl/app/run.hpp"

using namespace lfl::app;

namespace {

namespace fs = std::filesystem;

const char* kConfig = R"([potential]
kind = quadratic
lambda = 1

[sampler]
variant = lmc

[schedule]
kind = constant
h = 0.05

[run]
N = 20
d = 2
n_chains = 64
seed = 77

[init]
kind = gaussian
mean = 1
var = 4
)";

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const fs::path path = dir / "experiment.cfg";
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path.string();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

struct SeedEnvGuard {
  ~SeedEnvGuard() { unsetenv("LFL_SEED"); }
};

}  // namespace

TEST_CASE("cmd_run writes worker-invariant csv files") {
  const fs::path dir = fresh_dir("lfl-unit-app-run");
  const std::string config = write_config(dir, kConfig);

  std::ostringstream out1, err1, out2, err2;
  CHECK(cmd_run({config, 1, (dir / "w1").string()}, out1, err1) == kExitOk);
  CHECK(cmd_run({config, 2, (dir / "w2").string()}, out2, err2) == kExitOk);
  CHECK(err1.str().empty());
  CHECK(err2.str().empty());
  CHECK(out1.str().find("estimates.csv") != std::string::npos);
  CHECK(out1.str().find("bounds.csv") != std::string::npos);

  const std::string est1 = read_file(dir / "w1" / "estimates.csv");
  const std::string est2 = read_file(dir / "w2" / "estimates.csv");
  CHECK(first_line(est1) == "step,time,estimator,value,std_error,n");
  CHECK(est1 == est2);

  const std::string bounds1 = read_file(dir / "w1" / "bounds.csv");
  const std::string bounds2 = read_file(dir / "w2" / "bounds.csv");
  CHECK(first_line(bounds1) == "theorem_id,inputs,value,admissible,scaling_only");
  CHECK(bounds1 == bounds2);
  CHECK(bounds1.find("fi_rate,") != std::string::npos);
  CHECK(bounds1.find("tv_rate,") != std::string::npos);

  // Analytic companions appear next to the empirical estimators.
  CHECK(est1.find("second_moment") != std::string::npos);
  CHECK(est1.find("score_fi") != std::string::npos);
  CHECK(est1.find("oracle_kl") != std::string::npos);

  fs::remove_all(dir);
}

TEST_CASE("the seed environment override changes the run") {
  const fs::path dir = fresh_dir("lfl-unit-app-seed");
  const std::string config = write_config(dir, kConfig);
  SeedEnvGuard guard;

  std::ostringstream out, err;
  REQUIRE(cmd_run({config, 1, (dir / "base").string()}, out, err) == kExitOk);

  setenv("LFL_SEED", "123", 1);
  REQUIRE(cmd_run({config, 1, (dir / "reseeded").string()}, out, err) == kExitOk);
  CHECK(read_file(dir / "base" / "estimates.csv") !=
        read_file(dir / "reseeded" / "estimates.csv"));

  // Same override twice is still deterministic.
  REQUIRE(cmd_run({config, 2, (dir / "reseeded2").string()}, out, err) ==
          kExitOk);
  CHECK(read_file(dir / "reseeded" / "estimates.csv") ==
        read_file(dir / "reseeded2" / "estimates.csv"));

  setenv("LFL_SEED", "not-a-seed", 1);
  std::ostringstream err_bad;
  CHECK(cmd_run({config, 1, (dir / "bad").string()}, out, err_bad) ==
        kExitUsage);
  CHECK(err_bad.str().find("LFL_SEED") != std::string::npos);

  fs::remove_all(dir);
}

TEST_CASE("cmd_run reports config problems as usage errors") {
  std::ostringstream out, err;
  CHECK(cmd_run({"definitely/not/a/file.cfg", 1, std::nullopt}, out, err) ==
        kExitUsage);
  CHECK(err.str().find("cannot open config") != std::string::npos);

  const fs::path dir = fresh_dir("lfl-unit-app-badcfg");
  const std::string config = write_config(
      dir, std::string(kConfig) + "[schedule]\nh = 0.2\n");  // duplicate key
  std::ostringstream err2;
  CHECK(cmd_run({config, 1, std::nullopt}, out, err2) == kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("cmd_example prints the separation table") {
  std::ostringstream out, err;
  REQUIRE(cmd_example({3.0}, out, err) == kExitOk);
  const std::vector<std::string> lines = split(out.str(), '\n');
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "m,fi,fi_bound,fi_pass,tv,tv_floor,tv_pass");

  const std::vector<std::string> fields = split(lines[1], ',');
  REQUIRE(fields.size() == 7);
  CHECK(fields[0] == "3");
  CHECK(std::stod(fields[1]) ==
        doctest::Approx(0.0054431768784439531).epsilon(1e-9));
  CHECK(std::stod(fields[2]) ==
        doctest::Approx(0.39992387537672303).epsilon(1e-12));
  CHECK(fields[3] == "1");
  CHECK(std::stod(fields[4]) ==
        doctest::Approx(0.24932505098418495).epsilon(1e-9));
  CHECK(std::stod(fields[5]) == doctest::Approx(0.00125).epsilon(1e-15));
  CHECK(fields[6] == "1");

  std::ostringstream err2;
  CHECK(cmd_example({-1.0}, out, err2) == kExitUsage);
  CHECK(cmd_example({}, out, err2) == kExitUsage);
}

TEST_CASE("cmd_bounds evaluates a calculator from key=value input") {
  std::ostringstream out, err;
  REQUIRE(cmd_bounds("fi_rate", {"k0=1", "l=1", "d=1", "n=100"}, out, err) ==
          kExitOk);
  const std::vector<std::string> lines = split(out.str(), '\n');
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "theorem_id,inputs,value,admissible,scaling_only");
  CHECK(lines[1].rfind("fi_rate,", 0) == 0);
  CHECK(lines[1].find("k0=1") != std::string::npos);
  CHECK(lines[1].find(",0.80000000000000004,true,false") != std::string::npos);

  SUBCASE("usage errors") {
    std::ostringstream err2;
    CHECK(cmd_bounds("not_a_theorem", {}, out, err2) == kExitUsage);
    CHECK(err2.str().find("unknown theorem id") != std::string::npos);

    std::ostringstream err3;
    CHECK(cmd_bounds("fi_rate", {"k0=1", "l=1", "d=1", "n=100", "zz=3"}, out,
                     err3) == kExitUsage);
    CHECK(err3.str().find("unknown key") != std::string::npos);

    std::ostringstream err4;
    CHECK(cmd_bounds("fi_rate", {"k0=1"}, out, err4) == kExitUsage);
    CHECK(err4.str().find("missing required key") != std::string::npos);

    std::ostringstream err5;
    CHECK(cmd_bounds("fi_rate", {"k0=one"}, out, err5) == kExitUsage);
    CHECK(cmd_bounds("fi_rate", {"k0=1", "k0=2"}, out, err5) == kExitUsage);
  }
}

TEST_CASE("cmd_acceptance rejects bad suites and indices") {
  std::ostringstream out, err;
  CHECK(cmd_acceptance("bogus", std::nullopt, out, err) == kExitUsage);
  CHECK(err.str().find("unknown suite") != std::string::npos);
  CHECK(cmd_acceptance("fast", 0, out, err) == kExitUsage);
  CHECK(cmd_acceptance("fast", 11, out, err) == kExitUsage);
}
