#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string err;
};

Result run_cli(const std::string& args, const fs::path& dir, const std::string& env = "") {
  fs::path err = dir / "stderr.txt";
  std::string cmd = env + " " + std::string(FINEHULL_CLI) + " " + args + " > " + (dir / "stdout.txt").string() +
                    " 2> " + err.string();
  int status = std::system(cmd.c_str());
  std::ifstream in(err);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("finehull_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kSpec = R"('{"a0":0,"b0":1,"c_rule":{"kind":"affine","slope":5},"N":12}')";

}  // namespace

TEST_CASE("invalid JSON exits with 1 and names the field") {
  fs::path dir = scratch("invalid");
  std::ofstream(dir / "bad.json") << "{\"a0\": 0, ";
  Result r = run_cli("eval --spec " + (dir / "bad.json").string() + " --out " + (dir / "out").string(), dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("\"field\":\"spec\"") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out" / "manifest.json"));
}

TEST_CASE("spec-build writes spec and manifest") {
  fs::path dir = scratch("build");
  Result r = run_cli(std::string("spec-build --spec ") + kSpec + " --out " + (dir / "out").string(), dir);
  REQUIRE(r.code == 0);
  std::string spec = slurp(dir / "out" / "spec.json");
  CHECK(spec.find("\"log_length\": \"-5\"") != std::string::npos);
  CHECK(slurp(dir / "out" / "manifest.json").find("\"config_hash\"") != std::string::npos);
}

TEST_CASE("repeated runs are byte identical") {
  fs::path dir = scratch("repeat");
  std::string args = std::string("hull-scan --spec ") + kSpec +
                     " --at 2,0 --M 4 --weights unit --sq --res 40 --wrect=-3,3,-3,3";
  REQUIRE(run_cli(args + " --threads 1 --out " + (dir / "a").string(), dir).code == 0);
  REQUIRE(run_cli(args + " --threads 4 --out " + (dir / "b").string(), dir).code == 0);
  for (const char* f : {"grid.csv", "dips.json", "manifest.json"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
}

TEST_CASE("config file, environment and flags layer in order") {
  fs::path dir = scratch("layers");
  std::ofstream(dir / "config.json") << R"({"samples": 8, "leja_n": 16})";
  std::string args = "--config " + (dir / "config.json").string() + " sample-e --spec " + kSpec;
  REQUIRE(run_cli(args + " --out " + (dir / "a").string(), dir).code == 0);
  REQUIRE(run_cli(std::string("sample-e --spec ") + kSpec + " --leja-n 16 --out " + (dir / "b").string(),
                  dir, "FINEHULL_SAMPLES=8")
              .code == 0);
  CHECK(slurp(dir / "a" / "e_sample.csv") == slurp(dir / "b" / "e_sample.csv"));
}

TEST_CASE("unknown config keys are rejected") {
  fs::path dir = scratch("unknown");
  std::ofstream(dir / "config.json") << R"({"colour": "blue"})";
  Result r = run_cli("--config " + (dir / "config.json").string() + " eval --spec " + kSpec, dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("colour") != std::string::npos);
}
