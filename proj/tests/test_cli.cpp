#include "wqed/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace wqed;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::set<fs::path> listing(const fs::path& dir) {
  std::set<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) out.insert(e.path());
  return out;
}

}  // namespace

TEST_CASE("steady on the lossless pair prints the closed-form concurrence") {
  TempDir dir("wqed_cli_steady");
  const Run r = run({"steady", "--n", "1", "--eta2", "1.0", "--omega-a", "1", "--omega-b", "1", "--gamma", "1",
                     "--out-dir", dir.path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("concurrence 0.666667") != std::string::npos);
  CHECK(fs::exists(dir.path / "steady.csv"));
}

TEST_CASE("verify reports the dark state") {
  TempDir dir("wqed_cli_verify");
  const Run r = run({"verify", "--n", "2", "--eta2", "1.0", "--omega-a", "0.8", "--omega-b", "0.8", "--j", "1.1",
                     "--out-dir", dir.path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("dark state verified") != std::string::npos);
  std::ifstream f(dir.path / "verify.json");
  CHECK(nlohmann::json::parse(f)["passed"] == true);
  CHECK(run({"verify", "--eta2", "0.9", "--omega-a", "1", "--omega-b", "1", "--out-dir", dir.path.string()}).code ==
        kExitConfig);
}

TEST_CASE("config errors exit 2 and name the key") {
  const Run unknown = run({"steady", "--omgea-a", "1"});
  CHECK(unknown.code == kExitConfig);
  const Run bad = run({"steady", "--n", "2"});
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("j:") != std::string::npos);
  const Run value = run({"steady", "--gamma", "abc"});
  CHECK(value.code == kExitConfig);
  CHECK(value.err.find("gamma") != std::string::npos);
  CHECK(run({"figure", "fig9z"}).code == kExitConfig);
  CHECK(run({}).code == kExitConfig);

  TempDir dir("wqed_cli_cfg");
  std::ofstream(dir.path / "bad.cfg") << "n = 1\ncolour = red\n";
  const Run file = run({"steady", "--config", (dir.path / "bad.cfg").string()});
  CHECK(file.code == kExitConfig);
  CHECK(file.err.find("colour") != std::string::npos);
}

TEST_CASE("solver errors exit 3") {
  // uncoupled second pair keeps any initial state
  const Run r = run({"steady", "--n", "2", "--j", "0", "--eta2", "0.9", "--omega-a", "1", "--omega-b", "1", "--out-dir",
                     (fs::temp_directory_path() / "wqed_cli_solver").string()});
  CHECK(r.code == kExitSolver);
  CHECK(r.err.find("solver error") != std::string::npos);
  fs::remove_all(fs::temp_directory_path() / "wqed_cli_solver");
}

TEST_CASE("flags override the config file and dump round-trips") {
  TempDir dir("wqed_cli_dump");
  std::ofstream(dir.path / "run.cfg") << "n = 2\nj = 0.3\neta2 = 0.9\nomega_a = 0.5\nomega_b = 0.5\n";
  const Run first = run({"steady", "--config", (dir.path / "run.cfg").string(), "--omega-b", "0.25", "--dump-config"});
  CHECK(first.code == kExitOk);
  CHECK(first.out.find("omega_b = 0.25\n") != std::string::npos);
  CHECK(first.out.find("omega_a = 0.5\n") != std::string::npos);
  std::ofstream(dir.path / "dumped.cfg") << first.out;
  const Run second = run({"steady", "--config", (dir.path / "dumped.cfg").string(), "--dump-config"});
  CHECK(second.out == first.out);
}

TEST_CASE("commands write only inside out_dir") {
  TempDir root("wqed_cli_confine");
  const fs::path out = root.path / "out";
  const auto cwd_before = listing(fs::current_path());
  const std::string o = out.string();
  CHECK(run({"steady", "--n", "2", "--j", "0.3", "--eta2", "0.9", "--omega-a", "0.5", "--omega-b", "0.5", "--out-dir", o})
            .code == kExitOk);
  CHECK(run({"evolve", "--eta2", "0.9", "--omega-a", "1", "--omega-b", "1", "--t-max", "5", "--points", "6",
             "--out-dir", o}).code == kExitOk);
  CHECK(run({"sweep", "--eta2", "0.9", "--axes", "omega:0.1:10:5:log; delta:-1:1:3", "--out-dir", o}).code == kExitOk);
  CHECK(run({"optimize", "--eta2", "0.9", "--free", "omega:0.1:10", "--format", "json", "--out-dir", o}).code ==
        kExitOk);
  CHECK(run({"rates", "--n", "2", "--j", "0.01", "--eta2", "0.9", "--omega-a", "0.01", "--omega-b", "0.01",
             "--out-dir", o}).code == kExitOk);
  CHECK(run({"figure", "fig1c", "--resolution", "5", "--out-dir", o}).code == kExitOk);
  CHECK(listing(fs::current_path()) == cwd_before);
  for (const char* name : {"steady.csv", "evolve.csv", "evolve.svg", "sweep.csv", "sweep.svg", "optimize.json",
                           "optimize_best.json", "rates.json", "fig1c.csv", "fig1c.svg"}) {
    CHECK_MESSAGE(fs::exists(out / name), name);
  }
  for (const auto& p : listing(root.path)) CHECK(p.string().rfind(o, 0) == 0);
}
