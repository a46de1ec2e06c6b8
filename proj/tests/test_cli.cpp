#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ssgh");
  std::ostringstream out, err;
  int code = ssgh::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ssgh_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    setenv("SSGH_CACHE_DIR", (d / "cache").c_str(), 1);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kTheta = R"({"half_edges":6,"sigma1":[1,0,3,2,5,4],"sigma0_cycles":[[0,2,4],[1,5,3]],
  "labels":{"1":{"kind":"cusp","rep":0},"2":{"kind":"cusp","rep":2},"3":{"kind":"cusp","rep":1}}})";

}  // namespace

TEST_CASE("verify-d2 on the thrice-labeled sphere") {
  scratch();
  Result r = run({"verify-d2", "-g", "0", "-n", "3", "--no-cache"});
  CHECK(r.code == 0);
  CHECK(r.out.find("d²=0: OK") != std::string::npos);
}

TEST_CASE("enumerate lists the four top cells") {
  scratch();
  Result r = run({"enumerate", "-g", "0", "-n", "3", "-k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("degree 2: 4 generators") != std::string::npos);
  std::string out = (scratch() / "top.json").string();
  CHECK(run({"enumerate", "-g", "0", "-n", "3", "-k", "2", "--out", out}).code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["degrees"].size() == 1);
  CHECK(j["degrees"][0]["generators"].size() == 4);
}

TEST_CASE("validate") {
  CHECK(run({"validate", write("theta.json", kTheta)}).code == 0);
  Result fixed = run({"validate", write("fixed.json", R"({"half_edges":2,"sigma1":[0,1],"sigma0_cycles":[[0,1]]})")});
  CHECK(fixed.code == 1);
  CHECK(fixed.out.find("sigma1-fixed-point") != std::string::npos);
  Result malformed = run({"validate", write("broken.json", "{\"half_edges\": ")});
  CHECK(malformed.code == 1);
  CHECK(malformed.err.find("malformed-json") != std::string::npos);
  CHECK(run({"validate", write("shape.json", R"({"half_edges":"x"})")}).code == 1);
  CHECK(run({"validate", (scratch() / "missing.json").string()}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"enumerate", "-g", "0"}).code == 2);
  CHECK(run({"collapse", write("theta2.json", kTheta), "--edges", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("graph subcommands") {
  std::string theta = write("theta3.json", kTheta);
  std::string out = (scratch() / "derived.json").string();
  Result d = run({"derive", theta, "--out", out});
  CHECK(d.code == 0);
  CHECK(d.out.find("type (0,3)") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["boundary_cycles"].size() == 3);
  CHECK(j["type"]["g"] == 0);

  Result c = run({"collapse", theta, "--edges", "0", "--out", out});
  CHECK(c.code == 0);
  CHECK(c.out.find("negligible") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(out))["graph"]["half_edges"] == 4);
  CHECK(run({"collapse", theta, "--edges", "99"}).code == 1);

  Result b = run({"blowup", theta, "--vertex", "0", "--out", out});
  CHECK(b.code == 0);
  CHECK(nlohmann::json::parse(slurp(out))["graph"]["half_edges"] == 12);

  std::string petal = write("petal.json", R"({"half_edges":2,"sigma1":[1,0],"sigma0_cycles":[[0,1]]})");
  std::string unlabeled = write("theta_plain.json", R"({"half_edges":6,"sigma1":[1,0,3,2,5,4],"sigma0_cycles":[[0,2,4],[1,5,3]]})");
  Result g = run({"glue", petal, unlabeled, "--cycle1", "0", "--cycle2", "2", "--out", out});
  CHECK(g.code == 0);
  CHECK(!nlohmann::json::parse(slurp(out))["classes"].empty());
}

TEST_CASE("sequence documents") {
  std::string seq = write("seq.json", R"({"half_edges":6,"sigma1":[1,0,3,2,5,4],"sigma0_cycles":[[0,2,4],[1,5,3]],
    "labels":{"1":{"kind":"cusp","rep":0},"2":{"kind":"cusp","rep":2},"3":{"kind":"cusp","rep":1}},"sequence":[[0]]})");
  Result r = run({"validate", seq});
  CHECK(r.code == 1);
  CHECK(r.out.find("sequence-not-semistable") != std::string::npos);
}

TEST_CASE("outputs are deterministic and cached artifacts are identical") {
  fs::path a = scratch() / "m1.json", b = scratch() / "m2.json", c = scratch() / "m3.json";
  CHECK(run({"matrices", "-g", "1", "-n", "1", "--no-cache", "--threads", "1", "--out", a.string()}).code == 0);
  CHECK(run({"matrices", "-g", "1", "-n", "1", "--no-cache", "--threads", "3", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  // First run fills the cache, second reads it.
  CHECK(run({"matrices", "-g", "1", "-n", "1", "--out", c.string()}).code == 0);
  CHECK(run({"matrices", "-g", "1", "-n", "1", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(c));
  CHECK(slurp(a) == slurp(b));
  bool cached = false;
  for (const auto& entry : fs::directory_iterator(scratch() / "cache")) {
    cached |= entry.path().filename().string().rfind("complex-g1-n1-", 0) == 0;
  }
  CHECK(cached);
}

TEST_CASE("homology table") {
  fs::path out = scratch() / "h.json";
  Result r = run({"homology", "-g", "1", "-n", "1", "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("Z/3") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["degrees"][1]["torsion"][0] == 3);
  CHECK(run({"homology", "-g", "0", "-n", "1"}).code == 1);
}
