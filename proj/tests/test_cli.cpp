#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(CGEO_BIN) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("cgeo_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("analyze on the F2 preset writes a zero-delta report") {
  TempDir tmp("f2");
  CHECK(run("analyze --preset F2 --radius 3 --out " + tmp.path.string()) == 0);
  std::string delta = slurp(tmp.path / "delta.json");
  CHECK(delta.find("\"delta\": 0.0") != std::string::npos);
  CHECK(fs::exists(tmp.path / "contraction.csv"));
  CHECK(fs::exists(tmp.path / "stratum.json"));
}

TEST_CASE("analyze accepts the documented graph JSON schema") {
  TempDir tmp("graph");
  write(tmp.path / "space.json",
        R"({"type":"graph","vertices":["a","b","c","d"],
            "edges":[[0,1,1.0],[1,2,1.0],[2,3,1.0]],
            "rays":[[0,1,2,3]]})");
  CHECK(run("analyze --space " + (tmp.path / "space.json").string() + " --out " +
            (tmp.path / "out").string()) == 0);
  CHECK(fs::exists(tmp.path / "out" / "delta.json"));
}

TEST_CASE("bad inputs exit 2") {
  TempDir tmp("bad");
  CHECK(run("analyze --space /nonexistent/missing.json --out " +
            tmp.path.string()) == 2);

  write(tmp.path / "broken.json", "{not json");
  CHECK(run("analyze --space " + (tmp.path / "broken.json").string() + " --out " +
            tmp.path.string()) == 2);

  write(tmp.path / "badmap.json",
        R"({"pairs":[["r_1","r_0"],["r_2","r_0"]]})");
  CHECK(run("extend --source-preset planeA --trunc 10 --m-max 2 --map " +
            (tmp.path / "badmap.json").string() + " --out " +
            (tmp.path / "out").string()) == 2);

  CHECK(run("repro exampleC --out " + tmp.path.string()) == 2);
}

TEST_CASE("mathematical precondition failures exit 3") {
  TempDir tmp("pre");
  // two marked rays only: no qualifying triple, so no cover radius
  write(tmp.path / "twostar.json",
        R"({"type":"graph","vertices":["0","1","2","3","4"],
            "edges":[[0,1],[1,2],[0,3],[3,4]],
            "rays":[[0,1,2],[0,3,4]],"ray_labels":["u","v"]})");
  CHECK(run("extend --source " + (tmp.path / "twostar.json").string() +
            " --target " + (tmp.path / "twostar.json").string() + " --out " +
            (tmp.path / "out").string()) == 3);
}

TEST_CASE("fixed seeds give byte-identical reports") {
  TempDir tmp("det");
  std::string base = "analyze --preset planeA --trunc 10 --m-max 2 --seed 9 ";
  CHECK(run(base + "--out " + (tmp.path / "a").string()) == 0);
  CHECK(run(base + "--jobs 1 --out " + (tmp.path / "b").string()) == 0);
  for (const char* f :
       {"delta.json", "gauge.json", "products.csv", "contraction.csv",
        "stratum.json", "stratum_metric.csv"}) {
    CAPTURE(f);
    CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
  }
}
