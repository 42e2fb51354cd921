#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "strands/cli.hpp"

using namespace strands;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("normalize prints the shortlex normal form", "[cli]") {
  auto r = run_cli({"normalize", "--family", "T", "--n", "3", "s1 s2 s1"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "s1 s2 s1\n");

  r = run_cli({"normalize", "--family", "S", "--n", "3", "s1 s1 s2 s2"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "\n");  // identity normalizes to the empty word

  r = run_cli({"--json", "normalize", "--family", "S", "--n", "3", "s2 s1 s2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["word"] == "s1 s2 s1");
  REQUIRE(j["length"] == 3);
}

TEST_CASE("normalize on the ring reports the wreath pair", "[cli]") {
  auto r = run_cli({"--json", "normalize", "--family", "S", "--n", "3",
                    "--geometry", "ring", "t1 t2^-1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["winding"] == json::array({1, -1, 0}));
  REQUIRE(j["strand"] == "");
  REQUIRE(j["pure"] == true);
  REQUIRE(j["word"] == "t1 t2^-1");

  // z = t1 s1 s2: canonical word splits winding from the strand part
  r = run_cli({"normalize", "--family", "S", "--n", "3", "--geometry", "ring", "z"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "t1 s1 s2\n");
}

TEST_CASE("equal decides the word problem", "[cli]") {
  auto r = run_cli({"equal", "--family", "S", "--n", "3", "s1 s2 s1", "s2 s1 s2"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "true\n");

  r = run_cli({"equal", "--family", "T", "--n", "3", "s1 s2 s1", "s2 s1 s2"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "false\n");

  r = run_cli({"--json", "equal", "--family", "W", "--n", "3", "s1 s1", ""});
  REQUIRE(r.code == 0);
  REQUIRE(json::parse(r.out)["equal"] == true);

  // ring equality goes through the wreath pair
  r = run_cli({"equal", "--family", "S", "--n", "3", "--geometry", "ring",
               "z s2 s1", "t1"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "true\n");
}

TEST_CASE("image prints the one-line permutation", "[cli]") {
  auto r = run_cli({"image", "--family", "S", "--n", "4", "s1 s2 s3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "2 3 4 1\n");

  r = run_cli({"--json", "image", "--family", "T", "--n", "3", "s1 s2 s1"});
  REQUIRE(r.code == 0);
  REQUIRE(json::parse(r.out)["one_line"] == json::array({3, 2, 1}));
}

TEST_CASE("abelianize names the quotient", "[cli]") {
  auto r = run_cli({"abelianize", "--family", "F", "--n", "4"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "Z2\n");

  r = run_cli({"abelianize", "--family", "T", "--n", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "Z2 x Z2\n");  // involutive generators, no relation joins them

  r = run_cli({"--json", "abelianize", "--family", "S", "--n", "4"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["group"] == "Z2");
  REQUIRE(j["free_rank"] == 0);
  REQUIRE(j["torsion"] == json::array({"2"}));
}

TEST_CASE("characters enumerates the one-dimensional phases", "[cli]") {
  auto r = run_cli({"--json", "characters", "--family", "S", "--n", "3"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["free_rank"] == 0);
  REQUIRE(j["characters"].size() == 2);  // trivial and sign

  r = run_cli({"characters", "--family", "T", "--n", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("continuous parameter") != std::string::npos);
}

TEST_CASE("strata lists partition data", "[cli]") {
  auto r = run_cli({"strata", "--n", "5"});
  REQUIRE(r.code == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  REQUIRE(lines == 7);  // partitions of 5

  r = run_cli({"--json", "strata", "--n", "4", "--d", "2", "2,1,1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["partition"] == json::array({2, 1, 1}));
  REQUIRE(j["codim"] == 2);
}

TEST_CASE("sector classifies configurations from inline JSON or a file", "[cli]") {
  auto r = run_cli({"--json", "sector",
                    R"({"geometry":"interval","positions":["1/2","1/4","3/4"]})"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["on_coincidence"] == false);
  REQUIRE(j["sector"] == json::array({2, 1, 3}));

  // coincident pair: classified, no sector
  r = run_cli({"--json", "sector",
               R"({"geometry":"interval","positions":["1/2","1/2","3/4"]})"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  REQUIRE(j["on_coincidence"] == true);
  REQUIRE(j["partition"] == json::array({2, 1}));

  const char* path = "/tmp/cli_sector_config.json";
  {
    std::ofstream f(path);
    f << R"({"geometry":{"ring":{"circumference":"2"}},"positions":["3/2","1/2","1"]})";
  }
  r = run_cli({"sector", path});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "sector: 1 2 3\n");  // cyclic order from label 1: 3/2, wrap, 1/2, 1
  std::remove(path);
}

TEST_CASE("compile turns a loop into a word and element", "[cli]") {
  // two particles swapping twice on the interval: pure braid square
  const char* traj = R"({
    "geometry": "interval",
    "particles": [
      [["0","1/4"],["1/2","3/4"],["1","1/4"]],
      [["0","3/4"],["1/2","1/4"],["1","3/4"]]
    ]
  })";
  auto r = run_cli({"compile", "--family", "T", "--n", "2", traj});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "s1 s1\n");

  auto rj = run_cli({"--json", "compile", "--family", "T", "--n", "2", traj});
  REQUIRE(rj.code == 0);
  json j = json::parse(rj.out);
  REQUIRE(j["word"] == "s1 s1");
  REQUIRE(j["pure"] == true);
  REQUIRE(j["events"].size() == 2);
  REQUIRE(j["events"][0]["kind"] == "crossing");
  REQUIRE(j["events"][0]["time"] == "1/4");
  // generators are involutions, so the double swap is the identity element
  REQUIRE(j["element"]["normal_form"] == "");

  // a single swap is not a pure loop and keeps its letter
  r = run_cli({"--json", "compile", "--family", "S", "--n", "2", R"({
    "geometry": "interval",
    "particles": [
      [["0","1/4"],["1","3/4"]],
      [["0","3/4"],["1","1/4"]]
    ]
  })"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  REQUIRE(j["element"]["normal_form"] == "s1");
  REQUIRE(j["pure"] == false);
}

TEST_CASE("compile reports ring elements as wreath pairs", "[cli]") {
  const char* traj = R"({
    "geometry": {"ring": {"circumference": "1"}},
    "particles": [
      [["0","1/4"],["1","5/4"]],
      [["0","3/4"],["1","7/4"]]
    ]
  })";
  auto r = run_cli({"--json", "compile", "--family", "S", "--n", "2",
                    "--geometry", "ring", traj});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["element"]["winding"] == json::array({-1, -1}));
  REQUIRE(j["element"]["pure"] == true);
  int cuts = 0;
  for (const auto& e : j["events"])
    if (e["kind"] == "cut_crossing") ++cuts;
  REQUIRE(cuts == 2);
}

TEST_CASE("validate reports violations without failing", "[cli]") {
  // triple coincidence at t = 1/2
  const char* traj = R"({
    "geometry": "interval",
    "particles": [
      [["0","1/4"],["1/2","1/2"],["1","1/4"]],
      [["0","1/2"],["1","1/2"]],
      [["0","3/4"],["1/2","1/2"],["1","3/4"]]
    ]
  })";
  auto r = run_cli({"--json", "validate", "--policy", "Q3", traj});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["ok"] == false);
  REQUIRE(j["violations"].size() == 1);
  REQUIRE(j["violations"][0]["time"] == "1/2");
  REQUIRE(j["violations"][0]["participants"] == json::array({1, 2, 3}));
  REQUIRE(j["structural"].empty());

  r = run_cli({"validate", "--policy", "Q", traj});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "ok\n");
}

TEST_CASE("render draws to stdout or a file", "[cli]") {
  auto r = run_cli({"render", "--family", "S", "--n", "3", "s1"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "| | |\n X  |\n| | |\n");

  const char* path = "/tmp/cli_render_out.svg";
  r = run_cli({"--json", "render", "--family", "S", "--n", "4", "--geometry", "ring",
               "--style", "svg", "--out", path, "t1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["written"] == path);
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  REQUIRE(buf.str().size() == j["bytes"]);
  REQUIRE(buf.str().find("<svg") != std::string::npos);
  std::remove(path);

  r = run_cli({"render", "--family", "S", "--n", "4", "--geometry", "ring",
               "--canvas-cap", "3", "t1 t2 t3"});
  REQUIRE(r.code == 1);
  REQUIRE(json::parse(r.err)["error"]["kind"] == "canvas");
}

TEST_CASE("ball counts elements", "[cli]") {
  auto r = run_cli({"--json", "ball", "--family", "S", "--n", "4", "--radius", "6"});
  REQUIRE(r.code == 0);
  REQUIRE(json::parse(r.out)["count"] == 24);

  r = run_cli({"--json", "ball", "--family", "T", "--n", "3", "--radius", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(json::parse(r.out)["count"] == 7);

  r = run_cli({"--json", "ball", "--family", "S", "--n", "2", "--geometry", "ring",
               "--radius", "2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  // radius-2 ball in Z^2 x S2 under {s1, z, z^-1}
  REQUIRE(j["count"] > 5);
  bool saw_t1 = false;
  for (const auto& e : j["elements"]) saw_t1 = saw_t1 || e["word"] == "t1";
  REQUIRE(saw_t1);  // t1 = z s1 has length 2
}

TEST_CASE("affine-check verifies the embedded presentation", "[cli]") {
  auto r = run_cli({"--json", "affine-check", "--n", "3"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["all_hold"] == true);
  REQUIRE(j["checks"].size() >= 3);

  r = run_cli({"affine-check", "--n", "4"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("all relations hold") != std::string::npos);
  REQUIRE(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("errors map to exit codes and JSON diagnostics", "[cli]") {
  // domain error: exit 1 with structured stderr
  auto r = run_cli({"normalize", "--family", "B", "--n", "3", "s1"});
  REQUIRE(r.code == 1);
  REQUIRE(r.out.empty());
  json j = json::parse(r.err);
  REQUIRE(j["error"]["kind"] == "family");
  REQUIRE(j["error"]["message"].get<std::string>().find("B") != std::string::npos);

  r = run_cli({"normalize", "--family", "S", "--n", "3", "s7"});
  REQUIRE(r.code == 1);
  REQUIRE(json::parse(r.err)["error"]["kind"] == "parse");

  r = run_cli({"normalize", "--family", "S", "--n", "3", "t1"});
  REQUIRE(r.code == 1);  // ring letters rejected on the interval

  r = run_cli({"compile", "--family", "T", "--n", "3", "--policy", "Q",
               R"({"geometry":"interval","particles":[[["0","0"],["1","0"]],[["0","1"],["1","1"]],[["0","2"],["1","2"]]]})"});
  REQUIRE(r.code == 1);
  REQUIRE(json::parse(r.err)["error"]["kind"] == "policy");

  r = run_cli({"sector", "/nonexistent/path.json"});
  REQUIRE(r.code == 1);
  REQUIRE(json::parse(r.err)["error"]["kind"] == "io");

  r = run_cli({"sector", "{not json"});
  REQUIRE(r.code == 1);
  REQUIRE(json::parse(r.err)["error"]["kind"] == "json");

  // usage errors: exit 2
  r = run_cli({"no-such-command"});
  REQUIRE(r.code == 2);
  r = run_cli({"normalize", "--family", "S", "s1"});  // --n missing
  REQUIRE(r.code == 2);
  r = run_cli({});
  REQUIRE(r.code == 2);

  // help goes to stdout with exit 0
  r = run_cli({"--help"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("normalize") != std::string::npos);
}
