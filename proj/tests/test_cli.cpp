#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plg/cli.hpp"
#include "plg/constructions.hpp"
#include "plg/fallbacks.hpp"
#include "plg/render.hpp"
#include "plg/scene_io.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace plg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("plgauss-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string build(const std::string& file, std::vector<std::string> args) {
  std::string path = tmp(file).string();
  args.insert(args.begin(), "build");
  args.push_back("-o");
  args.push_back(path);
  auto r = run(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return path;
}

nlohmann::json compute(const std::string& scene, const std::string& inv, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{"compute", "--scene", scene, "--invariant", inv};
  args.insert(args.end(), extra.begin(), extra.end());
  auto r = run(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("build borromean-rings") {
  std::string a = build("rings.json", {"--kind", "borromean-rings", "--a", "2", "--b", "1"});
  std::string b = build("rings2.json", {"--kind", "borromean-rings", "--a", "2", "--b", "1"});
  CHECK(slurp(a) == slurp(b));
  SceneFile f = read_scene_file(a);
  CHECK(f.scene.components.size() == 3);
  std::size_t verts = 0;
  for (const auto& c : f.scene.components) verts += c.map->images.size();
  CHECK(verts == 12);
  CHECK(run({"validate", "--scene", a, "--check", "linkmap"}).code == 0);
}

TEST_CASE("build rejects bad parameters") {
  CHECK(run({"build", "--kind", "borromean-rings", "--a", "1", "--b", "2"}).code == kExitUsage);
  CHECK(run({"build", "--kind", "borromean-rings", "--a", "1.5"}).code == kExitUsage);
  CHECK(run({"build", "--kind", "nonsense"}).code == kExitUsage);
  CHECK(run({"build", "--kind", "split", "--dim", "7"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
}

TEST_CASE("random builds are reproducible") {
  std::string a = build("r1.json", {"--kind", "random", "--random-kind", "doodle", "--seed", "5"});
  std::string b = build("r2.json", {"--kind", "random", "--random-kind", "doodle", "--seed", "5"});
  std::string c = build("r3.json", {"--kind", "random", "--random-kind", "doodle", "--seed", "6"});
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  CHECK(run({"validate", "--scene", a, "--check", "ornament"}).code == 0);
}

TEST_CASE("ornament violation exits 2 with the witness") {
  std::string path = tmp("triple.json").string();
  std::ofstream(path) << R"({"ambient_dim": 2, "components": [
    {"name": "a", "role": "ornament-component", "dim": 1, "vertices": [["-1","0"],["1","0"]], "cells": [[0,1]]},
    {"name": "b", "role": "ornament-component", "dim": 1, "vertices": [["0","-1"],["0","1"]], "cells": [[0,1]]},
    {"name": "c", "role": "ornament-component", "dim": 1, "vertices": [["-1","-1"],["1","1"]], "cells": [[0,1]]}]})";
  auto r = run({"validate", "--scene", path, "--check", "ornament"});
  CHECK(r.code == kExitViolation);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "violation");
  CHECK(j["validation"]["points"][0] == nlohmann::json::array({"0", "0"}));
}

TEST_CASE("floats and malformed files exit 4") {
  std::string path = tmp("float.json").string();
  std::ofstream(path) << R"({"ambient_dim": 2, "components": [
    {"name": "a", "dim": 1, "vertices": [["1.5","0"],["1","0"]], "cells": [[0,1]]}]})";
  CHECK(run({"validate", "--scene", path, "--check", "complex"}).code == kExitUsage);

  std::string raw = tmp("rawfloat.json").string();
  std::ofstream(raw) << R"({"ambient_dim": 2, "components": [
    {"name": "a", "dim": 1, "vertices": [[1.5, 0],[1, 0]], "cells": [[0,1]]}]})";
  CHECK(run({"validate", "--scene", raw, "--check", "complex"}).code == kExitUsage);

  std::string idx = tmp("index.json").string();
  std::ofstream(idx) << R"({"ambient_dim": 2, "components": [
    {"name": "a", "dim": 1, "vertices": [[1, 0],[1, 1]], "cells": [[0,2]]}]})";
  CHECK(run({"validate", "--scene", idx, "--check", "complex"}).code == kExitUsage);

  CHECK(run({"validate", "--scene", tmp("missing.json").string(), "--check", "complex"}).code == kExitUsage);
  CHECK_THROWS_AS(parse_scene("{not json"), ParseError);
}

TEST_CASE("integers and p/q strings are both accepted") {
  SceneFile f = parse_scene(R"({"ambient_dim": 2, "components": [
    {"name": "a", "dim": 1, "vertices": [[1, "-3/6"],["2", 0]], "cells": [[0,1]]}]})");
  CHECK(f.scene.components[0].map->images[0][1] == Scalar(-1, 2));
  CHECK(f.scene.components[0].role == Role::LinkComponent);
  CHECK(serialize_scene(f).find("\"-1/2\"") != std::string::npos);
}

TEST_CASE("round trip is exact") {
  std::vector<Scene> scenes{build_borromean_disks(Scalar(7, 3), Scalar(5, 4)), build_borromean_doodle(),
                            build_cor33_linkmap(), build_split(3, 3), lift_doodle(build_borromean_doodle())};
  Scene hex;
  hex.ambient_dim = 3;
  hex.hex = build_borromean_hexagonal_family(2, 1, 6);
  scenes.push_back(hex);
  for (const auto& s : scenes) {
    SceneFile f{s, {}};
    SceneFile g = parse_scene(serialize_scene(f));
    CHECK(scenes_equal(s, g.scene));
    CHECK(serialize_scene(g) == serialize_scene(f));
  }
}

TEST_CASE("null_homotopies block cones a component") {
  SceneFile f = parse_scene(R"({"ambient_dim": 2, "components": [
    {"name": "a", "dim": 1, "kind": "closed", "vertices": [[0,0],[1,0],[0,1]], "cells": [[0,1],[1,2],[2,0]]}],
    "null_homotopies": [{"of": "a", "apex": ["1/4", "1/4"]}]})");
  const Component* c = f.scene.find("a.cone");
  REQUIRE(c);
  CHECK(c->role == Role::NullHomotopy);
  CHECK(c->map->domain.dim == 2);
  CHECK(c->map->images.back() == Point{Scalar(1, 4), Scalar(1, 4)});
}

TEST_CASE("compute mu-breve on the Borromean doodle") {
  std::string d = build("doodle.json", {"--kind", "borromean-doodle"});
  CHECK(compute(d, "mu-breve")["value"] == 1);
  CHECK(compute(d, "mu-breve", {"--algorithm", "degree"})["value"] == 1);
  auto j = compute(d, "mu-breve", {"--algorithm", "degree", "--direction", "5,-4", "--direction", "-2,7",
                                   "--direction", "-3,-3", "--seed", "9"});
  CHECK(j["value"] == 1);
  CHECK(j["seed"] == 9);
  CHECK(j["directions"][0] == nlohmann::json::array({"5", "-4"}));
  CHECK(run({"compute", "--scene", d, "--invariant", "mu-breve", "--algorithm", "rays"}).code == kExitUsage);
  CHECK(run({"compute", "--scene", d, "--invariant", "nonsense"}).code == kExitUsage);
}

TEST_CASE("compute mu on the Borromean rings") {
  std::string s = build("disks.json", {"--kind", "borromean-disks"});
  auto j = compute(s, "mu");
  CHECK(std::abs(j["value"].get<long>()) == 1);
  CHECK(j["witnesses"].size() == 1);
  // rings alone carry no spanning surfaces
  std::string r = build("rings3.json", {"--kind", "borromean-rings"});
  CHECK(run({"compute", "--scene", r, "--invariant", "mu"}).code == kExitUsage);
}

TEST_CASE("degenerate disks are resolved by a fallback") {
  std::string s = build("diag.json", {"--kind", "borromean-diagonal-disks"});
  auto j = compute(s, "mu");
  CHECK(std::abs(j["value"].get<long>()) == 1);
  bool fallback = false;
  for (const auto& c : j["certificates"])
    if (c.get<std::string>().rfind("choice: fallback", 0) == 0) fallback = true;
  CHECK(fallback);
}

TEST_CASE("exhausted fallbacks") {
  int calls = 0;
  try {
    with_fallbacks("test", [&](int) -> InvariantReport {
      ++calls;
      throw DegeneracyError({{0, 1}, DegeneracyKind::CellBoundary});
    });
    FAIL("expected FallbacksExhausted");
  } catch (const FallbacksExhausted& e) {
    CHECK(e.attempts().size() == 1 + kFallbackCount);
  }
  CHECK(calls == 1 + kFallbackCount);
}

TEST_CASE("split scenes give zero for every invariant") {
  std::string s2 = build("split2d.json", {"--kind", "split", "--n", "3", "--dim", "2"});
  std::string s3a = build("split3a.json", {"--kind", "split", "--n", "2", "--dim", "3"});
  std::string s3b = build("split3b.json", {"--kind", "split", "--n", "3", "--dim", "3"});
  std::string s4a = build("split4a.json", {"--kind", "split", "--n", "2", "--dim", "4"});
  std::string s4b = build("split4b.json", {"--kind", "split", "--n", "3", "--dim", "4"});
  CHECK(compute(s2, "mu-breve")["value"] == 0);
  CHECK(compute(s2, "mu-breve", {"--algorithm", "degree"})["value"] == 0);
  CHECK(compute(s3a, "lk")["value"] == 0);
  CHECK(compute(s3b, "mu")["value"] == 0);
  CHECK(compute(s4b, "beta-hat")["value"] == 0);
  CHECK(compute(s4b, "beta-hat", {"--algorithm", "homotopy"})["value"] == 0);
  CHECK(compute(s4a, "beta")["value"] == 0);
  CHECK(compute(s4a, "beta-star")["value"] == 0);
}

TEST_CASE("compute lk on the Hopf link, with explicit direction") {
  std::string h = build("hopf.json", {"--kind", "hopf"});
  auto a = compute(h, "lk");
  auto b = compute(h, "lk", {"--direction", "3,5,7"});
  CHECK(std::abs(a["value"].get<long>()) == 1);
  CHECK(a["value"] == b["value"]);
  CHECK(run({"compute", "--scene", h, "--invariant", "lk", "--direction", "1,x,2"}).code == kExitUsage);
  CHECK(run({"compute", "--scene", h, "--invariant", "lk", "--direction", "0,0,0"}).code == kExitUsage);
}

TEST_CASE("validate exit codes for the other checks") {
  std::string pm = build("pm.json", {"--kind", "split", "--n", "3", "--dim", "4"});
  CHECK(run({"validate", "--scene", pm, "--check", "pm0"}).code == 0);
  CHECK(run({"validate", "--scene", pm, "--check", "hexagonal"}).code == kExitUsage);
  CHECK(run({"validate", "--scene", pm, "--check", "bogus"}).code == kExitUsage);
  std::string d = build("doodle2.json", {"--kind", "borromean-doodle"});
  CHECK(run({"validate", "--scene", d, "--check", "linkmap"}).code == kExitViolation);
  CHECK(run({"validate", "--scene", d, "--check", "complex"}).code == 0);
}

TEST_CASE("render") {
  std::string d = build("doodle3.json", {"--kind", "borromean-doodle"});
  std::string out1 = tmp("d1.svg").string(), out2 = tmp("d2.svg").string();
  CHECK(run({"render", "--scene", d, "-o", out1}).code == 0);
  CHECK(run({"render", "--scene", d, "-o", out2}).code == 0);
  std::string svg = slurp(out1);
  CHECK(svg == slurp(out2));
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
    return n;
  };
  CHECK(count("<polygon") == 3);
  CHECK(count("class=\"crossing\"") == 6);

  std::string sp = build("split2d2.json", {"--kind", "split", "--n", "3", "--dim", "2"});
  auto r = run({"render", "--scene", sp});
  CHECK(r.code == 0);
  CHECK(r.out.find("class=\"crossing\"") == std::string::npos);

  std::string h = build("hopf2.json", {"--kind", "hopf"});
  CHECK(run({"render", "--scene", h}).code == kExitViolation);
}
