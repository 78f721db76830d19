#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affchar/commands.hpp"
#include "affchar/errors.hpp"
#include "affchar/scene.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace affchar;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string output;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    int code = run_cli(args, out);
    return {code, out.str()};
}

std::string write_temp_scene(const std::string& content, const std::string& name) {
    std::string path = "/tmp/affchar_test_" + name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("scene text round-trip is the identity") {
    SceneFile s = builtin_scene();
    CHECK(parse_scene(serialize_scene_text(s)) == s);
    CHECK(parse_scene(serialize_scene_json(s)) == s);

    // And serialize . parse is the identity on the canonical text.
    std::string text = serialize_scene_text(s);
    CHECK(serialize_scene_text(parse_scene(text)) == text);
    std::string jtext = serialize_scene_json(s);
    CHECK(serialize_scene_json(parse_scene(jtext)) == jtext);
}

TEST_CASE("scene parse errors carry the syntax code") {
    CHECK_THROWS_WITH_AS(parse_scene("torus T\n"), doctest::Contains("SceneSyntax"), Error);
    CHECK_THROWS_WITH_AS(parse_scene("level L T [[1,2],[3]]\n"), doctest::Contains("SceneSyntax"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_scene("bogus x\n"), doctest::Contains("SceneSyntax"), Error);
    CHECK_THROWS_WITH_AS(parse_scene("{ not json"), doctest::Contains("SceneSyntax"), Error);
}

TEST_CASE("declared kinds are re-validated on load") {
    std::string text =
        "torus A 1\n"
        "torus B 2\n"
        "morphism bad A B finite_covering [[1],[0]]\n";
    SceneFile s = parse_scene(text);
    CHECK_THROWS_WITH_AS(resolve_morphism(s, "bad"), doctest::Contains("NotCovering"), Error);

    // The CLI validates the whole file up front, whatever the command asks for.
    std::string path = write_temp_scene(text + "level ok A [[-1]]\n", "badkind.scene");
    RunResult r = run({"orbits", "ok", "--scene", path, "--json"});
    CHECK(r.code == 2);
    CHECK(json::parse(r.output)["error"]["code"] == "NotCovering");

    std::string dangling = write_temp_scene("level lv Missing [[-1]]\n", "dangling.scene");
    RunResult d = run({"orbits", "lv", "--scene", dangling, "--json"});
    CHECK(d.code == 2);
    CHECK(json::parse(d.output)["error"]["code"] == "SceneReference");
}

TEST_CASE("orbits command on builtin data") {
    RunResult r = run({"orbits", "hstar_tau", "--json"});
    CHECK(r.code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["results"]["orbit_count"] == "4");
    CHECK(doc["results"]["orbits"].size() == 4);

    RunResult g = run({"orbits", "U3", "--json"});
    CHECK(g.code == 0);
    json gdoc = json::parse(g.output);
    CHECK(gdoc["results"]["regular_orbit_count"] == "1");
    CHECK(gdoc["results"]["regular_orbits"][0]["members"].size() == 6);
}

TEST_CASE("induce agrees across the three views") {
    json tables[3];
    const char* views[3] = {"char", "k", "rl"};
    for (int i = 0; i < 3; ++i) {
        RunResult r = run({"induce", "f", "gstar_tau", "--view", views[i], "--all", "--json"});
        REQUIRE(r.code == 0);
        tables[i] = json::parse(r.output)["results"]["images"];
    }
    CHECK(tables[0] == tables[1]);
    CHECK(tables[0] == tables[2]);
}

TEST_CASE("induce on the counterexample basis orbit") {
    RunResult r = run({"induce", "f", "gstar_tau", "--basis", "[0,0]", "--json"});
    REQUIRE(r.code == 0);
    json images = json::parse(r.output)["results"]["images"];
    REQUIRE(images.size() == 1);
    json image = images[0]["image"];
    REQUIRE(image.size() == 2);
    CHECK(image[0]["orbit"][0] == "0");
    CHECK(image[1]["orbit"][0] == "2");
    CHECK(image[0]["coeff"] == "1");
    CHECK(image[1]["coeff"] == "1");
}

TEST_CASE("induce on a group morphism carries the factor two") {
    RunResult r = run({"induce", "u3_restrict", "-", "--basis", "[0,1,2]", "--json"});
    REQUIRE(r.code == 0);
    json image = json::parse(r.output)["results"]["images"][0]["image"];
    REQUIRE(image.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(image[i]["coeff"] == "2");
}

TEST_CASE("decompose command emits the stage data") {
    RunResult r = run({"decompose", "h", "tau", "--json"});
    REQUIRE(r.code == 0);
    json res = json::parse(r.output)["results"];
    CHECK(res["degree_q"] == "2");
    CHECK(res["perp_basis"] == json::parse(R"([["1"],["0"]])"));
    CHECK(res["fj"] == json::parse(R"([["0","1"],["1","0"]])"));
}

TEST_CASE("verify counterexample and u3 pass on builtin data") {
    for (const char* check : {"counterexample", "u3", "rho-shift"}) {
        RunResult r = run({"verify", check, "--json"});
        INFO(check, ": ", r.output);
        CHECK(r.code == 0);
        json doc = json::parse(r.output);
        CHECK(doc["results"]["status"] == "PASS");
    }
}

TEST_CASE("verify functoriality, naturality and fht pass on builtin data") {
    for (const char* check : {"functoriality", "naturality-k", "naturality-rl", "fht"}) {
        RunResult r = run({"verify", check, "--json"});
        INFO(check, ": ", r.output);
        CHECK(r.code == 0);
    }
}

TEST_CASE("exit code 2 on invalid input with machine-readable error") {
    RunResult r = run({"orbits", "no_such_level", "--json"});
    CHECK(r.code == 2);
    json doc = json::parse(r.output);
    CHECK(doc["error"]["code"] == "SceneReference");

    // A non-positive level violates the precondition, named in the error.
    std::string path = write_temp_scene("torus T 1\nlevel bad T [[2]]\n", "badlevel.scene");
    RunResult p = run({"orbits", "bad", "--scene", path, "--json"});
    CHECK(p.code == 2);
    CHECK(json::parse(p.output)["error"]["code"] == "NotPositive");
}

TEST_CASE("verify exit code 1 on a mathematical failure") {
    // rho-shift on the inconsistent pair alone: the user asked for a
    // bijection and does not get one.
    std::string path = write_temp_scene(serialize_scene_text(builtin_scene()), "builtin.scene");
    RunResult r = run({"verify", "rho-shift", "--scene", path, "--low", "A1low", "--high", "A1bad",
                       "--json"});
    CHECK(r.code == 1);
    json doc = json::parse(r.output);
    CHECK(doc["results"]["status"] == "FAIL");
    CHECK(doc["results"]["checks"][0]["details"]["outcome"] == "NotBijective");
}

TEST_CASE("closure cap honors the environment variable") {
    setenv("AFFINE_CHAR_CLOSURE_CAP", "3", 1);
    RunResult r = run({"orbits", "U3", "--json"});
    unsetenv("AFFINE_CHAR_CLOSURE_CAP");
    CHECK(r.code == 2);
    CHECK(json::parse(r.output)["error"]["code"] == "ClosureCapExceeded");

    RunResult ok = run({"orbits", "U3", "--json"});
    CHECK(ok.code == 0);
}

TEST_CASE("byte-identical output across runs") {
    std::vector<std::vector<std::string>> invocations = {
        {"orbits", "tau3", "--json"},
        {"verify", "counterexample"},
        {"verify", "u3", "--json"},
        {"induce", "f", "gstar_tau", "--all"},
        {"decompose", "h", "tau"},
        {"examples"},
        {"examples", "--json"},
    };
    for (const auto& args : invocations) {
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.output == b.output);
        CHECK_FALSE(a.output.empty());
    }
}

TEST_CASE("result documents survive a JSON round-trip") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"orbits", "tau", "--json"}, {"verify", "u3", "--json"}}) {
        RunResult r = run(args);
        REQUIRE(r.code == 0);
        json doc = json::parse(r.output);
        CHECK(doc.dump(2) + "\n" == r.output);
    }
}

TEST_CASE("examples output feeds back through --scene") {
    RunResult ex = run({"examples"});
    REQUIRE(ex.code == 0);
    std::string path = write_temp_scene(ex.output, "roundtrip.scene");
    RunResult r = run({"verify", "functoriality", "--scene", path, "--morphism", "f", "--level",
                       "gstar_tau", "--json"});
    CHECK(r.code == 0);

    RunResult exj = run({"examples", "--json"});
    REQUIRE(exj.code == 0);
    std::string jpath = write_temp_scene(exj.output, "roundtrip.scene.json");
    RunResult rj = run({"orbits", "hstar_tau", "--scene", jpath, "--json"});
    CHECK(rj.code == 0);
    CHECK(json::parse(rj.output)["results"]["orbit_count"] == "4");
}
