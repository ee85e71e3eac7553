#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "corrlab/cli.hpp"
#include "corrlab/io.hpp"

using namespace corrlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("corrlab-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) { return read_text_file(path); }

std::string field_of(const std::string& text, bool corr = false) {
  try {
    if (corr) {
      parse_corrigibility_scenario(text);
    } else {
      parse_game_json(text);
    }
  } catch (const ParseError& e) {
    return e.field();
  }
  return "";
}

const char* kAdversaryScenario = R"({
  "belief": [
    {"game": {"kind": "symmetric", "row": [4, 3, 2, 1]}, "weight": 0.5},
    {"game": {"kind": "symmetric", "row": [2, 4, 3, 1]}, "weight": 0.5}
  ],
  "p": 1
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("game file examples") {
  CHECK(parse_game_json(R"({"kind":"symmetric","row":[4,3,2,1]})") == expand_symmetric({{4, 3, 2, 1}}));
  const Bimatrix harmonic = parse_game_json(R"({"kind":"reduced","row":[2,3,4,1],"col":[3,2,1,4]})");
  CHECK(harmonic == expand(ReducedGame::Split({2, 3, 4, 1}, {3, 2, 1, 4})));
  CHECK(classify(harmonic) == GameClass::kHarmonic);
  CHECK(parse_game_json(R"({"kind":"reduced","row":[3,4,1,2]})") == expand(ReducedGame::Shared({3, 4, 1, 2})));
  const Bimatrix big = parse_game_json(R"({"kind":"bimatrix","payoffs":[[[1,2],[3,4],[5,6]],[[0,0],[1,1],[2,2]]]})");
  CHECK(big.rows() == 2);
  CHECK(big.cols() == 3);
  CHECK(big(0, 2) == PayoffPair{5, 6});
  CHECK(parse_game_json(game_to_json(big)) == big);
}

TEST_CASE("malformed game files name the field") {
  CHECK(field_of(R"({"kind":"triangle","row":[1,2,3,4]})") == "game.kind");
  CHECK(field_of(R"({"row":[1,2,3,4]})") == "game.kind");
  CHECK(field_of(R"({"kind":"symmetric","row":[1,2,3]})") == "game.row");
  CHECK(field_of(R"({"kind":"symmetric","row":[1,2,"x",4]})") == "game.row[2]");
  CHECK(field_of(R"({"kind":"symmetric","row":[1,2,3,4],"colour":1})") == "game.colour");
  CHECK(field_of(R"({"kind":"bimatrix","payoffs":[[[1,2],[3]]]})") == "game.payoffs[0][1]");
  CHECK(field_of(R"({"kind":"bimatrix","payoffs":[[[1,2]],[[1,2],[3,4]]]})") == "game.payoffs[1]");
  CHECK(field_of(R"({"kind":"symmetric","row":[1,2,3,1e999]})") != "");
  CHECK(field_of(R"({"kind":"symmetric","row":[1,2,3,NaN]})") == "<document>");
  try {
    parse_game_json("{\n  \"kind\": \"symmetric\",\n  \"row\": [1, 2,, 4]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("named games") {
  CHECK(named_game("no-conflict") == SymmetricGame{{4, 3, 2, 1}});
  CHECK(named_game("battle-of-the-sexes") == SymmetricGame{{2, 4, 3, 1}});
  CHECK(named_game("hero") == SymmetricGame{{2, 3, 4, 1}});
  CHECK_FALSE(named_game("chicken").has_value());
  CHECK(resolve_game("hero") == expand_symmetric({{2, 3, 4, 1}}));
  CHECK_THROWS_AS(resolve_game((scratch() / "missing.json").string()), ParseError);
}

TEST_CASE("corrigibility scenario files") {
  const auto s = parse_corrigibility_scenario(R"({
    "belief": [{"game": {"kind": "reduced", "row": [3,4,1,2]}, "weight": 0.5},
               {"game": {"kind": "reduced", "row": [3,1,4,2]}, "weight": 0.5}],
    "p1": 1, "shared_p": true})");
  CHECK(s.belief.size() == 2);
  CHECK(s.rationality.shared);
  CHECK(s.rationality.p2 == 1.0);

  const std::string base = R"({"belief": [{"game": {"kind": "reduced", "row": [3,4,1,2]}, "weight": 1}], )";
  CHECK(field_of(base + R"("p1": 0.5})", true) == "p2");
  CHECK(field_of(base + R"("p1": 0.5, "p2": 0.4, "shared_p": true})", true) == "p2");
  CHECK(field_of(base + R"("p1": 1.5, "p2": 0.4})", true) == "p1");
  CHECK(field_of(R"({"belief": [{"game": {"kind": "reduced", "row": [3,4,1,2]}, "weight": 0.7}], "p1": 1, "p2": 1})", true) == "belief");
  CHECK(field_of(R"({"belief": [{"game": {"kind": "reduced", "row": [3,4,1,2]}}], "p1": 1, "p2": 1})", true) == "belief[0].weight");
  const auto independent = parse_corrigibility_scenario(base + R"("p1": 0.5, "p2": 0.25})");
  CHECK_FALSE(independent.rationality.shared);
}

TEST_CASE("adversary scenario files and flag conflicts") {
  const AdversaryScenarioFile file = parse_adversary_scenario(kAdversaryScenario);
  CHECK(file.p == 1.0);
  CHECK_FALSE(file.mode.has_value());
  CHECK(make_adversary_scenario(file).p == 1.0);
  CHECK(make_adversary_scenario(file, 1.0).p == 1.0);
  CHECK_THROWS_AS(make_adversary_scenario(file, 0.5), ParseError);

  AdversaryScenarioFile open = file;
  open.p.reset();
  CHECK(make_adversary_scenario(open, 0.25).p == 0.25);
  CHECK_THROWS_AS(make_adversary_scenario(open), ParseError);

  const auto fixed = parse_adversary_scenario(R"({"belief": [{"game": {"kind":"symmetric","row":[4,3,2,1]}, "weight": 1}],
                                                 "p": 0.5, "adv_mode": {"fixed": [0.25, 0.75]}})");
  REQUIRE(fixed.mode.has_value());
  CHECK(fixed.mode->fixed == MixedStrategy({0.25, 0.75}));
  CHECK_THROWS_AS(make_adversary_scenario(fixed, std::nullopt, AdversaryMode::NashPerGame()), ParseError);
  CHECK_THROWS_AS(parse_adversary_scenario(R"({"belief": [{"game": {"kind":"reduced","row":[1,2,3,4],"col":[1,1,1,1]}, "weight": 1}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_adversary_scenario(R"({"belief": [{"game": {"kind":"symmetric","row":[1,2,3,4]}, "weight": 1}], "adv_mode": "greedy"})"),
                  ParseError);
}

TEST_CASE("adv-check on a p=1 non-delta scenario asks") {
  const Result r = invoke({"adv-check", "--belief", write_temp("adv.json", kAdversaryScenario)});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"ineq1\":true,\"ineq2\":true,\"ask\":true}\n");

  const Result conflict = invoke({"adv-check", "--belief", write_temp("adv.json", kAdversaryScenario), "--p", "0.3"});
  CHECK(conflict.code == 1);
  CHECK(conflict.err.find("p:") != std::string::npos);

  const std::string out = (scratch() / "check.json").string();
  CHECK(invoke({"adv-check", "--belief", write_temp("adv.json", kAdversaryScenario), "--out", out}).code == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["ask"] == true);
  CHECK(doc["incentive"] == nlohmann::json::array({0, 0, 1}));
}

TEST_CASE("adv-check on 3x3 scenarios reports one check per direct action") {
  const std::string path = write_temp("adv3.json", R"({"belief": [
      {"game": {"kind":"bimatrix","payoffs":[[[9,9],[1,2],[3,4]],[[2,1],[8,8],[5,6]],[[4,3],[6,5],[7,7]]]}, "weight": 0.5},
      {"game": {"kind":"bimatrix","payoffs":[[[1,1],[9,2],[3,4]],[[2,9],[5,5],[8,6]],[[4,3],[6,8],[7,7]]]}, "weight": 0.5}],
      "p": 1, "adv_mode": {"fixed": [0.3, 0.3, 0.4]}})");
  const Result r = invoke({"adv-check", "--belief", path});
  CHECK(r.code == 0);
  const auto summary = nlohmann::json::parse(r.out);
  CHECK(summary["checks"].size() == 3);
}

TEST_CASE("offswitch summary") {
  const Result r = invoke({"offswitch", "--mu", "0", "--sigma", "1", "--beta", "0"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["strategy"] == nlohmann::json::array({0.0, 0.0, 1.0}));
  CHECK(j["p_r"] == 1.0);
  CHECK(j["expected"][2].get<double>() == doctest::Approx(0.3989422804014327));
  CHECK(r.out.find('\n') == r.out.size() - 1);
  CHECK(invoke({"offswitch", "--sigma", "0"}).code == 1);
}

TEST_CASE("corr-sweep writes CSV, JSON and SVG artifacts") {
  const std::string csv = (scratch() / "corr.csv").string();
  const Result r = invoke({"corr-sweep", "--game1", "no-conflict", "--game2", "hero", "--resolution", "2", "--out", csv});
  CHECK(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  CHECK(nlohmann::json::parse(r.out)["cells"] == 4);

  const std::string json_path = (scratch() / "corr.json").string();
  CHECK(invoke({"corr-sweep", "--game1", "no-conflict", "--game2", "hero", "--resolution", "3", "--out", json_path}).code == 0);
  CHECK(read_grid_json(slurp(json_path)).cells.size() == 9);

  const std::string svg = (scratch() / "corr.out").string();
  CHECK(invoke({"corr-sweep", "--game1", "no-conflict", "--game2", "hero", "--resolution", "3", "--out", svg,
             "--format", "svg", "--render", "binary"}).code == 0);
  CHECK(slurp(svg).find("<svg") != std::string::npos);
  CHECK(invoke({"corr-sweep", "--game1", "no-conflict", "--game2", "hero", "--out", svg, "--format", "png"}).code == 1);
}

TEST_CASE("other commands") {
  const Result c = invoke({"classify", "--game", write_temp("h.json", R"({"kind":"reduced","row":[2,3,4,1],"col":[3,2,1,4]})")});
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["class"] == "harmonic");

  const Result s = invoke({"solve", "--game", "battle-of-the-sexes"});
  CHECK(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["n_equilibria"] == 3);

  const Result v = invoke({"solve", "--belief", write_temp("corr.json", R"({
    "belief": [{"game": {"kind": "reduced", "row": [3,4,1,2]}, "weight": 0.5},
               {"game": {"kind": "reduced", "row": [3,1,4,2]}, "weight": 0.5}],
    "p1": 1, "p2": 1})")});
  CHECK(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["corrigible"] == true);

  const Result a = invoke({"adv-sweep", "--game1", "no-conflict", "--game2", "battle-of-the-sexes", "--resolution", "5"});
  CHECK(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["corrigible_cells"].get<int>() > 0);
  CHECK(invoke({"adv-sweep", "--game1", "no-conflict", "--game2", "hero", "--adv-mode", "fixed:0.5,0.5", "--resolution", "3"}).code == 0);
  CHECK(invoke({"adv-sweep", "--game1", "no-conflict", "--game2", "hero", "--adv-mode", "fixed:0.5,x"}).code == 1);
}

TEST_CASE("exit codes") {
  const Result bad_kind = invoke({"solve", "--game", write_temp("bad.json", R"({"kind":"weird"})")});
  CHECK(bad_kind.code == 1);
  CHECK(bad_kind.err.find("kind") != std::string::npos);

  std::string five = R"({"kind":"bimatrix","payoffs":[)";
  for (int i = 0; i < 5; ++i) five += std::string(i ? "," : "") + "[[0,0],[0,0],[0,0],[0,0],[0,0]]";
  five += "]}";
  CHECK(invoke({"solve", "--game", write_temp("five.json", five)}).code == 2);
  CHECK(invoke({"corr-sweep", "--game1", "hero", "--game2", "hero", "--resolution", "100000"}).code == 2);

  const Result low = invoke({"corr-sweep", "--game1", "hero", "--game2", "hero", "--resolution", "1"});
  CHECK(low.code == 1);
  CHECK(low.err.find("--resolution") != std::string::npos);
  CHECK(invoke({"solve", "--game", "hero", "--tol", "0"}).code == 1);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"classify"}).code == 1);
  CHECK(invoke({"classify", "--game", "nowhere.json"}).err.find("--game") != std::string::npos);
}

TEST_CASE("ensemble-sweep artifacts are reproducible") {
  const std::string csv1 = (scratch() / "e1.csv").string(), csv2 = (scratch() / "e2.csv").string();
  const std::string svg1 = (scratch() / "e1.svg").string(), svg2 = (scratch() / "e2.svg").string();
  for (const auto& [csv, svg] : {std::pair{csv1, svg1}, std::pair{csv2, svg2}}) {
    CHECK(invoke({"ensemble-sweep", "--resolution", "5", "--max-pairs", "40", "--seed", "9", "--out", csv}).code == 0);
    CHECK(invoke({"ensemble-sweep", "--resolution", "5", "--max-pairs", "40", "--seed", "9", "--out", svg}).code == 0);
  }
  CHECK(slurp(csv1) == slurp(csv2));
  CHECK(slurp(svg1) == slurp(svg2));
  CHECK(invoke({"ensemble-sweep", "--resolution", "3", "--game", "hero", "--game", "no-conflict", "--game",
             "battle-of-the-sexes"}).code == 0);
}

}  // TEST_SUITE
