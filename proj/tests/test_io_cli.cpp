#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "cmdp/io.hpp"
#include "known_codes.hpp"

using namespace cmdp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cmdp_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("element text forms") {
  auto f = Field::make(2, 7);
  CHECK(element_from_json(*f, json("a^2+a+1")) == 7);
  CHECK(element_from_json(*f, json("α^6+α")) == 66);
  CHECK(element_from_json(*f, json("x^3 + 1")) == 9);
  CHECK(element_from_json(*f, json(5)) == 5);
  CHECK(element_json(*f, 7, {true}) == json("α^2+α+1"));
  CHECK(element_json(*f, 7) == json(7));
  CHECK_THROWS_AS(element_from_json(*f, json(128)), std::invalid_argument);
  CHECK_THROWS_AS(element_from_json(*f, json("a^7")), std::invalid_argument);
  CHECK_THROWS_AS(element_from_json(*f, json("b")), std::invalid_argument);
  auto f9 = Field::make(3, 2);
  CHECK(element_from_json(*f9, json("2a+1")) == 7);
}

TEST_CASE("code formats round-trip") {
  for (const char* text : {known::f13_mdp, known::f7_two, known::f16_three}) {
    const auto c = known::code(text);
    const std::string t(text);
    CHECK(inline_code(c) == Field::parse(t.substr(0, t.find(';')))->to_string() + t.substr(t.find(';')));
    CHECK(code_from_json(code_to_json(c)) == c);
    CHECK(code_from_json(code_to_json(c, {true})) == c);
    CHECK(code_from_json(json::parse(code_to_json(c).dump())) == c);
  }
  const auto j = code_to_json(known::code(known::f13_mdp));
  CHECK(j.dump() == R"({"H":[[1,1],[1,12],[2,2]],"delta":2,"field":"13^1/13","k":1,"n":2})");
  CHECK_THROWS_AS(code_from_json(json{{"field", "13"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_inline_code("13;2,1;1,1"), std::invalid_argument);
  CHECK_THROWS_AS(load_code("/nonexistent/file.json"), std::invalid_argument);
  const auto path = temp_path("code.json");
  write(path, j.dump());
  CHECK(load_code(path) == known::code(known::f13_mdp));
  CHECK(load_code(j.dump()) == known::code(known::f13_mdp));
}

TEST_CASE("stream and report round-trips") {
  const auto code = known::code(known::f13_mdp);
  std::mt19937_64 rng(1);
  const auto word = CodewordSampler(code, 5).sample(rng);
  const auto s = apply_pattern(word, parse_pattern("xx|x.|xx|..|.."));
  const auto sj = stream_to_json(code, s);
  const auto back = stream_from_json(json::parse(sj.dump()));
  CHECK(back.code == code);
  CHECK(back.stream.symbols == s.symbols);
  CHECK(back.stream.terminated);

  const auto rep = decode_low_delay(code, s, 4, false, true);
  const auto rj = to_json(rep, code);
  const auto rback = decode_report_from_json(json::parse(rj.dump()), *code.field());
  CHECK(to_json(rback, code) == rj);
  CHECK(rj.at("max_delay") == 4);

  const auto prop = is_complete_j_mdp(known::code(known::f5_one), 1);
  CHECK(to_json(property_report_from_json(to_json(prop))) == to_json(prop));

  SearchSpec spec;
  spec.field = Field::parse("8");
  spec.j = 2;
  const auto sr = exhaustive_search(spec);
  const auto sj2 = to_json(sr, *spec.field);
  CHECK(to_json(search_report_from_json(json::parse(sj2.dump()), *spec.field), *spec.field) == sj2);
  CHECK_FALSE(sj2.contains("elapsed_ms"));
  CHECK(to_json(sr, *spec.field, {}, true).contains("elapsed_ms"));
  // α strings read back to the same values
  CHECK(search_report_from_json(to_json(sr, *spec.field, {true}), *spec.field).solutions == sr.solutions);
  const auto csv = solutions_csv(sr, *spec.field);
  CHECK(csv.rfind("a,b,c,d\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 127);
}

TEST_CASE("cli: search and determinism") {
  const auto a = cli({"search", "--field", "13", "--n", "2", "--k", "1", "--delta", "2", "--j", "4"});
  CHECK(a.code == 0);
  const auto j = json::parse(a.out);
  CHECK(j.at("count") == 24);
  CHECK(j.at("solutions").size() == 24);
  CHECK(cli({"search", "--field", "13", "--j", "4"}).out == a.out);
  const auto r1 = cli({"search", "--field", "16", "--j", "2", "--mode", "random", "--trials", "500", "--seed", "3"});
  const auto r2 = cli({"search", "--field", "16", "--j", "2", "--mode", "random", "--trials", "500", "--seed", "3"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(json::parse(r1.out).at("seed") == 3);
  const auto t = cli({"search", "--field", "5", "--j", "1", "--threads", "2"});
  CHECK(t.out == cli({"search", "--field", "5", "--j", "1"}).out);
  const auto csv = temp_path("sol.csv");
  CHECK(cli({"search", "--field", "8", "--j", "2", "--alpha", "--out", csv}).code == 0);
  std::ifstream in(csv);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "a,b,c,d");
  CHECK(first.find("α") != std::string::npos);
  CHECK(cli({"search", "--field", "8", "--j", "2", "--csv"}).out.rfind("a,b,c,d\n", 0) == 0);
  CHECK(cli({"search", "--field", "13", "--j", "1", "--timing"}).out.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("cli: check and distance") {
  const auto path = temp_path("f7_12155.json");
  write(path, code_to_json(known::code(known::f7_two)).dump());
  auto r = cli({"check", "--code", path, "--property", "complete-j-mdp", "--j", "2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("holds") == true);
  r = cli({"check", "--code", path, "--property", "complete-j-mdp", "--j", "3", "--assert"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out).at("holds") == false);
  r = cli({"check", "--code", known::f13_mdp, "--property", "mdp", "--assert"});
  CHECK(r.code == 0);
  r = cli({"check", "--code", known::f13_mdp, "--property", "reverse-mdp"});
  CHECK(json::parse(r.out).at("holds") == true);
  r = cli({"check", "--code", known::f13_mdp, "--property", "column-distance", "--j", "3"});
  CHECK(json::parse(r.out).at("distance") == 5);
  r = cli({"check", "--code", "2;2,1,2;1,1|1,1|1,1", "--property", "mdp"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("holds") == false);
  r = cli({"distance", "--code", known::f13_mdp, "--j", "4"});
  CHECK(json::parse(r.out).at("distance") == 6);
  CHECK(json::parse(r.out).at("bound") == 6);
  CHECK(cli({"check", "--code", known::f13_mdp, "--pretty"}).out.find("holds: true") != std::string::npos);
}

TEST_CASE("cli: decode, simulate, gen-pattern, verify-family") {
  const auto code = known::code(known::f5_zero);
  std::mt19937_64 rng(4);
  const auto pat = parse_pattern("x.|.x|x.|xx|x.|..|..|x.|.x");
  const auto s = apply_pattern(CodewordSampler(code, pat.steps()).sample(rng), pat);
  const auto path = temp_path("stream.json");
  write(path, stream_to_json(code, s).dump());
  auto r = cli({"decode", "--stream", path, "--algo", "windowed"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("lost") == json({6, 7}));
  r = cli({"decode", "--stream", path, "--algo", "low-delay", "--delay", "2", "--trace"});
  CHECK(json::parse(r.out).contains("attempts"));
  r = cli({"decode", "--stream", path, "--algo", "oracle", "--code", known::f5_zero});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("complete") == true);
  r = cli({"decode", "--stream", path, "--code", "5;3,1,2;1,1,1,1,1,1|1,2,3,4,1,2"});
  CHECK(r.code == 2);

  const std::vector<std::string> sim{"simulate", "--code",  known::f13_mdp, "--steps", "20",   "--pattern", "iid:0.2",
                                     "--seed",   "7",       "--algo",       "windowed", "--trials", "30"};
  const auto s1 = cli(sim);
  CHECK(s1.code == 0);
  CHECK(s1.out == cli(sim).out);
  CHECK(json::parse(s1.out).at("value_mismatches") == 0);

  r = cli({"gen-pattern", "--spec", "burst:4:2", "--length", "18", "--n", "2"});
  CHECK(r.out == "..|..|xx|..|..|..|..|..|..\n");
  CHECK(cli({"gen-pattern", "--spec", "iid:0.5", "--length", "20", "--seed", "9"}).out ==
        cli({"gen-pattern", "--spec", "iid:0.5", "--length", "20", "--seed", "9"}).out);

  r = cli({"verify-family", "--field", "13", "--assert"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("holds") == true);
}

TEST_CASE("cli: validation errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"search", "--field", "12", "--j", "1"}).code == 2);
  CHECK(cli({"search", "--field", "13", "--j", "9"}).code == 2);
  CHECK(cli({"check", "--code", "nonsense"}).code == 2);
  CHECK(cli({"check", "--code", known::f13_mdp, "--property", "bogus"}).code == 2);
  CHECK(cli({"verify-family", "--field", "11"}).code == 2);
  CHECK(cli({"gen-pattern", "--spec", "iid:2", "--length", "4"}).code == 2);
  CHECK(cli({"decode", "--stream", "/nonexistent.json"}).code == 2);
  const auto r = cli({"search", "--field", "abc", "--j", "1"});
  CHECK(r.err.find("error:") == 0);
  CHECK(cli({"--help"}).code == 0);
}
