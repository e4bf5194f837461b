#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cubecat/cli.hpp"
#include "cubecat/corpus.hpp"

using namespace cubecat;

namespace {

RunConfig compute(const std::string& pd) {
  RunConfig c;
  c.subcommand = "compute";
  c.pd = pd;
  return c;
}

}  // namespace

TEST_CASE("compute emits a homology table") {
  const RunOutput r = run_capture(compute("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"));
  REQUIRE(r.status == kExitOk);
  const auto j = nlohmann::json::parse(r.json);
  CHECK(j["theory"] == "kh");
  CHECK(j["coefficients"] == "Z");
  CHECK(j["entries"].size() == 5);
  CHECK(j["euler"]["-9"] == -1);
}

TEST_CASE("validation errors exit with status 1") {
  CHECK(run_capture(compute("")).status == kExitInvalid);
  CHECK(run_capture(compute("X[1,2,3")).status == kExitInvalid);
  RunConfig bad_theory = compute("Loop[1]");
  bad_theory.theory = "even";
  CHECK(run_capture(bad_theory).status == kExitInvalid);
  RunConfig bad_coeff = compute("Loop[1]");
  bad_coeff.coefficients = "F4";
  CHECK(run_capture(bad_coeff).status == kExitInvalid);
  RunConfig two_inputs = compute("Loop[1]");
  two_inputs.file = "somewhere.pd";
  CHECK(run_capture(two_inputs).status == kExitInvalid);
  RunConfig no_input;
  no_input.subcommand = "compute";
  CHECK(run_capture(no_input).status == kExitInvalid);
  RunConfig face = compute("X[1,4,2,3];X[3,2,4,1]");
  face.outer_face = 99;
  CHECK(run_capture(face).status == kExitInvalid);
  RunConfig sub;
  sub.subcommand = "frobnicate";
  CHECK(run_capture(sub).status == kExitInvalid);
  RunConfig thm = compute("Loop[1]");
  thm.subcommand = "verify";
  thm.theorem = "3";
  CHECK(run_capture(thm).status == kExitInvalid);
}

TEST_CASE("corpus files") {
  const LinkDiagram d = parse_pd_file_text("# comment\norient: numbering\nX[2,3,4,1];\nX[4,3,2,1]\n");
  CHECK(d.crossing_count() == 2);
  CHECK_THROWS_AS(parse_pd_file_text("orient: sideways\nLoop[1]"), ParseError);

  const auto dir = std::filesystem::temp_directory_path() / "cubecat_cli_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "b.pd") << "X[1,4,2,3];X[3,2,4,1]\n";
  std::ofstream(dir / "a.pd") << "# unknot\nLoop[1]\n";
  std::ofstream(dir / "ignored.txt") << "not a diagram\n";
  const auto entries = load_corpus(dir);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].name == "a");
  CHECK(entries[1].name == "b");

  RunConfig v;
  v.subcommand = "verify";
  v.theorem = "1";
  v.file = dir.string();
  const RunOutput one = run_capture(v);
  v.jobs = 2;
  const RunOutput two = run_capture(v);
  CHECK(one.status == kExitOk);
  CHECK(one.json == two.json);
  const auto j = nlohmann::json::parse(one.json);
  CHECK(j["results"].size() == 2);
  CHECK(j["results"][0]["name"] == "a");

  RunConfig out = compute("Loop[1]");
  out.output = (dir / "out.json").string();
  std::ostringstream so, se;
  CHECK(run(out, so, se) == kExitOk);
  CHECK(so.str().empty());
  std::ifstream in(dir / "out.json");
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == run_capture(compute("Loop[1]")).json);
  std::filesystem::remove_all(dir);
}

TEST_CASE("euler, relations and signs subcommands") {
  RunConfig e = compute("X[1,4,2,3];X[3,2,4,1]");
  e.subcommand = "euler";
  e.theory = "all";
  const RunOutput r = run_capture(e);
  CHECK(r.status == kExitOk);
  CHECK(nlohmann::json::parse(r.json)["match"] == true);

  RunConfig rel;
  rel.subcommand = "verify-relations";
  rel.theory = "nested";
  CHECK(run_capture(rel).status == kExitOk);

  RunConfig s = compute("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]");
  s.subcommand = "verify";
  s.theorem = "signs";
  s.theory = "odd";
  s.trials = 5;
  s.seed = 3;
  const RunOutput a = run_capture(s);
  CHECK(a.status == kExitOk);
  CHECK(a.json == run_capture(s).json);
}

TEST_CASE("dump options") {
  RunConfig c = compute("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]");
  c.dump_cube = true;
  c.dump_states = true;
  const auto j = nlohmann::json::parse(run_capture(c).json);
  CHECK(j["cube"]["vertices"].size() == 8);
  CHECK(j["cube"]["edges"].size() == 12);
  CHECK(j["states"]["states"].size() == 8);
}
