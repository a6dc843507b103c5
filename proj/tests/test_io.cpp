#include <doctest.h>

#include <filesystem>

#include "bethe/commands.hpp"
#include "fixtures.hpp"

using namespace bethe;
using fixtures::q;
using io::Json;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(BETHE_EXAMPLES_DIR) / name; }

}  // namespace

TEST_CASE("rationals from json") {
  CHECK(io::rational_from_json(Json("3/6")) == q(1, 2));
  CHECK(io::rational_from_json(Json("-7")) == -7);
  CHECK(io::rational_from_json(Json(4)) == 4);
  CHECK(io::rational_from_json(Json(0.25)) == q(1, 4));
  CHECK(io::rational_from_json(Json(0.1)) == q(1, 10));
  CHECK_THROWS_AS(io::rational_from_json(Json("1/0")), InvalidInput);
  CHECK_THROWS_AS(io::rational_from_json(Json("abc")), InvalidInput);
  CHECK_THROWS_AS(io::rational_from_json(Json::array()), InvalidInput);
  CHECK(io::complex_from_json(Json::parse("[1, -2]")) == Complex(1, -2));
  CHECK(io::complex_from_json(Json("1/4")) == Complex(0.25, 0));
}

TEST_CASE("arrangement round trip") {
  const WeightedArrangement a = fixtures::generic4_weighted();
  const Json j = io::arrangement_to_json(a);
  const WeightedArrangement b = io::arrangement_from_json(j);
  CHECK(io::arrangement_to_json(b) == j);
  CHECK(b.exact_exponents() == a.exact_exponents());

  const WeightedArrangement from_file = io::arrangement_from_json(io::read_file(data("generic_3_lines.json")));
  CHECK(from_file.size() == 3);
  CHECK(from_file.exact_exponents() == std::vector<Rational>{q(1, 2), q(1, 3), q(2, 7)});
}

TEST_CASE("gaudin round trip") {
  const GaudinProblem p = io::gaudin_from_json(io::read_file(data("sl2_two_spins.json")));
  CHECK(p.weights.size() == 2);
  REQUIRE(p.z_exact);
  CHECK(*p.z_exact == std::vector<Rational>{0, 1});
  const Json j = io::gaudin_to_json(p);
  CHECK(io::gaudin_to_json(io::gaudin_from_json(j)) == j);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(io::arrangement_from_json(io::read_file(data("malformed.json"))), InvalidInput);
  CHECK_THROWS_AS(io::read_file(data("does_not_exist.json")), InvalidInput);
  CHECK_THROWS(io::arrangement_from_json(Json::parse(R"({"dim": 2, "hyperplanes": []})")));
  CHECK_THROWS(io::arrangement_from_json(
      Json::parse(R"({"dim": 2, "hyperplanes": [{"b0": "0", "b": ["1"]}], "exponents": ["1"]})")));
  CHECK_THROWS(io::gaudin_from_json(Json::parse(R"({"cartan": {"rank": 1, "A": [[2]]}, "weights": [["1"]]})")));
}

TEST_CASE("commands") {
  RunConfig cfg;
  cfg.n_starts = 40;

  const CommandResult analyze = cmd_analyze(io::read_file(data("generic_3_lines.json")));
  CHECK(analyze.exit_code == kExitPass);
  CHECK(analyze.report["chi"] == 1);
  CHECK(analyze.report["nbc_matches_oracle"] == true);

  const CommandResult critical = cmd_critical(io::read_file(data("generic_4_lines.json")), cfg);
  CHECK(critical.exit_code == kExitPass);
  CHECK(critical.report["found"] == critical.report["chi"]);

  const CommandResult verify = cmd_verify(io::read_file(data("generic_3_lines.json")), cfg);
  CHECK(verify.exit_code == kExitPass);
  CHECK(verify.report["pass"] == true);

  const CommandResult again = cmd_verify(io::read_file(data("generic_3_lines.json")), cfg);
  CHECK(again.report.dump() == verify.report.dump());

  CHECK_THROWS_AS(cmd_critical(io::read_file(data("parallel_lines.json")), cfg), PreconditionViolation);

  const CommandResult gaudin = cmd_gaudin(io::read_file(data("sl2_two_spins.json")), cfg);
  CHECK(gaudin.exit_code == kExitPass);
  CHECK(gaudin.report["sing_dim"] == 1);

  RunConfig bad = cfg;
  bad.n_starts = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}
