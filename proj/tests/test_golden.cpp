#include "doctest.h"

#include "plumb/cli.hpp"
#include "plumb/series.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

using namespace plumb;
using Json = nlohmann::json;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(PLUMB_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

JobSpec job_from(const Json& g) {
  JobSpec job;
  job.seifert = g.at("input").get<std::string>();
  job.family = g.at("family").get<std::string>();
  job.truncate = g.at("truncate").get<std::string>();
  job.scale = g.at("scale").get<std::string>();
  return job;
}

}  // namespace

TEST_CASE("golden series: closed engine output is stable, lattice engine agrees") {
  for (const char* name : {"m2_2_3_2_what_n50.json", "m2_2_2_2_3_what_n30.json", "m2_72_3_2_what_n30.json",
                           "m2_2_3_2_w3q_n30.json"}) {
    CAPTURE(name);
    const std::string text = read_golden(name);
    const Json golden = Json::parse(text);
    const TwoVarSeries expected = series_from_json(golden.at("series").dump());

    JobSpec job = job_from(golden);
    job.engine = "closed";
    const CommandResult closed = cmd_compute(job);
    CHECK(closed.exit_code == exit_code::ok);
    CHECK(closed.output == text);

    job.engine = "lattice";
    const CommandResult lattice = cmd_compute(job);
    REQUIRE(lattice.exit_code == exit_code::ok);
    const TwoVarSeries got = series_from_json(Json::parse(lattice.output).at("series").dump());
    const Rational n = parse_rational(golden.at("truncate").get<std::string>());
    CHECK(compare(got, expected, n).equal);
  }
}

TEST_CASE("golden modularity data") {
  const std::string text = read_golden("m2_2_3_2_modularity_2j4.json");
  JobSpec job;
  job.seifert = "M(2; 2/1, 3/1, 2/1)";
  job.t_root = 4;
  CHECK(cmd_modularity(job).output == text);

  const Json g = Json::parse(text);
  CHECK(g.at("C").at("period") == 48);
  CHECK(g.at("C_odd") == true);
  CHECK(g.at("C_mean_zero") == true);
  CHECK(g.at("D_even") == true);
  CHECK(g.at("support").at("residue") == 16);
  const TwoVarSeries p1 = series_from_json(g.at("p1_symbolic").dump());
  TwoVarSeries expected;
  expected.add_term(Rational(1, 3), TLaurent::monomial(2, 1) + TLaurent::monomial(-2, 1));
  CHECK(p1 == expected);
}
