#include "doctest.h"

#include "plumb/cli.hpp"
#include "plumb/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace plumb;
using Json = nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("plumb_zhat_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

JobSpec seifert_job(const std::string& text) {
  JobSpec job;
  job.seifert = text;
  return job;
}

}  // namespace

TEST_CASE("compute") {
  JobSpec job = seifert_job("M(2; 2/1, 3/1, 2/1)");
  job.truncate = "3";
  const CommandResult r = run_command("compute", job);
  REQUIRE(r.exit_code == exit_code::ok);
  const Json j = Json::parse(r.output);
  CHECK(j.at("prefactor") == "-3/4");
  CHECK(j.at("H") == 8);
  CHECK(j.at("series").at("truncation") == "9/4");
  CHECK(j.at("series").at("terms").at(0).at("q") == "-3/8");

  SUBCASE("text and csv") {
    job.format = OutputFormat::Text;
    CHECK(run_command("compute", job).output.find("q^(-3/8) * (1/2*t^-2 - 1 + 1/2*t^2)") != std::string::npos);
    job.format = OutputFormat::Csv;
    CHECK(run_command("compute", job).output.rfind("q,t,c\n-3/8,-2,1/2\n", 0) == 0);
  }
  SUBCASE("spin^c class and root of unity") {
    job.spinc = "0";
    job.t_root = 4;
    const Json k = Json::parse(run_command("compute", job).output);
    CHECK(k.at("series").at("t_modulus") == 4);
    job.spinc = "8";
    CHECK(run_command("compute", job).exit_code == exit_code::precondition);
    job.spinc = "x";
    CHECK(run_command("compute", job).exit_code == exit_code::parse_error);
  }
  SUBCASE("closed engine in both scales") {
    job.engine = "closed";
    const Json native = Json::parse(run_command("compute", job).output);
    CHECK(native.at("delta") == "-10/3");
    CHECK(native.at("mode") == "se");
    job.scale = "final";
    job.truncate = "20";
    const Json closed = Json::parse(run_command("compute", job).output);
    job.engine = "lattice";
    const Json lattice = Json::parse(run_command("compute", job).output);
    CHECK(closed.at("series") == lattice.at("series"));
  }
}

TEST_CASE("compare") {
  JobSpec job = seifert_job("M(2; 7/2, 3/1, 2/1)");
  job.truncate = "20";
  job.format = OutputFormat::Text;
  CommandResult r = run_command("compare", job);
  CHECK(r.exit_code == exit_code::ok);
  CHECK(r.output.find("EQUAL through q^(20)") != std::string::npos);

  job.family = "param:w3=1/4";
  CHECK(run_command("compare", job).exit_code == exit_code::ok);

  SUBCASE("a wrong explicit mode is reported as a mismatch") {
    job.family = "what";
    job.mode = "ae:1/4";
    CHECK(run_command("compare", job).exit_code == exit_code::mismatch);
  }
  SUBCASE("shaped graphs") {
    JobSpec g;
    g.input_path = write_temp("h.pg", "a -3; b -3; l1 -2; l2 -2; l3 -2; l4 -2\ne a b; e a l1; e a l2; e b l3; e b l4\n");
    g.family = "param:w3=1/4,w4=1/3";
    g.truncate = "10";
    const Json j = Json::parse(run_command("compare", g).output);
    CHECK(j.at("equal") == true);
    g.input_path = write_temp("chain.pg", "a -2; b -2; e a b");
    CHECK(run_command("compare", g).exit_code == exit_code::precondition);
  }
}

TEST_CASE("mismatch exit code") {
  // an explicit mode that does not belong to the family
  JobSpec job = seifert_job("M(2; 2/1, 3/1, 2/1)");
  job.family = "param:w3=1/4";
  job.mode = "se";
  job.truncate = "10";
  const CommandResult r = run_command("compare", job);
  CHECK(r.exit_code == exit_code::mismatch);
  const Json j = Json::parse(r.output);
  CHECK(j.at("equal") == false);
  CHECK(j.contains("first_difference"));
  job.format = OutputFormat::Text;
  CHECK(run_command("compare", job).output.find("MISMATCH at q^(") != std::string::npos);
}

TEST_CASE("modularity") {
  JobSpec job = seifert_job("M(2; 2/1, 3/1, 2/1)");
  job.t_root = 4;
  job.radial = "0";
  const Json j = Json::parse(run_command("modularity", job).output);
  CHECK(j.at("C").at("period") == 48);
  CHECK(j.at("D").at("parity") == "even");
  CHECK(j.at("Y_minus_X").size() == 1);
  CHECK(std::abs(j.at("radial_limit_C").at("estimate").at(0).get<double>() + 2.0) < 1e-8);

  job.format = OutputFormat::Csv;
  const std::string csv = run_command("modularity", job).output;
  CHECK(csv.rfind("n,C_re,C_im,D_re,D_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 49);

  job.t_root = 3;
  CHECK(run_command("modularity", job).exit_code == exit_code::precondition);
  job.t_root.reset();
  CHECK(run_command("modularity", job).exit_code == exit_code::precondition);
  JobSpec four = seifert_job("M(2; 2/1, 2/1, 2/1, 3/1)");
  four.t_root = 2;
  CHECK_THROWS_AS(cmd_modularity(four), PreconditionError);
  CHECK(run_command("modularity", four).exit_code == exit_code::precondition);
}

TEST_CASE("neumann-check") {
  JobSpec job = seifert_job("M(2; 2/1, 3/1, 2/1)");
  job.truncate = "10";
  job.moves = 8;
  job.seed = 7;
  const CommandResult r = run_command("neumann-check", job);
  CHECK(r.exit_code == exit_code::ok);
  const Json j = Json::parse(r.output);
  CHECK(j.at("result") == "PASS");
  CHECK(j.at("steps").size() == 8);
  CHECK(run_command("neumann-check", job).output == r.output);
}

TEST_CASE("input errors") {
  JobSpec none;
  CHECK(run_command("compute", none).exit_code == exit_code::parse_error);
  JobSpec both = seifert_job("M(2; 2/1, 3/1, 2/1)");
  both.input_path = "x";
  CHECK(run_command("compute", both).exit_code == exit_code::parse_error);
  JobSpec missing;
  missing.input_path = "/nonexistent/graph.pg";
  CHECK(run_command("compute", missing).exit_code == exit_code::parse_error);
  JobSpec bad_graph;
  bad_graph.input_path = write_temp("bad.pg", "v a -2\nv b oops\n");
  const CommandResult r = run_command("compute", bad_graph);
  CHECK(r.exit_code == exit_code::parse_error);
  CHECK(r.output.find("line 2") != std::string::npos);
  JobSpec cyclic;
  cyclic.input_path = write_temp("cycle.pg", "a -2; b -2; c -2; e a b; e b c; e c a");
  CHECK(run_command("compute", cyclic).exit_code == exit_code::precondition);
  JobSpec indefinite = seifert_job("M(1; 2/1, 3/1, 5/1)");
  CHECK(run_command("compute", indefinite).exit_code == exit_code::precondition);
  JobSpec bad_n = seifert_job("M(2; 2/1, 3/1, 2/1)");
  bad_n.truncate = "-1";
  CHECK(run_command("compute", bad_n).exit_code == exit_code::parse_error);
  bad_n.truncate = "1/0";
  CHECK(run_command("compute", bad_n).exit_code == exit_code::parse_error);
  JobSpec bad_family = seifert_job("M(2; 2/1, 3/1, 2/1)");
  bad_family.family = "nope";
  CHECK(run_command("compute", bad_family).exit_code == exit_code::parse_error);
  JobSpec high_degree = seifert_job("M(3; 2/1, 2/1, 3/1, 3/1, 2/1)");
  high_degree.family = "param:w3=1/4";
  CHECK(run_command("compute", high_degree).exit_code == exit_code::precondition);
  CHECK(run_command("frobnicate", JobSpec{}).exit_code == exit_code::parse_error);
  CHECK_THROWS_AS(parse_format("xml"), ParseError);
}
