#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(SUMSET_TEST_DATA) + "/" + name; }

Result sumset_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sumset::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("khovanskii subcommand") {
  const auto r = sumset_run({"khovanskii", "--input", data("a135.txt")});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["polynomial"]["text"] == "5*X - 5");
  CHECK(j["polynomial"]["coefficients"] == nlohmann::json::array({"-5", "5"}));
  CHECK(j["threshold"] == 3);
  CHECK(j["status"] == "exact");
  CHECK(j["bounds"]["improved"] == "43");
  CHECK(j["minimal_set"]["elements"] == nlohmann::json::parse("[[2, 0, 3]]"));
}

TEST_CASE("growth table") {
  auto r = sumset_run({"growth", "--input", data("square.txt"), "--max-n", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "n,cardinality\n1,4\n2,9\n3,16\n4,25\n");
  r = sumset_run({"growth", "--input", data("a135.json"), "--max-n", "3"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  REQUIRE(j["growth"].size() == 3);
  CHECK(j["growth"][2]["cardinality"] == 10);
  r = sumset_run({"growth", "--input", data("a135.txt"), "--max-n", "2", "--emit-points", "--format", "csv"});
  CHECK(r.out == "n,cardinality,points\n1,3,0;3;5\n2,6,0;3;5;6;8;10\n");
}

TEST_CASE("bounds subcommand") {
  const auto r = sumset_run({"bounds", "--input", data("a135.txt")});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["improved"] == "43");
  CHECK(j["gsw"]["base"] == "30");
  CHECK(j["gsw"]["exponent"] == 15);
  CHECK(j["bound_a"] == "25");
  CHECK(j["bound_b"] == "25");
}

TEST_CASE("structure and geometry subcommands") {
  auto r = sumset_run({"structure", "--input", data("square.txt")});
  REQUIRE(r.code == 0);
  CHECK(json_of(r)["threshold"] == 1);
  r = sumset_run({"structure", "--input", data("a135.txt"), "--max-n", "3", "--format", "csv"});
  CHECK(r.out == "n,holds,missing,extra\n1,true,0,0\n2,true,0,0\n3,true,0,0\n");
  r = sumset_run({"circuits", "--input", data("square.json")});
  REQUIRE(r.code == 0);
  CHECK(json_of(r)["circuits"] == nlohmann::json::parse("[[1, -1, -1, 1]]"));
  r = sumset_run({"triangulate", "--input", data("square.txt")});
  REQUIRE(r.code == 0);
  CHECK(json_of(r)["simplices"].size() == 2);
}

TEST_CASE("analyze and verify") {
  auto r = sumset_run({"analyze", "--input", data("a135.txt")});
  REQUIRE(r.code == 0);
  auto j = json_of(r);
  CHECK(j["khovanskii"]["threshold"] == 3);
  CHECK(j["structure"]["threshold"] == 1);
  CHECK_FALSE(j.contains("timing"));
  r = sumset_run({"analyze", "--input", data("a135.txt"), "--timing"});
  CHECK(json_of(r).contains("timing"));
  r = sumset_run({"verify", "--input", data("a135.txt")});
  CHECK(r.code == 0);
  j = json_of(r);
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
}

TEST_CASE("output is deterministic and independent of the input format") {
  const auto a = sumset_run({"analyze", "--input", data("a135.txt")});
  const auto b = sumset_run({"analyze", "--input", data("a135.txt")});
  const auto c = sumset_run({"analyze", "--input", data("a135.json")});
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const auto s = sumset_run({"khovanskii", "--input", data("square.txt"), "--format", "text"});
  const auto t = sumset_run({"khovanskii", "--input", data("square.json"), "--format", "text"});
  CHECK(s.out == t.out);
  CHECK(s.out.find("polynomial/text = X^2 + 2*X + 1\n") != std::string::npos);
  const auto csv = sumset_run({"bounds", "--input", data("square.txt"), "--format", "csv"});
  CHECK(csv.out.find("bound_b,3\n") != std::string::npos);
}

TEST_CASE("huge coordinates survive the pipeline") {
  const auto r = sumset_run({"circuits", "--input", data("huge.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("123456789012345678901234567890") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(sumset_run({"--help"}).code == 0);
  CHECK(sumset_run({}).code == 1);
  CHECK(sumset_run({"frobnicate"}).code == 1);
  CHECK(sumset_run({"growth", "--input", data("a135.txt"), "--bogus"}).code == 1);
  CHECK(sumset_run({"growth"}).code == 1);
  CHECK(sumset_run({"growth", "--input", data("a135.txt"), "--format", "xml"}).code == 1);
  auto r = sumset_run({"analyze", "--input", data("missing.txt")});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  CHECK(sumset_run({"analyze", "--input", data("ragged.txt")}).code == 1);
  CHECK(sumset_run({"analyze", "--input", data("duplicate.txt")}).code == 1);
  CHECK(sumset_run({"analyze", "--input", data("point.txt")}).code == 2);
  CHECK(sumset_run({"analyze", "--input", data("a135.txt"), "--pivot", "3"}).code == 2);
  CHECK(sumset_run({"analyze", "--input", data("a135.txt"), "--pivot", "0,0"}).code == 2);
  r = sumset_run({"structure", "--input", data("a135.txt"), "--cap-points", "10"});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  r = sumset_run({"structure", "--input", data("a135.txt"), "--cap-points", "200"});
  CHECK(r.code == 3);
  CHECK(json_of(r)["status"] == "empirical");
  CHECK(json_of(r)["window_end"] == 5);
  r = sumset_run({"analyze", "--input", data("a135.txt"), "--cap-points", "10"});
  CHECK(r.code == 3);
  CHECK_FALSE(json_of(r)["incomplete"].empty());
}
