#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "radial/errors.hpp"
#include "radial/report.hpp"

using namespace radial;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "radial_report_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int runCli(const std::string& args) {
  const std::string cmd = std::string(RADIAL_CLI) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("CSV and JSON writers") {
  report::Table t{{"name", "value", "ok"}, {}};
  t.add({"plain", 1.5, true});
  t.add({"a,b", std::nan(""), json(nullptr)});
  t.add({"say \"hi\"", 1e-20, false});
  CHECK_THROWS_AS(t.add({1}), ParameterError);

  std::ostringstream csv;
  report::writeCsv(csv, t);
  CHECK(csv.str() ==
        "name,value,ok\n"
        "plain,1.5,true\n"
        "\"a,b\",nan,\n"
        "\"say \"\"hi\"\"\",1e-20,false\n");

  std::ostringstream js;
  report::writeJson(js, t, {{"note", "x"}});
  const auto j = json::parse(js.str());
  CHECK(j["columns"].size() == 3);
  CHECK(j["rows"][0]["value"] == 1.5);
  CHECK(j["rows"][1]["value"] == "nan");
  CHECK(j["note"] == "x");
  CHECK(report::parseFormat("json") == report::Format::Json);
  CHECK_THROWS_AS(report::parseFormat("xml"), ParameterError);
}

TEST_CASE("manifest lookup") {
  const auto m = report::Manifest::load(RADIAL_MANIFEST);
  CHECK_FALSE(m.scans().empty());
  const auto* bl = m.findScan(OperatorSpec(Family::BrokenLine, Dimension(3)));
  REQUIRE(bl != nullptr);
  CHECK(bl->expected(2.0) == Verdict::Bounded);
  CHECK(bl->expected(4.0) == Verdict::Divergent);
  CHECK_FALSE(bl->expected(7.0).has_value());
  CHECK(m.findScan(OperatorSpec(Family::BrokenLineISQ, Dimension(4), 1.25)) != nullptr);
  CHECK(m.findScan(OperatorSpec(Family::BrokenLineISQ, Dimension(4), 0.5)) == nullptr);
  const auto* h = m.findHodge(2.0 / 3.0);
  REQUIRE(h != nullptr);
  CHECK(h->expected(2.0) == Verdict::Bounded);
  CHECK(h->expected(4.0) == Verdict::Divergent);
  CHECK_THROWS_AS(report::Manifest::load("/nonexistent/manifest.json"), ParameterError);
  CHECK_THROWS_AS(report::Manifest::parse(json::parse(R"({"scans": 3})")), ParameterError);
}

TEST_CASE("scan table pass column") {
  ScanReport r;
  r.family = "RayNeumann";
  r.d = 2.0;
  r.p = 2.0;
  r.verdict = Verdict::Bounded;
  r.points = {{1e2, 1.0, "power"}, {1e3, 1.0, "power"}};
  report::ScanExpectation e;
  e.family = "RayNeumann";
  e.d = 2.0;
  e.bounded = {2.0};
  const auto t = report::scanTable({r}, &e);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.columns.back() == "pass");
  CHECK(t.rows[0].back() == true);
  const auto none = report::scanTable({r}, nullptr);
  CHECK(none.rows[0].back().is_null());
}

TEST_CASE("specfun table") {
  const auto t = report::specfunTable(Dimension(3), {0.5, 1.0});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.columns.size() == 10);
  CHECK(t.rows[1][1] == 1.0);
}

TEST_CASE("command line: exit codes") {
  CHECK(runCli("threshold-scan --family BrokenLine --d 3 --c 1 --p 2") == 2);
  CHECK(runCli("threshold-scan --family Nowhere --d 3 --p 2") == 2);
  CHECK(runCli("specfun-table --d 0.5") == 2);
  CHECK(runCli("threshold-scan --family HalfLineDirichlet --d 2 --p 2") == 2);
  CHECK(runCli("no-such-command") == 2);
  const auto out = scratch("specfun.csv");
  CHECK(runCli("specfun-table --d 2.5 --out " + out.string()) == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("d,r,k,l,", 0) == 0);
  CHECK(fs::exists(scratch("specfun_envelopes.csv")));
}

TEST_CASE("command line: seeded output is reproducible") {
  const auto a = scratch("kernel_a.json"), b = scratch("kernel_b.json");
  const std::string args = "riesz-kernel --family BrokenLine --d 3 --samples 6 --seed 17 --format json --out ";
  REQUIRE(runCli(args + a.string()) == 0);
  REQUIRE(runCli(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  const auto j = json::parse(slurp(a));
  CHECK(j["rows"].size() == 6);
  CHECK(j.contains("envelopes"));
}

TEST_CASE("command line: hodge check and a small scan against the manifest") {
  const auto h = scratch("hodge.json");
  CHECK(runCli("hodge-check --delta 0.6666666666666666,0.5 --p 2,4 --R 200 --format json --out " +
               h.string()) == 0);
  const auto j = json::parse(slurp(h));
  REQUIRE(j["rows"].size() == 4);
  for (const auto& row : j["rows"]) CHECK(row["pass"] == true);

  const auto s = scratch("scan.csv");
  CHECK(runCli("threshold-scan --family RayNeumann --d 2 --p 2 --R 100,1000,10000,100000 --out " +
               s.string()) == 0);
  CHECK(slurp(s).find("bounded") != std::string::npos);
}
