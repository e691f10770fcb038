#include <doctest.h>

#include <sstream>

#include "report.hpp"

using namespace nkg::cli;

namespace {

RunConfig config(std::string command, std::string target, int k) {
  RunConfig c;
  c.command = std::move(command);
  c.target = std::move(target);
  c.k = k;
  return c;
}

std::string render(const Report& r, Format f) {
  std::ostringstream out;
  write_report(r, f, out);
  return out.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("caps refuse large k unless lifted") {
  RunConfig c = config("verify", "theorem3", 4);
  c.depth = Depth::kAcyclicity;
  CHECK_THROWS_AS(check_caps(c), Refusal);
  c.allow_large = true;
  CHECK_NOTHROW(check_caps(c));
  c.k = 7;
  CHECK_THROWS_AS(check_caps(c), Refusal);

  RunConfig t2 = config("verify", "theorem2", 3);
  CHECK_THROWS_AS(check_caps(t2), Refusal);
  RunConfig counts = config("verify", "theorem3", 5);
  counts.depth = Depth::kCounts;
  CHECK_NOTHROW(check_caps(counts));
  counts.k = 6;
  CHECK_THROWS_AS(check_caps(counts), Refusal);
  RunConfig snf = config("betti", "", 3);
  snf.depth = Depth::kFullSnf;
  CHECK_THROWS_AS(check_caps(snf), Refusal);
  CHECK_THROWS_AS(check_caps(config("build", "", -1)), Refusal);

  try {
    check_caps(t2);
  } catch (const Refusal& e) {
    CHECK(std::string(e.what()).find("--allow-large") != std::string::npos);
  }
}

TEST_CASE("unknown lemma is refused with the known names") {
  RunConfig c = config("verify", "lemma", 1);
  c.lemma = "no such lemma";
  try {
    check_caps(c);
    FAIL("expected a refusal");
  } catch (const Refusal& e) {
    CHECK(std::string(e.what()).find("c-matching") != std::string::npos);
  }
  c.lemma = "c-matching";
  CHECK_NOTHROW(check_caps(c));
  for (const std::string& name : lemma_names()) CHECK_FALSE(name.empty());
}

TEST_CASE("status line and JSON layout") {
  RunConfig c = config("verify", "all", 1);
  c.seed = 7;
  const Report r = run(c);
  CHECK(r.passed());
  CHECK_FALSE(r.elapsed_ms.has_value());
  const std::string text = render(r, Format::kText);
  CHECK(first_line(text) == "PASS");
  CHECK(first_line(render(r, Format::kCsv)) == "status,PASS");

  const std::string json = render(r, Format::kJson);
  CHECK(json.find('\n') == json.size() - 1);
  const Json j = Json::parse(json);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"command", "status", "k", "results", "seed", "elapsed_ms"});
  CHECK(j["status"] == "PASS");
  CHECK(j["k"] == 1);
  CHECK(j["seed"] == 7);
  CHECK(j["elapsed_ms"].is_null());
  CHECK(j["results"].size() == r.items.size());

  // Byte-identical output for a fixed seed.
  CHECK(render(run(c), Format::kJson) == json);

  c.timing = true;
  CHECK(run(c).elapsed_ms.has_value());
}

TEST_CASE("failed items are named on the first line") {
  Report r;
  r.command = "verify theorem2";
  r.items.push_back({"a-matching", true});
  r.items.push_back({"c-matching", false, Json::object(), "witness"});
  r.items.push_back({"c-matching", false});
  r.items.push_back({"b-matching", false});
  CHECK_FALSE(r.passed());
  CHECK(r.failures() == std::vector<std::string>{"c-matching", "b-matching"});
  CHECK(first_line(render(r, Format::kText)) == "FAIL: c-matching, b-matching");
  CHECK(Json::parse(render(r, Format::kJson))["status"] == "FAIL: c-matching, b-matching");
}

TEST_CASE("lemma filter") {
  RunConfig c = config("verify", "lemma", 2);
  c.lemma = "b-matching";
  const Report r = run(c);
  CHECK(r.passed());
  REQUIRE_FALSE(r.items.empty());
  for (const Item& i : r.items) CHECK(i.name == "b-matching");
}

TEST_CASE("build and betti reports") {
  RunConfig b = config("build", "", 0);
  const Report r = run(b);
  CHECK(r.passed());
  RunConfig h = config("betti", "", 0);
  h.kind = nkg::GraphKind::kKneser;
  const Json j = Json::parse(render(run(h), Format::kJson));
  CHECK(j["status"] == "PASS");
  CHECK(parse_depth("full-snf") == Depth::kFullSnf);
  CHECK(parse_format("csv") == Format::kCsv);
  CHECK_THROWS(parse_depth("deep"));
}

TEST_CASE("export") {
  RunConfig c = config("export", "", 0);
  c.what = "edges";
  std::ostringstream out;
  run_export(c, out);
  std::size_t lines = 0;
  for (char ch : out.str()) lines += ch == '\n';
  CHECK(lines >= 10);
}
