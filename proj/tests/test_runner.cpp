#include <set>
#include <sstream>

#include "coplanar/runner.hpp"
#include "doctest.h"

using namespace coplanar;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(COPLANAR_DATA_DIR) + "/" + name; }

std::string spec_error_path(const json& doc) {
  try {
    parse_spec(doc);
  } catch (const SpecError& e) {
    return e.path();
  }
  return "<accepted>";
}

bool suite_passes(const Report& r, const std::string& suite) {
  bool seen = false;
  for (const auto& rec : r.records)
    if (rec.suite == suite && !rec.skipped) {
      seen = true;
      if (!rec.pass && !rec.informational) return false;
    }
  return seen;
}

bool suite_skipped(const Report& r, const std::string& suite) {
  for (const auto& rec : r.records)
    if (rec.suite == suite) return rec.skipped;
  return false;
}

const json flip_doc = json::parse(R"({
  "algebra": {"blocks": [1, 1], "weights": [0.5, 0.5]},
  "hopf": {"kind": "function_algebra", "group": [[0, 1], [1, 0]]},
  "coaction": {"kind": "group_action", "maps": [{"permutation": [0, 1]}, {"permutation": [1, 0]}]}
})");

}  // namespace

TEST_CASE("malformed specs report the offending field") {
  json d = flip_doc;
  d["algebra"]["weights"] = {0.5, "x"};
  CHECK(spec_error_path(d) == "/algebra/weights/1");

  d = flip_doc;
  d["coaction"]["maps"][1] = {{"permutation", {0, 0}}};
  CHECK(spec_error_path(d) == "/coaction/maps/1/permutation");

  d = flip_doc;
  d["coaction"]["maps"].erase(1);
  CHECK(spec_error_path(d) == "/coaction/maps");

  d = flip_doc;
  d["hopf"].erase("group");
  CHECK(spec_error_path(d) == "/hopf");

  d = flip_doc;
  d["run"] = {{"suites", {"tower", "nope"}}};
  CHECK(spec_error_path(d) == "/run/suites/1");

  d = flip_doc;
  d["run"] = {{"n_max", 0}};
  CHECK(spec_error_path(d) == "/run/n_max");

  d = flip_doc;
  d["coaction"]["kind"] = "sideways";
  CHECK(spec_error_path(d) == "/coaction/kind");

  CHECK(spec_error_path(flip_doc) == "<accepted>");
}

TEST_CASE("n_max defaults by algebra dimension") {
  CHECK(parse_spec(flip_doc).run.n_max == 4);
  json d = json::parse(R"({"algebra": {"blocks": [2, 1], "weights": [0.2, 0.4, 0.4]}})");
  CHECK(parse_spec(d).run.n_max == 3);
}

TEST_CASE("flip spec passes everything with Poincare series 1,1,2,4,8") {
  Report r = run(load_spec(data("z2_flip.json")));
  CHECK(r.all_pass);
  CHECK(r.exit_code == 0);
  CHECK(r.poincare == std::vector<int>{1, 1, 2, 4, 8});
  for (const auto& s : suite_names()) CHECK_MESSAGE(suite_passes(r, s), s);
}

TEST_CASE("trivial spec gives full dimensions") {
  Report r = run(load_spec(data("trivial_c2.json")));
  CHECK(r.all_pass);
  CHECK(r.poincare == std::vector<int>{1, 2, 4, 8, 16});
}

TEST_CASE("corrupted coefficients fail the coaction suite and skip the tower") {
  Report r = run(load_spec(data("corrupted_flip.json")));
  CHECK_FALSE(r.all_pass);
  CHECK(r.first_failing_suite == "coaction");
  CHECK(r.exit_code == suite_exit_code("coaction"));
  CHECK(suite_passes(r, "hopf"));
  CHECK(suite_skipped(r, "tower"));
  CHECK(suite_skipped(r, "closure"));
  CHECK(r.poincare.empty());
  double delta_residual = 0.0;
  for (const auto& rec : r.records)
    if (rec.suite == "coaction" && rec.name == "Delta") delta_residual = rec.max_residual;
  CHECK(delta_residual >= 0.01);
}

TEST_CASE("non-invariant state fails only invariance") {
  Report r = run(load_spec(data("flip_nonuniform.json")));
  CHECK(r.first_failing_suite == "invariance");
  CHECK(r.exit_code == suite_exit_code("invariance"));
  CHECK(suite_passes(r, "coaction"));
  for (const auto& rec : r.records)
    if (rec.suite == "invariance") CHECK(rec.pass == (rec.name == "agreement"));
  CHECK(suite_skipped(r, "tower"));
}

TEST_CASE("lattice-only spec runs without a coaction") {
  Report r = run(load_spec(data("m2_delta_form.json")));
  CHECK(r.all_pass);
  REQUIRE(r.delta);
  CHECK(*r.delta * *r.delta == doctest::Approx(4.5));
  CHECK(suite_passes(r, "lattice"));
}

TEST_CASE("requested suites pull in their dependencies only") {
  SpecFile spec = load_spec(data("z2_flip.json"));
  spec.run.suites = {"equivariance"};
  Report r = run(spec);
  CHECK(r.all_pass);
  std::set<std::string> seen;
  for (const auto& rec : r.records) seen.insert(rec.suite);
  CHECK(seen == std::set<std::string>{"hopf", "coaction", "invariance", "tower", "equivariance"});
}

TEST_CASE("reports are deterministic and one record per line") {
  SpecFile spec = load_spec(data("s3_permutation.json"));
  spec.run.n_max = 3;
  std::ostringstream a, b;
  write_report(a, run(spec));
  write_report(b, run(spec));
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string line, last;
  int count = 0;
  while (std::getline(lines, line)) {
    json j = json::parse(line);
    CHECK(j.contains("type"));
    last = line;
    ++count;
  }
  json summary = json::parse(last);
  CHECK(summary["type"] == "summary");
  CHECK(summary["seed"] == 20240601);
  CHECK(summary["poincare"] == json::array({1, 1, 2, 5}));
  CHECK(count > 100);
}

TEST_CASE("doubles survive the round trip") {
  SpecFile spec = load_spec(data("m2_delta_form.json"));
  std::ostringstream out;
  Report r = run(spec);
  write_report(out, r);
  std::istringstream lines(out.str());
  std::string line, last;
  while (std::getline(lines, line)) last = line;
  CHECK(json::parse(last)["delta"].get<double>() == *r.delta);
}
