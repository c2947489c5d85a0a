#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "feyncomb/errors.hpp"
#include "support.hpp"

using namespace feyncomb;
using nlohmann::json;

namespace {

json fig6_json() {
  return json::parse(R"({
    "type": "ribbon",
    "vertices": ["v1"],
    "edges": [{"id": "e1", "tail": "v1", "head": "v1"}],
    "external": [{"id": "f1", "vertex": "v1", "dir": "in"}, {"id": "f2", "vertex": "v1", "dir": "out"}],
    "rotation": {"v1": ["e1.t", "f1", "e1.h", "f2"]}
  })");
}

std::string error_of(const json& j) {
  try {
    parse_fixture(j);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& msg, const std::string& what) { return msg.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("fixture parses") {
  const Fixture f = parse_fixture(fig6_json());
  CHECK(f.is_ribbon);
  CHECK(f.graph.graph().num_vertices() == 1);
  CHECK(f.graph.graph().num_edges() == 1);
  CHECK(f.graph.graph().legs()[1].dir == LegDirection::Out);
  CHECK(f.graph.rotation()[0].size() == 4);
  CHECK(f.graph == test_support::ribbon("fig6"));
}

TEST_CASE("graph fixtures default type and rotation") {
  json j = fig6_json();
  j.erase("type");
  j.erase("rotation");
  const Fixture f = parse_fixture(j);
  CHECK_FALSE(f.is_ribbon);
  CHECK(f.graph == with_default_rotation(f.graph.graph()));
}

TEST_CASE("errors name the field") {
  json j = fig6_json();
  j.erase("vertices");
  CHECK(mentions(error_of(j), "vertices"));

  j = fig6_json();
  j["edges"][0].erase("head");
  CHECK(mentions(error_of(j), "edges[0].head"));

  j = fig6_json();
  j["external"][1]["dir"] = "sideways";
  CHECK(mentions(error_of(j), "external[1].dir"));

  j = fig6_json();
  j["type"] = "graph";
  CHECK(mentions(error_of(j), "rotation"));

  j = fig6_json();
  j.erase("rotation");
  CHECK(mentions(error_of(j), "rotation"));

  j = fig6_json();
  j["type"] = "hypergraph";
  CHECK(mentions(error_of(j), "type"));

  j = fig6_json();
  j["rotation"]["v1"] = json::array({"e1.t", "f1", "f2"});
  CHECK_FALSE(error_of(j).empty());

  j = fig6_json();
  j["edges"][0]["tail"] = "v9";
  CHECK_FALSE(error_of(j).empty());

  CHECK_FALSE(error_of(json::array()).empty());
}

TEST_CASE("files") {
  CHECK_THROWS_AS(load_fixture(test_support::path("no_such_fixture.json")), InputError);
  const std::string tmp = "feyncomb_io_malformed.json";
  {
    std::ofstream out(tmp);
    out << "{\"type\": \"graph\", \"vertices\": [";
  }
  try {
    load_fixture(tmp);
    FAIL("malformed JSON accepted");
  } catch (const InputError& e) {
    CHECK(mentions(e.what(), "malformed JSON"));
  }
  std::remove(tmp.c_str());
}

TEST_CASE("round trip through JSON") {
  for (const char* name : {"fig3", "fig4", "fig5", "fig6", "tadpole", "interleaved", "two_bubble_ribbon"}) {
    const Fixture f = test_support::fixture(name);
    const Fixture back = parse_fixture(fixture_to_json(f));
    CHECK(back.is_ribbon == f.is_ribbon);
    CHECK(back.graph == f.graph);
    CHECK(fixture_to_json(back) == fixture_to_json(f));
  }
}

TEST_CASE("momenta") {
  const ExternalAssignment m = load_momenta(test_support::path("fig3_momenta.json"));
  REQUIRE(m.size() == 4);
  CHECK(m.at("f1").sign == 1);
  CHECK(m.at("f4").sign == -1);
  CHECK(m.at("f4").p.c[2] == -1);
  CHECK_NOTHROW(check_assignment(test_support::graph("fig3"), m));

  const ExternalAssignment r = parse_momenta(json::parse(R"({"f1": {"p": ["1/2", 0, "-3/4", 2]}})"));
  CHECK(r.at("f1").sign == 1);
  CHECK(r.at("f1").p.c[0] == Rational(1, 2));
  CHECK(r.at("f1").p.c[2] == Rational(-3, 4));

  CHECK_THROWS_AS(parse_momenta(json::parse(R"({"f1": {"p": [1, 0, 0]}})")), InputError);
  CHECK_THROWS_AS(parse_momenta(json::parse(R"({"f1": {"p": ["x", 0, 0, 0]}})")), InputError);
  CHECK_THROWS_AS(parse_momenta(json::parse(R"({"f1": {"p": [1.5, 0, 0, 0]}})")), InputError);
  CHECK_THROWS_AS(parse_momenta(json::parse(R"({"f1": {"q": [1, 0, 0, 0]}})")), InputError);
  CHECK_THROWS_AS(parse_momenta(json::parse("[1, 2]")), InputError);
}

TEST_CASE("polynomial term lists") {
  using test_support::var;
  const MultiPoly p = Rational(1, 2) * var("x").pow(2) - var("x") * var("y") + 3;
  const json j = poly_to_json(p);
  REQUIRE(j.size() == 3);
  CHECK(j[0] == json::parse(R"({"coeff": "1/2", "monomial": {"x": 2}})"));
  CHECK(j[1] == json::parse(R"({"coeff": "-1", "monomial": {"x": 1, "y": 1}})"));
  CHECK(j[2] == json::parse(R"({"coeff": "3", "monomial": {}})"));
  CHECK(poly_to_json(MultiPoly{}) == json::array());
}
