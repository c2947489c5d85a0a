#pragma once

// JSON fixtures, momentum files and polynomial term lists.

#include <string>

#include <json.hpp>

#include "feyncomb/parametric.hpp"
#include "feyncomb/poly.hpp"
#include "feyncomb/ribbon.hpp"

namespace feyncomb {

struct Fixture {
  RibbonGraph graph;  // plain graphs get the default rotation
  bool is_ribbon = false;
};

/// Throws InputError naming the offending field.
Fixture parse_fixture(const nlohmann::json& j);
Fixture load_fixture(const std::string& path);
nlohmann::json fixture_to_json(const Fixture& f);

/// {"f1": {"p": [1, 0, 0, 0], "dir": "in"}, ...}; components may be "p/q" strings.
ExternalAssignment parse_momenta(const nlohmann::json& j);
ExternalAssignment load_momenta(const std::string& path);

/// [{"coeff": "1/2", "monomial": {"x": 2}}, ...] in canonical order.
nlohmann::json poly_to_json(const MultiPoly& p);

nlohmann::json read_json_file(const std::string& path);

}  // namespace feyncomb
