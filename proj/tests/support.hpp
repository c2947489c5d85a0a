#pragma once

#include <string>

#include "feyncomb/io.hpp"
#include "feyncomb/random_graphs.hpp"

namespace test_support {

inline feyncomb::Fixture fixture(const std::string& name) {
  return feyncomb::load_fixture(std::string(FEYNCOMB_FIXTURE_DIR) + "/" + name + ".json");
}
inline feyncomb::RibbonGraph ribbon(const std::string& name) { return fixture(name).graph; }
inline feyncomb::Graph graph(const std::string& name) { return fixture(name).graph.graph(); }
inline std::string path(const std::string& file) { return std::string(FEYNCOMB_FIXTURE_DIR) + "/" + file; }

inline feyncomb::MultiPoly var(const std::string& v) { return feyncomb::MultiPoly::var(v); }
inline feyncomb::MultiPoly poly(long c) { return feyncomb::MultiPoly(c); }
inline std::string str(const feyncomb::MultiPoly& p) { return feyncomb::canonical_string(p); }

}  // namespace test_support
