#pragma once

// Brute-force oracles written against the raw graph data, independent of
// the library's union-find and face tracing.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "feyncomb/ribbon.hpp"

namespace test_oracles {

using namespace feyncomb;

inline std::vector<std::size_t> labels(const Graph& g, EdgeSubset a) {
  std::vector<std::size_t> lab(g.num_vertices());
  for (std::size_t v = 0; v < lab.size(); ++v) lab[v] = v;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (!a.contains(e)) continue;
      auto& x = lab[g.edges()[e].tail];
      auto& y = lab[g.edges()[e].head];
      if (x != y) {
        x = y = std::min(x, y);
        changed = true;
      }
    }
  }
  return lab;
}

inline long count_components(const Graph& g, EdgeSubset a) {
  auto lab = labels(g, a);
  std::sort(lab.begin(), lab.end());
  return std::unique(lab.begin(), lab.end()) - lab.begin();
}

/// Faces of the sub-ribbon graph (V, H) by walking the rotation directly.
inline long count_faces(const RibbonGraph& rg, EdgeSubset h) {
  using D = std::pair<int, std::size_t>;  // (0 tail | 1 head, edge)
  std::map<D, D> succ;
  long faces = 0;
  for (const auto& rot : rg.rotation()) {
    std::vector<D> kept;
    for (const auto& d : rot) {
      if (!d.is_leg() && h.contains(d.index)) kept.emplace_back(d.kind == Dart::Kind::Tail ? 0 : 1, d.index);
    }
    if (kept.empty()) ++faces;
    for (std::size_t i = 0; i < kept.size(); ++i) succ[kept[i]] = kept[(i + 1) % kept.size()];
  }
  std::map<D, bool> seen;
  for (const auto& [d, unused] : succ) {
    if (seen[d]) continue;
    ++faces;
    for (D cur = d; !seen[cur]; cur = succ[{1 - cur.first, cur.second}]) seen[cur] = true;
  }
  return faces;
}

}  // namespace test_oracles
