#include "feyncomb/ribbon.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "feyncomb/errors.hpp"
#include "union_find.hpp"

namespace feyncomb {

namespace {

// Dense numbering: tail of edge i -> 2i, head -> 2i+1, leg j -> 2E+j.
struct DartIndex {
  std::size_t num_edges;
  std::size_t id(const Dart& d) const {
    switch (d.kind) {
      case Dart::Kind::Tail: return 2 * d.index;
      case Dart::Kind::Head: return 2 * d.index + 1;
      case Dart::Kind::Leg: return 2 * num_edges + d.index;
    }
    return 0;
  }
  Dart dart(std::size_t id) const {
    if (id < 2 * num_edges) return {id % 2 == 0 ? Dart::Kind::Tail : Dart::Kind::Head, id / 2};
    return {Dart::Kind::Leg, id - 2 * num_edges};
  }
};

bool dart_in(const Dart& d, EdgeSubset h) { return d.is_leg() || h.contains(d.index); }

}  // namespace

RibbonGraph::RibbonGraph(Graph graph, Rotation rotation)
    : graph_(std::move(graph)), rotation_(std::move(rotation)) {
  if (rotation_.size() != graph_.num_vertices()) {
    throw InputError("rotation must list every vertex");
  }
  const DartIndex idx{graph_.num_edges()};
  std::vector<int> seen(2 * graph_.num_edges() + graph_.num_legs(), 0);
  for (std::size_t v = 0; v < rotation_.size(); ++v) {
    for (const auto& d : rotation_[v]) {
      const bool valid = d.is_leg() ? d.index < graph_.num_legs() : d.index < graph_.num_edges();
      if (!valid) throw InputError("rotation references a missing half-edge");
      if (dart_vertex(d) != v) {
        throw InputError("half-edge '" + dart_name(d) + "' listed at vertex '" +
                         graph_.vertices()[v] + "' but attached elsewhere");
      }
      if (seen[idx.id(d)]++) throw InputError("half-edge '" + dart_name(d) + "' listed twice");
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InputError("half-edge '" + dart_name(idx.dart(i)) + "' missing from rotation");
  }
}

std::string RibbonGraph::dart_name(const Dart& d) const {
  switch (d.kind) {
    case Dart::Kind::Tail: return graph_.edges().at(d.index).id + ".t";
    case Dart::Kind::Head: return graph_.edges().at(d.index).id + ".h";
    case Dart::Kind::Leg: return graph_.legs().at(d.index).id;
  }
  return {};
}

Dart RibbonGraph::parse_dart(const std::string& name) const {
  if (auto l = graph_.find_leg(name)) return {Dart::Kind::Leg, *l};
  if (name.size() > 2 && name[name.size() - 2] == '.') {
    if (auto e = graph_.find_edge(name.substr(0, name.size() - 2))) {
      if (name.back() == 't') return {Dart::Kind::Tail, *e};
      if (name.back() == 'h') return {Dart::Kind::Head, *e};
    }
  }
  throw InputError("unknown half-edge '" + name + "'");
}

std::size_t RibbonGraph::dart_vertex(const Dart& d) const {
  switch (d.kind) {
    case Dart::Kind::Tail: return graph_.edges().at(d.index).tail;
    case Dart::Kind::Head: return graph_.edges().at(d.index).head;
    case Dart::Kind::Leg: return graph_.legs().at(d.index).vertex;
  }
  return 0;
}

Dart RibbonGraph::partner(const Dart& d) const {
  switch (d.kind) {
    case Dart::Kind::Tail: return {Dart::Kind::Head, d.index};
    case Dart::Kind::Head: return {Dart::Kind::Tail, d.index};
    case Dart::Kind::Leg: return d;
  }
  return d;
}

RibbonGraph with_default_rotation(const Graph& g) {
  Rotation rot(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    rot[g.edges()[e].tail].push_back({Dart::Kind::Tail, e});
    rot[g.edges()[e].head].push_back({Dart::Kind::Head, e});
  }
  for (std::size_t l = 0; l < g.num_legs(); ++l) rot[g.legs()[l].vertex].push_back({Dart::Kind::Leg, l});
  return RibbonGraph(g, std::move(rot));
}

// ---------------------------------------------------------------- faces

std::vector<Face> faces(const RibbonGraph& rg, EdgeSubset h) {
  const Graph& g = rg.graph();
  const DartIndex idx{g.num_edges()};
  const std::size_t total = 2 * g.num_edges() + g.num_legs();
  std::vector<std::size_t> succ(total, total);
  std::vector<Face> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::vector<Dart> kept;
    for (const auto& d : rg.rotation()[v]) {
      if (dart_in(d, h)) kept.push_back(d);
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
      succ[idx.id(kept[i])] = idx.id(kept[(i + 1) % kept.size()]);
    }
  }
  std::vector<bool> visited(total, false);
  for (std::size_t start = 0; start < total; ++start) {
    if (succ[start] == total || visited[start]) continue;
    Face f;
    std::size_t cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      const Dart d = idx.dart(cur);
      f.darts.push_back(d);
      cur = succ[idx.id(rg.partner(d))];
    }
    out.push_back(std::move(f));
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    bool any = std::any_of(rg.rotation()[v].begin(), rg.rotation()[v].end(),
                           [&](const Dart& d) { return dart_in(d, h); });
    if (!any) out.push_back(Face{{}, v});
  }
  return out;
}

std::vector<Face> faces(const RibbonGraph& rg) {
  return faces(rg, EdgeSubset::all(rg.graph().num_edges()));
}

std::size_t face_count(const RibbonGraph& rg, EdgeSubset h) { return faces(rg, h).size(); }

int genus(const RibbonGraph& rg, EdgeSubset h) {
  const Graph& g = rg.graph();
  const int k = static_cast<int>(components(g, h));
  const int v = static_cast<int>(g.num_vertices());
  const int e = static_cast<int>(h.size());
  const int f = static_cast<int>(face_count(rg, h));
  const int twice = 2 * k - v + e - f;
  if (twice < 0 || twice % 2 != 0) throw ArithmeticError("Euler characteristic is inconsistent");
  return twice / 2;
}

int genus(const RibbonGraph& rg) {
  require_enumerable(rg.graph());
  return genus(rg, EdgeSubset::all(rg.graph().num_edges()));
}

std::size_t broken_faces(const RibbonGraph& rg) {
  std::size_t n = 0;
  for (const auto& f : faces(rg)) {
    n += std::any_of(f.darts.begin(), f.darts.end(), [](const Dart& d) { return d.is_leg(); });
  }
  return n;
}

bool is_planar_regular(const RibbonGraph& rg) { return genus(rg) == 0 && broken_faces(rg) == 1; }

// ---------------------------------------------------------------- deletion / contraction

namespace {

Rotation remap_after_edge_removal(const Rotation& rot, std::size_t e) {
  Rotation out(rot.size());
  for (std::size_t v = 0; v < rot.size(); ++v) {
    for (auto d : rot[v]) {
      if (!d.is_leg()) {
        if (d.index == e) continue;
        if (d.index > e) --d.index;
      }
      out[v].push_back(d);
    }
  }
  return out;
}

// Rotation at v read starting just after `d`, with `d` itself dropped.
std::vector<Dart> rotation_after(const std::vector<Dart>& rot, const Dart& d) {
  auto it = std::find(rot.begin(), rot.end(), d);
  std::vector<Dart> out;
  const std::size_t pos = static_cast<std::size_t>(it - rot.begin());
  for (std::size_t k = 1; k < rot.size(); ++k) out.push_back(rot[(pos + k) % rot.size()]);
  return out;
}

}  // namespace

RibbonGraph ribbon_delete(const RibbonGraph& rg, const std::string& id) {
  const std::size_t e = rg.graph().edge_index(id);
  return RibbonGraph(delete_edge(rg.graph(), id), remap_after_edge_removal(rg.rotation(), e));
}

RibbonGraph ribbon_contract(const RibbonGraph& rg, const std::string& id) {
  const std::size_t e = rg.graph().edge_index(id);
  const Edge edge = rg.graph().edges()[e];
  if (edge.is_self_loop()) {
    throw PreconditionError("ribbon contraction of self-loop '" + id + "' is not defined");
  }
  Rotation rot = rg.rotation();
  std::vector<Dart> merged = rotation_after(rot[edge.tail], {Dart::Kind::Tail, e});
  auto tail_side = rotation_after(rot[edge.head], {Dart::Kind::Head, e});
  merged.insert(merged.end(), tail_side.begin(), tail_side.end());
  rot[edge.tail] = std::move(merged);
  rot.erase(rot.begin() + static_cast<std::ptrdiff_t>(edge.head));
  return RibbonGraph(contract_edge(rg.graph(), id), remap_after_edge_removal(rot, e));
}

// ---------------------------------------------------------------- quasi-trees

std::vector<EdgeSubset> quasi_trees(const RibbonGraph& rg) {
  const Graph& g = rg.graph();
  require_enumerable(g);
  if (!is_connected(g)) throw PreconditionError("quasi_trees requires a connected ribbon graph");
  std::vector<EdgeSubset> out;
  const std::uint64_t n = std::uint64_t{1} << g.num_edges();
  for (std::uint64_t bits = 0; bits < n; ++bits) {
    EdgeSubset h(bits);
    if (components(g, h) == 1 && face_count(rg, h) == 1) out.push_back(h);
  }
  return out;
}

std::vector<TwoQuasiTree> two_quasi_trees(const RibbonGraph& rg) {
  const Graph& g = rg.graph();
  require_enumerable(g);
  if (!is_connected(g)) throw PreconditionError("two_quasi_trees requires a connected ribbon graph");
  std::vector<TwoQuasiTree> out;
  const std::uint64_t n = std::uint64_t{1} << g.num_edges();
  for (std::uint64_t bits = 0; bits < n; ++bits) {
    EdgeSubset h(bits);
    if (components(g, h) != 1) continue;
    auto fs = faces(rg, h);
    if (fs.size() == 2) out.push_back({h, std::move(fs)});
  }
  return out;
}

std::vector<BoundaryLeg> face_boundary_order(const RibbonGraph& rg, const Face& face) {
  std::vector<BoundaryLeg> out;
  for (const auto& d : face.darts) {
    if (d.is_leg()) out.push_back({d.index, rg.graph().legs().at(d.index).sign()});
  }
  return out;
}

// ---------------------------------------------------------------- canonical form

namespace {

std::vector<int> component_code(const RibbonGraph& rg, const Dart& start,
                                const std::vector<std::size_t>& position) {
  const DartIndex idx{rg.graph().num_edges()};
  const auto& rot = rg.rotation();
  std::vector<int> number(rot.size(), -1);
  std::vector<std::size_t> offset(rot.size(), 0);
  std::deque<std::size_t> queue;
  const std::size_t v0 = rg.dart_vertex(start);
  number[v0] = 0;
  offset[v0] = position[idx.id(start)];
  queue.push_back(v0);
  int next = 1;
  std::vector<int> code;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    const std::size_t deg = rot[v].size();
    code.push_back(static_cast<int>(deg));
    for (std::size_t k = 0; k < deg; ++k) {
      const Dart d = rot[v][(offset[v] + k) % deg];
      if (d.is_leg()) {
        code.push_back(-1);
        continue;
      }
      const Dart p = rg.partner(d);
      const std::size_t w = rg.dart_vertex(p);
      if (number[w] < 0) {
        number[w] = next++;
        offset[w] = position[idx.id(p)];
        queue.push_back(w);
      }
      const std::size_t wdeg = rot[w].size();
      code.push_back(number[w]);
      code.push_back(static_cast<int>((position[idx.id(p)] + wdeg - offset[w]) % wdeg));
    }
  }
  return code;
}

}  // namespace

std::string canonical_form(const RibbonGraph& rg) {
  const Graph& g = rg.graph();
  const DartIndex idx{g.num_edges()};
  std::vector<std::size_t> position(2 * g.num_edges() + g.num_legs());
  for (const auto& r : rg.rotation()) {
    for (std::size_t i = 0; i < r.size(); ++i) position[idx.id(r[i])] = i;
  }
  detail::UnionFind uf(g.num_vertices());
  for (const auto& e : g.edges()) uf.unite(e.tail, e.head);

  std::map<std::size_t, std::vector<int>> best;
  std::map<std::size_t, bool> has_best;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const std::size_t root = uf.find(v);
    if (rg.rotation()[v].empty()) {
      best.try_emplace(root);
      continue;
    }
    for (const auto& d : rg.rotation()[v]) {
      auto code = component_code(rg, d, position);
      auto& slot = best[root];
      if (!has_best[root] || code < slot) {
        slot = std::move(code);
        has_best[root] = true;
      }
    }
  }
  std::vector<std::string> parts;
  for (const auto& [root, code] : best) {
    std::string s = "(";
    for (std::size_t i = 0; i < code.size(); ++i) {
      if (i) s += ',';
      s += code[i] < 0 ? std::string("L") : std::to_string(code[i]);
    }
    s += ')';
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  std::string label = "R";
  for (const auto& p : parts) label += p;
  return label;
}

}  // namespace feyncomb
