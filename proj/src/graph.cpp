#include "feyncomb/graph.hpp"

#include <algorithm>
#include <map>

#include "feyncomb/errors.hpp"
#include "union_find.hpp"

namespace feyncomb {

// ---------------------------------------------------------------- Graph

std::size_t Graph::add_vertex(const std::string& id) {
  if (id.empty()) throw InputError("empty vertex id");
  if (find_vertex(id)) throw InputError("duplicate vertex id '" + id + "'");
  vertices_.push_back(id);
  return vertices_.size() - 1;
}

void Graph::check_fresh_line_id(const std::string& id) const {
  if (id.empty()) throw InputError("empty edge/leg id");
  if (find_edge(id) || find_leg(id)) throw InputError("duplicate edge/leg id '" + id + "'");
}

std::size_t Graph::add_edge(const std::string& id, const std::string& tail, const std::string& head) {
  return add_edge_by_index(id, vertex_index(tail), vertex_index(head));
}

std::size_t Graph::add_edge_by_index(const std::string& id, std::size_t tail, std::size_t head) {
  check_fresh_line_id(id);
  if (tail >= vertices_.size() || head >= vertices_.size()) {
    throw InputError("edge '" + id + "' references a missing vertex");
  }
  edges_.push_back({id, tail, head});
  return edges_.size() - 1;
}

std::size_t Graph::add_leg(const std::string& id, const std::string& vertex, LegDirection dir) {
  return add_leg_by_index(id, vertex_index(vertex), dir);
}

std::size_t Graph::add_leg_by_index(const std::string& id, std::size_t vertex, LegDirection dir) {
  check_fresh_line_id(id);
  if (vertex >= vertices_.size()) throw InputError("leg '" + id + "' references a missing vertex");
  legs_.push_back({id, vertex, dir});
  return legs_.size() - 1;
}

std::optional<std::size_t> Graph::find_vertex(const std::string& id) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), id);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> Graph::find_edge(const std::string& id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Graph::find_leg(const std::string& id) const {
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    if (legs_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t Graph::vertex_index(const std::string& id) const {
  if (auto v = find_vertex(id)) return *v;
  throw InputError("unknown vertex '" + id + "'");
}

std::size_t Graph::edge_index(const std::string& id) const {
  if (auto e = find_edge(id)) return *e;
  throw InputError("unknown edge '" + id + "'");
}

std::size_t Graph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (const auto& e : edges_) d += (e.tail == v) + (e.head == v);
  for (const auto& l : legs_) d += (l.vertex == v);
  return d;
}

void Graph::remove_isolated_vertex(std::size_t v) {
  if (degree(v) != 0) throw PreconditionError("vertex '" + vertices_.at(v) + "' is not isolated");
  vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(v));
  for (auto& e : edges_) {
    if (e.tail > v) --e.tail;
    if (e.head > v) --e.head;
  }
  for (auto& l : legs_) {
    if (l.vertex > v) --l.vertex;
  }
}

void Graph::remove_edge_at(std::size_t e) { edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(e)); }
void Graph::remove_leg_at(std::size_t l) { legs_.erase(legs_.begin() + static_cast<std::ptrdiff_t>(l)); }

void Graph::set_edge_ends(std::size_t e, std::size_t tail, std::size_t head) {
  edges_.at(e).tail = tail;
  edges_.at(e).head = head;
}

void Graph::set_leg_vertex(std::size_t l, std::size_t v) { legs_.at(l).vertex = v; }

void Graph::reverse_edge(std::size_t e) { std::swap(edges_.at(e).tail, edges_.at(e).head); }

bool operator==(const Edge& a, const Edge& b) {
  return a.id == b.id && a.tail == b.tail && a.head == b.head;
}

bool operator==(const Leg& a, const Leg& b) {
  return a.id == b.id && a.vertex == b.vertex && a.dir == b.dir;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.legs_ == b.legs_;
}

// ---------------------------------------------------------------- EdgeSubset

EdgeSubset EdgeSubset::all(std::size_t num_edges) {
  if (num_edges > kMaxEdges) throw InputError("too many edges for subset enumeration");
  return EdgeSubset(num_edges == 0 ? 0 : (~std::uint64_t{0} >> (64 - num_edges)));
}

EdgeSubset EdgeSubset::of(const std::vector<std::size_t>& indices) {
  EdgeSubset s;
  for (auto i : indices) {
    if (i >= kMaxEdges) throw InputError("edge index out of subset range");
    s = s.with(i);
  }
  return s;
}

std::vector<std::size_t> EdgeSubset::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

void require_enumerable(const Graph& g) {
  if (g.num_edges() > EdgeSubset::kMaxEdges) {
    throw InputError("graph has " + std::to_string(g.num_edges()) + " edges; at most " +
                     std::to_string(EdgeSubset::kMaxEdges) + " are supported");
  }
}

// ---------------------------------------------------------------- structure

std::vector<std::size_t> component_labels(const Graph& g, EdgeSubset a) {
  detail::UnionFind uf(g.num_vertices());
  for (auto e : a.indices()) uf.unite(g.edges().at(e).tail, g.edges().at(e).head);
  std::vector<std::size_t> label(g.num_vertices());
  std::map<std::size_t, std::size_t> root_to_label;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    auto [it, inserted] = root_to_label.try_emplace(uf.find(v), root_to_label.size());
    label[v] = it->second;
  }
  return label;
}

std::size_t components(const Graph& g, EdgeSubset a) {
  detail::UnionFind uf(g.num_vertices());
  for (auto e : a.indices()) uf.unite(g.edges().at(e).tail, g.edges().at(e).head);
  return uf.sets();
}

int rank(const Graph& g, EdgeSubset a) {
  return static_cast<int>(g.num_vertices()) - static_cast<int>(components(g, a));
}

int nullity(const Graph& g, EdgeSubset a) { return static_cast<int>(a.size()) - rank(g, a); }

bool is_connected(const Graph& g) {
  require_enumerable(g);
  return g.num_vertices() > 0 && components(g, EdgeSubset::all(g.num_edges())) == 1;
}

int loop_number(const Graph& g) {
  require_enumerable(g);
  return nullity(g, EdgeSubset::all(g.num_edges()));
}

EdgeKind classify_edge(const Graph& g, std::size_t e) {
  require_enumerable(g);
  if (e >= g.num_edges()) throw InputError("edge index out of range");
  if (g.edges()[e].is_self_loop()) return EdgeKind::SelfLoop;
  auto all = EdgeSubset::all(g.num_edges());
  return components(g, all.without(e)) > components(g, all) ? EdgeKind::Bridge : EdgeKind::Regular;
}

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Bridge: return "bridge";
    case EdgeKind::SelfLoop: return "self_loop";
    case EdgeKind::Regular: return "regular";
  }
  return "?";
}

Graph delete_edge(const Graph& g, const std::string& id) {
  Graph h = g;
  h.remove_edge_at(g.edge_index(id));
  return h;
}

Graph contract_edge(const Graph& g, const std::string& id) {
  const std::size_t e = g.edge_index(id);
  const Edge edge = g.edges()[e];
  Graph h = g;
  h.remove_edge_at(e);
  if (edge.is_self_loop()) return h;
  const std::size_t keep = edge.tail;
  const std::size_t gone = edge.head;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    auto t = h.edges()[i].tail == gone ? keep : h.edges()[i].tail;
    auto hd = h.edges()[i].head == gone ? keep : h.edges()[i].head;
    h.set_edge_ends(i, t, hd);
  }
  for (std::size_t l = 0; l < h.num_legs(); ++l) {
    if (h.legs()[l].vertex == gone) h.set_leg_vertex(l, keep);
  }
  h.remove_isolated_vertex(gone);
  return h;
}

namespace {

void require_connected(const Graph& g, const char* what) {
  if (!is_connected(g)) throw PreconditionError(std::string(what) + " requires a connected graph");
}

// Calls f(subset) for every k-element subset of n edges, in increasing bit order.
template <typename F>
void for_each_k_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  if (k == 0) {
    f(EdgeSubset{});
    return;
  }
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (s < limit) {
    f(EdgeSubset(s));
    std::uint64_t c = s & (~s + 1);
    std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

bool is_forest(const Graph& g, EdgeSubset a) {
  detail::UnionFind uf(g.num_vertices());
  for (auto e : a.indices()) {
    if (!uf.unite(g.edges()[e].tail, g.edges()[e].head)) return false;
  }
  return true;
}

}  // namespace

std::vector<EdgeSubset> spanning_trees(const Graph& g) {
  require_connected(g, "spanning_trees");
  std::vector<EdgeSubset> trees;
  for_each_k_subset(g.num_edges(), g.num_vertices() - 1, [&](EdgeSubset s) {
    if (is_forest(g, s)) trees.push_back(s);
  });
  return trees;
}

std::vector<TwoTree> spanning_two_trees(const Graph& g) {
  require_connected(g, "spanning_two_trees");
  std::vector<TwoTree> out;
  if (g.num_vertices() < 2) return out;
  for_each_k_subset(g.num_edges(), g.num_vertices() - 2, [&](EdgeSubset s) {
    if (!is_forest(g, s)) return;
    TwoTree t;
    t.edges = s;
    auto labels = component_labels(g, s);
    t.side.assign(labels.begin(), labels.end());
    for (std::size_t l = 0; l < g.num_legs(); ++l) {
      t.legs[t.side[g.legs()[l].vertex]].push_back(l);
    }
    out.push_back(std::move(t));
  });
  return out;
}

std::vector<std::vector<int>> incidence_matrix(const Graph& g) {
  std::vector<std::vector<int>> m(g.num_edges(), std::vector<int>(g.num_vertices(), 0));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edges()[e];
    if (edge.is_self_loop()) continue;
    m[e][edge.tail] = 1;
    m[e][edge.head] = -1;
  }
  return m;
}

bool is_one_pi(const Graph& g) {
  if (!is_connected(g)) return false;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (classify_edge(g, e) == EdgeKind::Bridge) return false;
  }
  return true;
}

Graph relabeled(const Graph& g, const std::vector<std::size_t>& vertex_order,
                const std::vector<std::size_t>& edge_order) {
  if (vertex_order.size() != g.num_vertices() || edge_order.size() != g.num_edges()) {
    throw InputError("relabel orders have the wrong size");
  }
  Graph h;
  std::vector<std::size_t> new_index(g.num_vertices());
  for (std::size_t i = 0; i < vertex_order.size(); ++i) {
    new_index.at(vertex_order[i]) = h.add_vertex(g.vertices().at(vertex_order[i]));
  }
  for (auto e : edge_order) {
    const auto& edge = g.edges().at(e);
    h.add_edge_by_index(edge.id, new_index[edge.tail], new_index[edge.head]);
  }
  for (const auto& leg : g.legs()) h.add_leg_by_index(leg.id, new_index[leg.vertex], leg.dir);
  return h;
}

}  // namespace feyncomb
