#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "feyncomb/errors.hpp"
#include "feyncomb/linalg.hpp"
#include "feyncomb/random_graphs.hpp"
#include "feyncomb/ribbon.hpp"
#include "support.hpp"

using namespace feyncomb;
using test_support::graph;
using test_support::ribbon;

namespace {

// Independent oracles: plain DFS components and brute-force isomorphism.

std::size_t dfs_components(const Graph& g, EdgeSubset a) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (!a.contains(e)) continue;
    adj[g.edges()[e].tail].push_back(g.edges()[e].head);
    adj[g.edges()[e].head].push_back(g.edges()[e].tail);
  }
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return count;
}

bool brute_isomorphic(const Graph& a, const Graph& b) {
  const std::size_t n = a.num_vertices();
  if (n != b.num_vertices() || a.num_edges() != b.num_edges() || a.num_legs() != b.num_legs()) return false;
  auto legs = [](const Graph& g) {
    std::vector<int> c(g.num_vertices(), 0);
    for (const auto& l : g.legs()) ++c[l.vertex];
    return c;
  };
  auto edges = [](const Graph& g, const std::vector<std::size_t>& p) {
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (const auto& e : g.edges()) es.emplace_back(std::minmax(p[e.tail], p[e.head]));
    std::sort(es.begin(), es.end());
    return es;
  };
  std::vector<std::size_t> id(n), perm(n);
  std::iota(id.begin(), id.end(), 0);
  std::iota(perm.begin(), perm.end(), 0);
  const auto la = legs(a), lb = legs(b);
  const auto eb = edges(b, id);
  do {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) ok = la[v] == lb[perm[v]];
    if (ok && edges(a, perm) == eb) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::size_t brute_spanning_trees(const Graph& g) {
  std::size_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.num_edges()); ++bits) {
    const EdgeSubset a(bits);
    if (a.size() + 1 == g.num_vertices() && dfs_components(g, a) == 1) ++count;
  }
  return count;
}

Graph k3_path() {
  Graph g;
  for (auto v : {"a", "b", "c"}) g.add_vertex(v);
  g.add_edge("e1", "a", "b");
  g.add_edge("e2", "b", "c");
  return g;
}

}  // namespace

TEST_CASE("components, rank, nullity on fig3") {
  const Graph g = graph("fig3");
  CHECK(components(g, EdgeSubset{}) == 3);
  CHECK(components(g, EdgeSubset::of({0, 1})) == 1);
  const EdgeSubset all = EdgeSubset::all(g.num_edges());
  CHECK(rank(g, all) == 2);
  CHECK(nullity(g, all) == 2);
  CHECK(rank(g, EdgeSubset{}) == 0);
  Graph single;
  single.add_vertex("v");
  CHECK(components(single, EdgeSubset{}) == 1);
}

TEST_CASE("edge classification") {
  CHECK(classify_edge(graph("bridge"), 0) == EdgeKind::Bridge);
  CHECK(classify_edge(graph("tadpole"), 0) == EdgeKind::SelfLoop);
  for (std::size_t e = 0; e < 3; ++e) CHECK(classify_edge(graph("triangle"), e) == EdgeKind::Regular);
}

TEST_CASE("delete and contract") {
  const Graph b = graph("bridge");
  const Graph c = contract_edge(b, "e1");
  CHECK(c.num_vertices() == 1);
  CHECK(c.num_edges() == 0);
  const Graph path = delete_edge(graph("triangle"), "e2");
  CHECK(path.num_edges() == 2);
  CHECK(is_connected(path));
  CHECK(canonical_form(path) == canonical_form(k3_path()));
  const Graph t = graph("tadpole");
  CHECK(contract_edge(t, "e1") == delete_edge(t, "e1"));
  CHECK_THROWS_AS(delete_edge(t, "nope"), InputError);

  // Legs follow the merged vertex.
  const Graph f5 = graph("fig5");
  const Graph m = contract_edge(f5, "e1");
  CHECK(m.num_vertices() == 3);
  CHECK(m.num_legs() == 4);
  CHECK(m.vertices()[m.legs()[0].vertex] == "v1");
}

TEST_CASE("spanning trees and two-trees") {
  const Graph g = graph("fig3");
  const auto trees = spanning_trees(g);
  std::vector<std::uint64_t> bits;
  for (auto t : trees) bits.push_back(t.bits());
  std::sort(bits.begin(), bits.end());
  // {e1,e2},{e1,e3},{e1,e4},{e2,e3},{e2,e4}
  CHECK(bits == std::vector<std::uint64_t>{0b0011, 0b0101, 0b0110, 0b1001, 0b1010});
  CHECK(spanning_trees(graph("triangle")).size() == 3);

  Graph single;
  single.add_vertex("v");
  CHECK(spanning_trees(single) == std::vector<EdgeSubset>{EdgeSubset{}});

  const auto tt = spanning_two_trees(graph("bridge"));
  REQUIRE(tt.size() == 1);
  CHECK(tt[0].edges.empty());
  CHECK(tt[0].side == std::vector<int>{0, 1});
  CHECK(spanning_two_trees(graph("triangle")).size() == 3);
  // fig3: {e1}, {e2}, {e3}, {e4}
  CHECK(spanning_two_trees(g).size() == 4);

  Graph disconnected = k3_path();
  disconnected.add_vertex("d");
  CHECK_THROWS_AS(spanning_trees(disconnected), PreconditionError);
}

TEST_CASE("incidence matrix") {
  const auto m = incidence_matrix(graph("fig3"));
  REQUIRE(m.size() == 4);
  for (const auto& row : m) CHECK(std::accumulate(row.begin(), row.end(), 0) == 0);
  CHECK(m[0] == std::vector<int>{1, -1, 0});
  CHECK(incidence_matrix(graph("tadpole"))[0] == std::vector<int>{0});
}

TEST_CASE("1PI") {
  CHECK_FALSE(is_one_pi(graph("bridge")));
  CHECK(is_one_pi(graph("fig4")));
  Graph two = graph("fig4");
  two.add_vertex("lonely");
  CHECK_FALSE(is_one_pi(two));
}

TEST_CASE("random graphs: components, trees, deletion") {
  Rng rng(11);
  for (int i = 0; i < 150; ++i) {
    const Graph g = random_multigraph(rng, 6, 8);
    const EdgeSubset all = EdgeSubset::all(g.num_edges());
    CHECK(components(g, all) == dfs_components(g, all));
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const Graph d = delete_edge(g, g.edges()[e].id);
      CHECK(d.num_edges() + 1 == g.num_edges());
      const auto before = dfs_components(g, all), after = dfs_components(d, EdgeSubset::all(d.num_edges()));
      CHECK((after == before || after == before + 1));
      CHECK((classify_edge(g, e) == EdgeKind::Bridge) == (after == before + 1));
      CHECK(contract_edge(g, g.edges()[e].id).num_edges() + 1 == g.num_edges());
    }
    if (is_connected(g)) {
      const std::size_t brute = brute_spanning_trees(g);
      CHECK(spanning_trees(g).size() == brute);
      CHECK(matrix_tree_count(g) == Integer(static_cast<unsigned long>(brute)));
    }
  }
}

TEST_CASE("canonical form is an isomorphism invariant") {
  Rng rng(3);
  for (int i = 0; i < 150; ++i) {
    const Graph g = with_random_legs(rng, random_multigraph(rng, 5, 6), uniform_index(rng, 0, 3));
    std::vector<std::size_t> vo(g.num_vertices()), eo(g.num_edges());
    std::iota(vo.begin(), vo.end(), 0);
    std::iota(eo.begin(), eo.end(), 0);
    std::shuffle(vo.begin(), vo.end(), rng);
    std::shuffle(eo.begin(), eo.end(), rng);
    const Graph h = random_reorientation(rng, relabeled(g, vo, eo));
    CHECK(canonical_form(g) == canonical_form(h));

    const Graph other = with_random_legs(rng, random_multigraph(rng, 5, 6), uniform_index(rng, 0, 3));
    CHECK((canonical_form(g) == canonical_form(other)) == brute_isomorphic(g, other));
  }
  CHECK(canonical_form(graph("triangle")) != canonical_form(k3_path()));
}

TEST_CASE("canonical form on a 10-vertex relabeling") {
  Rng rng(5);
  Graph g = random_connected_multigraph(rng, 10, 14);
  while (g.num_vertices() < 10) g = random_connected_multigraph(rng, 10, 14);
  std::vector<std::size_t> vo(g.num_vertices()), eo(g.num_edges());
  std::iota(vo.begin(), vo.end(), 0);
  std::iota(eo.begin(), eo.end(), 0);
  std::shuffle(vo.begin(), vo.end(), rng);
  std::shuffle(eo.begin(), eo.end(), rng);
  const Graph h = relabeled(g, vo, eo);
  CHECK(canonical_form(g) == canonical_form(h));
  CHECK(brute_isomorphic(g, h));
}

TEST_CASE("faces, genus, broken faces") {
  const RibbonGraph f6 = ribbon("fig6");
  CHECK(faces(f6).size() == 2);
  CHECK(genus(f6) == 0);
  CHECK(broken_faces(f6) == 2);
  CHECK_FALSE(is_planar_regular(f6));

  const RibbonGraph il = ribbon("interleaved");
  CHECK(faces(il).size() == 1);
  CHECK(genus(il) == 1);
  CHECK_FALSE(is_planar_regular(il));

  Graph v;
  v.add_vertex("v");
  CHECK(faces(with_default_rotation(v)).size() == 1);
  CHECK(broken_faces(with_default_rotation(v)) == 0);
  v.add_leg("f", "v", LegDirection::In);
  CHECK(broken_faces(with_default_rotation(v)) == 1);
  CHECK(is_planar_regular(with_default_rotation(v)));
  CHECK(genus(with_default_rotation(graph("triangle"))) == 0);
}

TEST_CASE("ribbon delete and contract") {
  const RibbonGraph d = ribbon_delete(ribbon("fig6"), "e1");
  CHECK(d.graph().num_edges() == 0);
  CHECK(d.rotation()[0].size() == 2);

  const RibbonGraph c = ribbon_contract(ribbon("bridge_loop"), "e1");
  CHECK(c.graph().num_vertices() == 1);
  CHECK(genus(c) == 0);
  CHECK_THROWS_AS(ribbon_contract(ribbon("tadpole"), "e1"), PreconditionError);

  const RibbonGraph tri = with_default_rotation(graph("triangle"));
  const RibbonGraph a = ribbon_delete(ribbon_contract(tri, "e1"), "e3");
  const RibbonGraph b = ribbon_contract(ribbon_delete(tri, "e3"), "e1");
  CHECK(canonical_form(a) == canonical_form(b));
}

TEST_CASE("quasi-trees and two-quasi-trees") {
  CHECK(quasi_trees(ribbon("tadpole")) == std::vector<EdgeSubset>{EdgeSubset{}});
  auto il = quasi_trees(ribbon("interleaved"));
  std::sort(il.begin(), il.end());
  CHECK(il == std::vector<EdgeSubset>{EdgeSubset{}, EdgeSubset::all(2)});
  CHECK(quasi_trees(ribbon("bridge")) == std::vector<EdgeSubset>{EdgeSubset::all(1)});

  const auto t = two_quasi_trees(ribbon("tadpole"));
  REQUIRE(t.size() == 1);
  CHECK(t[0].edges == EdgeSubset::all(1));
  CHECK(two_quasi_trees(ribbon("bridge")).empty());

  const RibbonGraph f6 = ribbon("fig6");
  const auto t6 = two_quasi_trees(f6);
  REQUIRE(t6.size() == 1);
  for (const auto& face : t6[0].faces) CHECK(face_boundary_order(f6, face).size() == 1);
}

TEST_CASE("face boundary order") {
  const RibbonGraph f6 = ribbon("fig6");
  std::vector<BoundaryLeg> all;
  for (const auto& face : faces(f6)) {
    const auto legs = face_boundary_order(f6, face);
    all.insert(all.end(), legs.begin(), legs.end());
  }
  std::sort(all.begin(), all.end(), [](auto& x, auto& y) { return x.leg < y.leg; });
  CHECK(all == std::vector<BoundaryLeg>{{0, 1}, {1, -1}});
  CHECK(face_boundary_order(ribbon("tadpole"), faces(ribbon("tadpole"))[0]).empty());
}

TEST_CASE("random ribbon graphs: Euler relation and quasi-tree properties") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const RibbonGraph rg = random_rotation(rng, with_random_legs(rng, random_connected_multigraph(rng, 5, 6), 2));
    const Graph& g = rg.graph();
    const long v = static_cast<long>(g.num_vertices()), e = static_cast<long>(g.num_edges());
    CHECK(v - e + static_cast<long>(faces(rg).size()) == 2 - 2 * genus(rg));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << e); ++bits) {
      const EdgeSubset h(bits);
      const long k = static_cast<long>(components(g, h)), f = static_cast<long>(face_count(rg, h));
      const long twice_genus = k - f + nullity(g, h);
      CHECK(twice_genus >= 0);
      CHECK(twice_genus % 2 == 0);
    }
    const auto qt = quasi_trees(rg);
    for (auto q : qt) CHECK(q.size() + 1 >= g.num_vertices());
    for (auto t : spanning_trees(g)) {
      if (face_count(rg, t) == 1) CHECK(std::find(qt.begin(), qt.end(), t) != qt.end());
    }
  }
}
