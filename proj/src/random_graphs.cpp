#include "feyncomb/random_graphs.hpp"

#include <algorithm>

#include "feyncomb/errors.hpp"

namespace feyncomb {

namespace {

std::string name(char prefix, std::size_t i) { return std::string(1, prefix) + std::to_string(i + 1); }

Graph graph_on(std::size_t n) {
  Graph g;
  for (std::size_t v = 0; v < n; ++v) g.add_vertex(name('v', v));
  return g;
}

MultiPoly random_entry(Rng& rng, bool polynomial) {
  auto small = [&] { return static_cast<long>(uniform_index(rng, 0, 6)) - 3; };
  if (!polynomial) {
    Rational r(small(), static_cast<long>(uniform_index(rng, 1, 3)));
    r.canonicalize();
    return MultiPoly(r);
  }
  const MultiPoly u = MultiPoly::var("u"), v = MultiPoly::var("v");
  return MultiPoly(small()) + MultiPoly(small()) * u + MultiPoly(small()) * v + MultiPoly(small()) * u * v;
}

}  // namespace

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Graph random_multigraph(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  Graph g = graph_on(uniform_index(rng, 1, max_vertices));
  const std::size_t m = uniform_index(rng, 0, max_edges);
  for (std::size_t e = 0; e < m; ++e) {
    g.add_edge_by_index(name('e', e), uniform_index(rng, 0, g.num_vertices() - 1),
                        uniform_index(rng, 0, g.num_vertices() - 1));
  }
  return g;
}

Graph random_connected_multigraph(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const std::size_t n = uniform_index(rng, 1, std::min(max_vertices, max_edges + 1));
  Graph g = graph_on(n);
  const std::size_t m = uniform_index(rng, n - 1, max_edges);
  std::size_t e = 0;
  for (std::size_t v = 1; v < n; ++v, ++e) {
    const std::size_t u = uniform_index(rng, 0, v - 1);
    if (uniform_index(rng, 0, 1)) g.add_edge_by_index(name('e', e), u, v);
    else g.add_edge_by_index(name('e', e), v, u);
  }
  for (; e < m; ++e) {
    g.add_edge_by_index(name('e', e), uniform_index(rng, 0, n - 1), uniform_index(rng, 0, n - 1));
  }
  // Shuffle edge order so tree edges are not always first.
  std::vector<std::size_t> vo(n), eo(m);
  for (std::size_t i = 0; i < n; ++i) vo[i] = i;
  for (std::size_t i = 0; i < m; ++i) eo[i] = i;
  std::shuffle(eo.begin(), eo.end(), rng);
  return relabeled(g, vo, eo);
}

Graph with_random_legs(Rng& rng, const Graph& g, std::size_t legs) {
  Graph out = g;
  for (std::size_t l = 0; l < legs; ++l) {
    out.add_leg_by_index(name('f', l), uniform_index(rng, 0, g.num_vertices() - 1),
                         l % 2 ? LegDirection::Out : LegDirection::In);
  }
  return out;
}

RibbonGraph random_rotation(Rng& rng, const Graph& g) {
  Rotation rot = with_default_rotation(g).rotation();
  for (auto& r : rot) std::shuffle(r.begin(), r.end(), rng);
  return RibbonGraph(g, std::move(rot));
}

Graph random_reorientation(Rng& rng, const Graph& g) {
  Graph out = g;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (uniform_index(rng, 0, 1)) out.reverse_edge(e);
  }
  return out;
}

Graph random_phi4_graph(Rng& rng, int max_loops) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t n = uniform_index(rng, 1, static_cast<std::size_t>(max_loops) + 1);
    const std::size_t legs = uniform_index(rng, 0, 1) ? 4 : 2;
    if (4 * n < legs + 2) continue;
    std::vector<std::size_t> stubs;
    for (std::size_t v = 0; v < n; ++v) {
      for (int k = 0; k < 4; ++k) stubs.push_back(v);
    }
    std::shuffle(stubs.begin(), stubs.end(), rng);
    Graph g = graph_on(n);
    for (std::size_t l = 0; l < legs; ++l) {
      g.add_leg_by_index(name('f', l), stubs[l], l % 2 ? LegDirection::Out : LegDirection::In);
    }
    for (std::size_t i = legs, e = 0; i + 1 < stubs.size(); i += 2, ++e) {
      g.add_edge_by_index(name('e', e), stubs[i], stubs[i + 1]);
    }
    if (g.num_edges() == 0 || !is_one_pi(g) || loop_number(g) > max_loops) continue;
    return g;
  }
  throw ArithmeticError("random_phi4_graph: no graph found");
}

ExternalAssignment random_momenta(Rng& rng, const Graph& g) {
  ExternalAssignment ext;
  Momentum total;
  for (std::size_t l = 0; l < g.num_legs(); ++l) {
    const Leg& leg = g.legs()[l];
    ExternalMomentum m;
    m.sign = leg.sign();
    if (l + 1 < g.num_legs()) {
      for (auto& c : m.p.c) c = static_cast<long>(uniform_index(rng, 0, 6)) - 3;
      total += m.sign * m.p;
    } else {
      m.p = -m.sign * total;
    }
    ext.emplace(leg.id, m);
  }
  return ext;
}

PolyMatrix random_skew_matrix(Rng& rng, std::size_t n, bool polynomial) {
  PolyMatrix a = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      a[i][j] = random_entry(rng, polynomial);
      a[j][i] = -a[i][j];
    }
  }
  return a;
}

PolyMatrix random_diagonal_matrix(Rng& rng, std::size_t n, bool polynomial) {
  PolyMatrix d = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) d[i][i] = random_entry(rng, polynomial);
  return d;
}

}  // namespace feyncomb
