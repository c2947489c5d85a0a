#include <doctest.h>

#include <set>

#include "feyncomb/errors.hpp"
#include "feyncomb/hopf.hpp"
#include "feyncomb/random_graphs.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace feyncomb;
using test_oracles::count_components;
using test_support::ribbon;

namespace {

HopfAlgebra algebra(Model m = Model::Phi4) { return HopfAlgebra(HopfOptions{m}); }

Subgraph edges(std::initializer_list<std::size_t> ids) { return {EdgeSubset::of(ids)}; }

/// Divergent connected subgraphs by brute force: connected, bridgeless, 2 or 4 cut half-edges.
std::set<std::uint64_t> divergent_oracle(const Graph& g, bool any_legs) {
  std::set<std::uint64_t> out;
  const std::uint64_t full = (std::uint64_t{1} << g.num_edges()) - 1;
  for (std::uint64_t bits = 1; bits < full; ++bits) {
    const EdgeSubset s(bits);
    std::set<std::size_t> verts;
    for (auto e : s.indices()) {
      verts.insert(g.edges()[e].tail);
      verts.insert(g.edges()[e].head);
    }
    // Connected on its own vertices: components over all vertices minus untouched ones.
    const long untouched = static_cast<long>(g.num_vertices() - verts.size());
    if (count_components(g, s) - untouched != 1) continue;
    bool bridgeless = true;
    for (auto e : s.indices()) bridgeless = bridgeless && count_components(g, s.without(e)) == count_components(g, s);
    if (!bridgeless) continue;
    long legs = 0;
    for (auto v : verts) legs += static_cast<long>(g.degree(v));
    legs -= 2 * static_cast<long>(s.size());
    if (any_legs || legs == 2 || legs == 4) out.insert(bits);
  }
  return out;
}

std::vector<std::string> legs_along_broken_face(const RibbonGraph& rg) {
  std::vector<std::string> names;
  for (const auto& f : faces(rg)) {
    for (const auto& b : face_boundary_order(rg, f)) names.push_back(rg.graph().legs()[b.leg].id);
  }
  return names;
}

}  // namespace

TEST_CASE("models") {
  CHECK(parse_model("phi4") == Model::Phi4);
  CHECK(parse_model("gw") == Model::GwRibbon);
  CHECK(parse_model("core") == Model::Core);
  CHECK_THROWS_AS(parse_model("qed"), InputError);
}

TEST_CASE("divergent subgraphs and families") {
  HopfAlgebra h = algebra();
  CHECK(h.divergent_families(ribbon("fig4")).empty());
  const auto f5 = h.divergent_families(ribbon("fig5"));
  REQUIRE(f5.size() == 1);
  CHECK(f5[0] == Family{edges({0, 1})});
  const auto tb = h.divergent_families(ribbon("two_bubble"));
  CHECK(tb.size() == 3);
  CHECK(std::count(tb.begin(), tb.end(), Family{edges({0, 1}), edges({2, 3})}) == 1);
  CHECK_THROWS_AS(h.divergent_families(ribbon("bridge")), PreconditionError);

  const Graph g5 = ribbon("fig5").graph();
  CHECK(subgraph_external_legs(g5, edges({0, 1})) == 4);
  CHECK(subgraph_external_legs(g5, {EdgeSubset::all(6)}) == 4);
}

TEST_CASE("divergent subgraphs match brute force") {
  Rng rng(71);
  for (int i = 0; i < 30; ++i) {
    const RibbonGraph g = with_default_rotation(random_phi4_graph(rng, 3));
    for (Model m : {Model::Phi4, Model::Core}) {
      HopfAlgebra h = algebra(m);
      std::set<std::uint64_t> got;
      for (const auto& s : h.divergent_subgraphs(g)) got.insert(s.edges.bits());
      CHECK(got == divergent_oracle(g.graph(), m == Model::Core));
    }
  }
}

TEST_CASE("cograph") {
  const RibbonGraph g5 = ribbon("fig5");
  const RibbonGraph c = cograph(g5, {edges({0, 1})});
  CHECK(c.graph().num_vertices() == 3);
  CHECK(c.graph().num_edges() == 4);
  CHECK(c.graph().num_legs() == 4);
  const RibbonGraph whole = cograph(g5, {{EdgeSubset::all(6)}});
  CHECK(whole.graph().num_vertices() == 1);
  CHECK(whole.graph().num_edges() == 0);
  CHECK(whole.graph().num_legs() == 4);
}

TEST_CASE("coproduct, counit, antipode on fixtures") {
  HopfAlgebra h = algebra();
  const RibbonGraph f4 = ribbon("fig4"), f5 = ribbon("fig5");
  const std::string l4 = h.label(f4), l5 = h.label(f5);
  const std::string lg = h.label(extract_subgraph(f5, edges({0, 1})));
  const std::string lc = h.label(cograph(f5, {edges({0, 1})}));
  CHECK(lg == l4);

  TensorSum d4;
  d4.add({GraphMonomial{l4}, GraphMonomial{}}, 1);
  d4.add({GraphMonomial{}, GraphMonomial{l4}}, 1);
  CHECK(h.coproduct(f4) == d4);

  TensorSum d5;
  d5.add({GraphMonomial{l5}, GraphMonomial{}}, 1);
  d5.add({GraphMonomial{}, GraphMonomial{l5}}, 1);
  d5.add({GraphMonomial{lg}, GraphMonomial{lc}}, 1);
  CHECK(h.coproduct(f5) == d5);
  CHECK(h.coproduct(GraphMonomial{}) == TensorSum::unit());

  CHECK(HopfAlgebra::counit(GraphSum::unit()) == 1);
  CHECK(HopfAlgebra::counit(graph_sum({l4})) == 0);
  GraphSum mix = graph_sum({}, 3);
  mix += graph_sum({l4}, 2);
  CHECK(HopfAlgebra::counit(mix) == 3);

  CHECK(h.antipode(f4) == graph_sum({l4}, -1));
  GraphSum s5 = graph_sum({l5}, -1);
  s5 += graph_sum(Tensor<1>::merge({lg}, {lc}), 1);
  CHECK(h.antipode(f5) == s5);
  CHECK(h.antipode(GraphMonomial{}) == GraphSum::unit());

  CHECK(h.grading(l4) == 1);
  CHECK(h.grading(l5) == 3);
  CHECK(h.grading(GraphMonomial{}) == 0);
}

TEST_CASE("Hopf identities on fixtures and random phi4 graphs") {
  std::vector<RibbonGraph> corpus;
  for (const char* f : {"fig4", "fig5", "nested_chain", "two_bubble"}) corpus.push_back(ribbon(f));
  Rng rng(73);
  for (int i = 0; i < 25; ++i) corpus.push_back(with_default_rotation(random_phi4_graph(rng, 4)));
  for (Model m : {Model::Phi4, Model::Core}) {
    HopfAlgebra h = algebra(m);
    for (const auto& g : corpus) {
      CHECK(h.check_coassociativity(g));
      CHECK(h.check_hopf_axioms(g));
      CHECK(h.check_counit(g));
      CHECK(h.check_grading(g));
    }
  }
  HopfAlgebra gw = algebra(Model::GwRibbon);
  for (const char* f : {"fig4_ribbon", "nested_chain_ribbon", "two_bubble_ribbon"}) {
    CHECK(gw.check_coassociativity(ribbon(f)));
    CHECK(gw.check_hopf_axioms(ribbon(f)));
    CHECK(gw.check_counit(ribbon(f)));
    CHECK(gw.check_grading(ribbon(f)));
  }
}

TEST_CASE("single-subgraph coproduct is not coassociative on two bubbles") {
  HopfOptions o;
  o.include_products = false;
  HopfAlgebra h(o);
  CHECK_FALSE(h.check_coassociativity(ribbon("two_bubble")));
}

TEST_CASE("tadpole subgraphs can be excluded") {
  // Excluding tadpoles stays coassociative as long as no cograph of a
  // divergent subgraph acquires a self-loop; otherwise it breaks.
  Rng rng(79);
  int clean = 0, broken = 0;
  for (int i = 0; i < 40; ++i) {
    const RibbonGraph g = with_default_rotation(random_phi4_graph(rng, 3));
    HopfOptions o;
    o.tadpoles_divergent = false;
    HopfAlgebra without(o), with = algebra();
    for (const auto& s : without.divergent_subgraphs(g)) {
      CHECK_FALSE((s.edges.size() == 1 && g.graph().edges()[s.edges.indices()[0]].is_self_loop()));
    }
    CHECK(without.divergent_subgraphs(g).size() <= with.divergent_subgraphs(g).size());
    bool makes_loop = false;
    for (const auto& s : with.divergent_subgraphs(g)) {
      const RibbonGraph c = cograph(g, {s});
      for (const auto& e : c.graph().edges()) makes_loop = makes_loop || e.is_self_loop();
    }
    if (makes_loop) {
      ++broken;
      continue;
    }
    ++clean;
    CHECK(without.check_coassociativity(g));
    CHECK(without.check_hopf_axioms(g));
  }
  CHECK(clean > 0);
  CHECK(broken > 0);
  for (const char* f : {"fig4", "fig5", "nested_chain", "two_bubble", "fig6"}) {
    HopfOptions o;
    o.tadpoles_divergent = false;
    CHECK(HopfAlgebra(o).check_coassociativity(ribbon(f)));
  }
}

TEST_CASE("gw model needs planar regular subgraphs") {
  HopfAlgebra gw = algebra(Model::GwRibbon);
  const RibbonGraph nc = ribbon("nested_chain_ribbon");
  for (const auto& s : gw.divergent_subgraphs(nc)) {
    CHECK(is_planar_regular(extract_subgraph(nc, s)));
  }
}

TEST_CASE("Zimmermann forests") {
  HopfAlgebra h = algebra();
  CHECK(h.zimmermann_forests(ribbon("fig4")) == std::vector<Family>{Family{}});
  CHECK(h.zimmermann_forests(ribbon("fig5")) == std::vector<Family>{Family{}, Family{edges({0, 1})}});
  CHECK(h.zimmermann_forests(ribbon("two_bubble")).size() == 4);
  // nested_chain: A={e1,e2}, B={e3,e4}, C={e5,e6}, AB, BC; forests respect nesting or disjointness.
  const auto nc = h.zimmermann_forests(ribbon("nested_chain"));
  for (const auto& forest : nc) {
    for (std::size_t i = 0; i < forest.size(); ++i) {
      for (std::size_t j = i + 1; j < forest.size(); ++j) {
        const EdgeSubset a = forest[i].edges, b = forest[j].edges;
        const bool nested = a.is_subset_of(b) || b.is_subset_of(a);
        std::set<std::size_t> va, vb;
        const Graph g = ribbon("nested_chain").graph();
        for (auto v : subgraph_vertices(g, forest[i])) va.insert(v);
        bool disjoint = true;
        for (auto v : subgraph_vertices(g, forest[j])) disjoint = disjoint && !va.count(v);
        CHECK((nested || disjoint));
      }
    }
  }
}

TEST_CASE("formal amplitudes and T") {
  const auto a = FormalAmplitude::atom("Phi(a)"), b = FormalAmplitude::atom("Phi(b)");
  CHECK(apply_t(a + b) == apply_t(a) + apply_t(b));
  CHECK(apply_t(FormalAmplitude::constant(3) * a) == FormalAmplitude::constant(3) * apply_t(a));
  CHECK(apply_t(a * b).terms().size() == 1);
  CHECK((a - a).terms().empty());
  CHECK(FormalAmplitude::phi({}) == FormalAmplitude::one());
  CHECK((a * b - b * a).terms().empty());
}

TEST_CASE("BPHZ on fixtures") {
  HopfAlgebra h = algebra();
  const RibbonGraph f4 = ribbon("fig4"), f5 = ribbon("fig5");
  const std::string l4 = h.label(f4), l5 = h.label(f5);
  const std::string lc = h.label(cograph(f5, {edges({0, 1})}));
  const FormalAmplitude p4 = FormalAmplitude::phi({l4}), p5 = FormalAmplitude::phi({l5}), pc = FormalAmplitude::phi({lc});

  CHECK(h.bogoliubov_forest(f4) == p4);
  CHECK(h.bogoliubov_hopf(f4) == p4);
  CHECK(h.twisted_antipode(f4) == -apply_t(p4));
  CHECK(h.renormalized(f4) == p4 - apply_t(p4));
  CHECK(h.twisted_antipode(GraphMonomial{}) == FormalAmplitude::one());

  const FormalAmplitude rbar5 = p5 - apply_t(p4) * pc;
  CHECK(h.bogoliubov_forest(f5) == rbar5);
  CHECK(h.bogoliubov_hopf(f5) == rbar5);
  CHECK(h.twisted_antipode(f5) == -apply_t(rbar5));
  CHECK(h.renormalized(f5) == rbar5 - apply_t(rbar5));
  CHECK(h.convolution(Character::Epsilon, Character::Phi, f5) == p5);

  const RibbonGraph tb = ribbon("two_bubble");
  const FormalAmplitude forest = h.bogoliubov_forest(tb);
  // {A} and {B} give the same term, so four forests collapse to three terms.
  CHECK(forest.terms().size() == 3);
  CHECK(forest == h.bogoliubov_hopf(tb));
}

TEST_CASE("BPHZ equivalence on random phi4 graphs") {
  Rng rng(83);
  for (Model m : {Model::Phi4, Model::Core}) {
    HopfAlgebra h = algebra(m);
    for (int i = 0; i < 20; ++i) {
      const RibbonGraph g = with_default_rotation(random_phi4_graph(rng, 3));
      const FormalAmplitude rb = h.bogoliubov_hopf(g);
      CHECK(rb == h.bogoliubov_forest(g));
      CHECK(h.renormalized(g) == rb - apply_t(rb));
    }
  }
}

TEST_CASE("insertion into a vertex and recovery by contraction") {
  HopfAlgebra h = algebra(Model::GwRibbon);
  const RibbonGraph host = ribbon("fig4_ribbon"), inner = ribbon("fig4_ribbon");
  const auto walk = legs_along_broken_face(inner);
  REQUIRE(walk.size() == 4);
  std::vector<std::string> targets;
  for (const auto& d : host.rotation()[0]) targets.push_back(host.dart_name(d));
  Gluing gl{Gluing::Target::Vertex, "v1", {}};
  for (std::size_t i = 0; i < 4; ++i) gl.legs[walk[i]] = targets[i];

  const Insertion ins = insert(host, inner, gl);
  const Graph& g = ins.graph.graph();
  CHECK(g.num_edges() == 4);
  CHECK(g.num_legs() == 4);
  CHECK(is_planar_regular(ins.graph));
  CHECK(h.label(cograph(ins.graph, {ins.image})) == h.label(host));
  CHECK(h.label(extract_subgraph(ins.graph, ins.image)) == h.label(inner));
  for (std::size_t v = 0; v < g.num_vertices(); ++v) CHECK(g.degree(v) == 4);

  Gluing twisted = gl;
  std::swap(twisted.legs[walk[0]], twisted.legs[walk[1]]);
  CHECK_THROWS_AS(insert(host, inner, twisted), InputError);
  CHECK_NOTHROW(insert(host, inner, twisted, "i.", false));

  Gluing short_gl = gl;
  short_gl.legs.erase(walk[0]);
  CHECK_THROWS_AS(insert(host, inner, short_gl), InputError);
}

TEST_CASE("insertion into an edge") {
  HopfAlgebra h = algebra();
  const RibbonGraph host = ribbon("fig4"), inner = ribbon("fig6");
  const Insertion ins = insert(host, inner, {Gluing::Target::Edge, "e1", {{"f1", "e1.t"}, {"f2", "e1.h"}}});
  CHECK(ins.graph.graph().num_edges() == host.graph().num_edges() + inner.graph().num_edges() + 1);
  CHECK(ins.graph.graph().num_legs() == 4);
  // Contracting the inserted loop leaves e1 subdivided by a 2-valent vertex.
  const RibbonGraph c = cograph(ins.graph, {ins.image});
  CHECK(c.graph().num_edges() == host.graph().num_edges() + 1);
  CHECK(c.graph().num_vertices() == host.graph().num_vertices() + 1);
  CHECK(h.label(extract_subgraph(ins.graph, ins.image)) == h.label(inner));
  CHECK_THROWS_AS(insert(host, ribbon("fig4"), {Gluing::Target::Edge, "e1", {{"f1", "e1.t"}, {"f2", "e1.h"}}}),
                  InputError);
}

TEST_CASE("inserting a bare vertex changes nothing") {
  HopfAlgebra h = algebra();
  Graph bare;
  bare.add_vertex("w");
  const RibbonGraph host = ribbon("fig4_ribbon");
  std::vector<std::string> targets;
  for (const auto& d : host.rotation()[0]) targets.push_back(host.dart_name(d));
  for (std::size_t i = 0; i < targets.size(); ++i) bare.add_leg("g" + std::to_string(i), "w", LegDirection::In);
  const RibbonGraph inner = with_default_rotation(bare);
  const auto walk = legs_along_broken_face(inner);
  Gluing gl{Gluing::Target::Vertex, "v1", {}};
  for (std::size_t i = 0; i < walk.size(); ++i) gl.legs[walk[i]] = targets[i];
  const Insertion ins = insert(host, inner, gl);
  CHECK(h.label(ins.graph) == h.label(host));
  CHECK(canonical_form(ins.graph) == canonical_form(host));
}
