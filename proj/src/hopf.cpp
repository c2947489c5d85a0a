#include "feyncomb/hopf.hpp"

#include <functional>
#include <set>

#include "feyncomb/errors.hpp"

namespace feyncomb {

Model parse_model(const std::string& name) {
  if (name == "phi4") return Model::Phi4;
  if (name == "gw") return Model::GwRibbon;
  if (name == "core") return Model::Core;
  throw InputError("unknown model '" + name + "' (expected phi4, gw or core)");
}

const char* to_string(Model m) {
  switch (m) {
    case Model::Phi4: return "phi4";
    case Model::GwRibbon: return "gw";
    case Model::Core: return "core";
  }
  return "?";
}

GraphSum graph_sum(const GraphMonomial& m, std::int64_t c) {
  GraphSum s;
  GraphMonomial sorted = m;
  std::sort(sorted.begin(), sorted.end());
  s.add({sorted}, c);
  return s;
}

std::string to_string(const GraphMonomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? " * " : "") + m[i];
  return out;
}

template <std::size_t N>
std::string to_string(const Tensor<N>& t) {
  if (t.is_zero()) return "0\n";
  std::string out;
  for (const auto& [key, c] : t.terms()) {
    out += (c < 0 ? "-" : "+") + std::to_string(c < 0 ? -c : c) + "  ";
    for (std::size_t i = 0; i < N; ++i) out += (i ? "  (x)  " : "") + to_string(key[i]);
    out += '\n';
  }
  return out;
}

template std::string to_string(const Tensor<1>&);
template std::string to_string(const Tensor<2>&);
template std::string to_string(const Tensor<3>&);

// ---------------------------------------------------------------- subgraphs

std::vector<std::size_t> subgraph_vertices(const Graph& g, const Subgraph& s) {
  std::set<std::size_t> vs;
  for (auto e : s.edges.indices()) {
    vs.insert(g.edges()[e].tail);
    vs.insert(g.edges()[e].head);
  }
  return {vs.begin(), vs.end()};
}

int subgraph_external_legs(const Graph& g, const std::vector<std::size_t>& vertices, EdgeSubset edges) {
  int half_edges = 0;
  for (auto v : vertices) half_edges += static_cast<int>(g.degree(v));
  return half_edges - 2 * static_cast<int>(edges.size());
}

int subgraph_external_legs(const Graph& g, const Subgraph& s) {
  return subgraph_external_legs(g, subgraph_vertices(g, s), s.edges);
}

namespace {

struct Blueprint {
  struct E {
    std::string id, tail, head;
  };
  struct L {
    std::string id, vertex;
    LegDirection dir;
  };
  std::vector<std::string> vertices;
  std::vector<E> edges;
  std::vector<L> legs;
  std::vector<std::vector<std::string>> rotation;  // dart names, per vertex

  RibbonGraph build() const {
    Graph g;
    for (const auto& v : vertices) g.add_vertex(v);
    for (const auto& e : edges) g.add_edge(e.id, e.tail, e.head);
    for (const auto& l : legs) g.add_leg(l.id, l.vertex, l.dir);
    Rotation rot(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      for (const auto& d : rotation[v]) rot[v].push_back(parse(g, d));
    }
    return RibbonGraph(std::move(g), std::move(rot));
  }

  static Dart parse(const Graph& g, const std::string& name) {
    if (auto l = g.find_leg(name)) return {Dart::Kind::Leg, *l};
    const auto dot = name.rfind('.');
    if (dot != std::string::npos) {
      if (auto e = g.find_edge(name.substr(0, dot))) {
        if (name.substr(dot) == ".t") return {Dart::Kind::Tail, *e};
        if (name.substr(dot) == ".h") return {Dart::Kind::Head, *e};
      }
    }
    throw InputError("unknown half-edge '" + name + "'");
  }
};

}  // namespace

RibbonGraph extract_subgraph(const RibbonGraph& rg, const Subgraph& s) {
  const Graph& g = rg.graph();
  Blueprint bp;
  for (auto v : subgraph_vertices(g, s)) {
    bp.vertices.push_back(g.vertices()[v]);
    std::vector<std::string> rot;
    for (const auto& d : rg.rotation()[v]) {
      const std::string name = rg.dart_name(d);
      if (!d.is_leg() && s.edges.contains(d.index)) {
        rot.push_back(name);
        continue;
      }
      const LegDirection dir = d.is_leg() ? g.legs()[d.index].dir : LegDirection::In;
      bp.legs.push_back({name, g.vertices()[v], dir});
      rot.push_back(name);
    }
    bp.rotation.push_back(std::move(rot));
  }
  for (auto e : s.edges.indices()) {
    const Edge& edge = g.edges()[e];
    bp.edges.push_back({edge.id, g.vertices()[edge.tail], g.vertices()[edge.head]});
  }
  return bp.build();
}

RibbonGraph cograph(const RibbonGraph& rg, const Family& family) {
  const Graph& g = rg.graph();
  std::vector<int> member_of(g.num_vertices(), -1);
  std::vector<bool> shrunk(g.num_edges(), false);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (auto v : subgraph_vertices(g, family[i])) {
      if (member_of[v] >= 0) throw PreconditionError("cograph needs vertex-disjoint subgraphs");
      member_of[v] = static_cast<int>(i);
    }
    for (auto e : family[i].edges.indices()) shrunk[e] = true;
  }
  // Each member becomes the vertex of its lowest-index vertex.
  std::vector<std::string> image(g.num_vertices());
  std::vector<bool> first(g.num_vertices(), false);
  std::vector<bool> seen(family.size(), false);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const int m = member_of[v];
    if (m < 0) {
      image[v] = g.vertices()[v];
      first[v] = true;
    } else {
      if (!seen[static_cast<std::size_t>(m)]) first[v] = true;
      seen[static_cast<std::size_t>(m)] = true;
    }
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (member_of[v] < 0) continue;
    for (std::size_t w = 0; w < g.num_vertices(); ++w) {
      if (member_of[w] == member_of[v]) {
        image[v] = g.vertices()[w];
        break;
      }
    }
  }

  Blueprint bp;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!first[v]) continue;
    bp.vertices.push_back(image[v]);
    std::vector<std::string> rot;
    if (member_of[v] < 0) {
      for (const auto& d : rg.rotation()[v]) rot.push_back(rg.dart_name(d));
    } else {
      const RibbonGraph piece = extract_subgraph(rg, family[static_cast<std::size_t>(member_of[v])]);
      for (const auto& f : faces(piece)) {
        for (const auto& d : f.darts) {
          if (d.is_leg()) rot.push_back(piece.graph().legs()[d.index].id);
        }
      }
    }
    bp.rotation.push_back(std::move(rot));
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (shrunk[e]) continue;
    const Edge& edge = g.edges()[e];
    bp.edges.push_back({edge.id, image[edge.tail], image[edge.head]});
  }
  for (const auto& l : g.legs()) bp.legs.push_back({l.id, image[l.vertex], l.dir});
  return bp.build();
}

// ---------------------------------------------------------------- formal amplitudes

void FormalAmplitude::add(const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto& slot = terms_[m];
  slot += c;
  if (slot == 0) terms_.erase(m);
}

FormalAmplitude FormalAmplitude::constant(std::int64_t c) {
  FormalAmplitude a;
  a.add({}, c);
  return a;
}

FormalAmplitude FormalAmplitude::one() { return constant(1); }

FormalAmplitude FormalAmplitude::atom(const std::string& name) {
  FormalAmplitude a;
  a.add({name}, 1);
  return a;
}

FormalAmplitude FormalAmplitude::phi(const GraphMonomial& m) {
  FormalAmplitude a = one();
  for (const auto& l : m) a = a * atom("Phi(" + l + ")");
  return a;
}

FormalAmplitude& FormalAmplitude::operator+=(const FormalAmplitude& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

FormalAmplitude& FormalAmplitude::operator-=(const FormalAmplitude& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

FormalAmplitude FormalAmplitude::operator-() const {
  FormalAmplitude a;
  return a -= *this;
}

FormalAmplitude operator*(const FormalAmplitude& a, const FormalAmplitude& b) {
  FormalAmplitude out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      FormalAmplitude::Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out.add(m, ca * cb);
    }
  }
  return out;
}

namespace {

std::string monomial_string(const FormalAmplitude::Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "*" : "") + m[i];
  return s;
}

}  // namespace

std::string FormalAmplitude::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1 || m.empty()) {
      out += std::to_string(mag);
      if (!m.empty()) out += "*";
    }
    if (!m.empty()) out += monomial_string(m);
  }
  return out;
}

FormalAmplitude apply_t(const FormalAmplitude& x) {
  FormalAmplitude out;
  for (const auto& [m, c] : x.terms()) {
    out += FormalAmplitude::constant(c) * FormalAmplitude::atom("T[" + monomial_string(m) + "]");
  }
  return out;
}

// ---------------------------------------------------------------- Hopf algebra

HopfAlgebra::HopfAlgebra(HopfOptions opts) : opts_(opts) {}

std::string HopfAlgebra::label(const RibbonGraph& g) {
  if (g.graph().num_edges() == 0) return "";
  std::string l = opts_.model == Model::GwRibbon ? canonical_form(g) : canonical_form(g.graph());
  registry_.try_emplace(l, g);
  return l;
}

const RibbonGraph& HopfAlgebra::graph_of(const std::string& label) const {
  auto it = registry_.find(label);
  if (it == registry_.end()) throw InputError("unregistered graph label '" + label + "'");
  return it->second;
}

int HopfAlgebra::grading(const std::string& label) const {
  return label.empty() ? 0 : loop_number(graph_of(label).graph());
}

int HopfAlgebra::grading(const GraphMonomial& m) const {
  int n = 0;
  for (const auto& l : m) n += grading(l);
  return n;
}

bool HopfAlgebra::is_divergent(const RibbonGraph& host, const Subgraph& s) const {
  const Graph& g = host.graph();
  if (s.edges.empty()) return false;
  if (!opts_.tadpoles_divergent && s.edges.size() == 1 && g.edges()[s.edges.indices().front()].is_self_loop()) {
    return false;
  }
  const int legs = subgraph_external_legs(g, s);
  if (opts_.model != Model::Core && legs != 2 && legs != 4) return false;
  const RibbonGraph piece = extract_subgraph(host, s);
  if (!is_one_pi(piece.graph())) return false;
  return opts_.model != Model::GwRibbon || is_planar_regular(piece);
}

std::vector<Subgraph> HopfAlgebra::divergent_subgraphs(const RibbonGraph& g) const {
  require_enumerable(g.graph());
  const std::uint64_t all = EdgeSubset::all(g.graph().num_edges()).bits();
  std::vector<Subgraph> out;
  for (std::uint64_t bits = 1; bits < all; ++bits) {
    Subgraph s{EdgeSubset(bits)};
    if (is_divergent(g, s)) out.push_back(s);
  }
  return out;
}

namespace {

bool vertex_disjoint(const Graph& g, const Subgraph& a, const Subgraph& b) {
  const auto va = subgraph_vertices(g, a), vb = subgraph_vertices(g, b);
  std::vector<std::size_t> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
  return common.empty();
}

bool strictly_inside(const Subgraph& a, const Subgraph& b) { return a.edges.is_subset_of(b.edges) && a.edges != b.edges; }

// All nonempty subsets of `items` whose members are pairwise compatible,
// in lexicographic order of member indices.
std::vector<Family> compatible_sets(const std::vector<Subgraph>& items,
                                    const std::function<bool(const Subgraph&, const Subgraph&)>& ok) {
  std::vector<Family> out;
  Family current;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    for (std::size_t i = from; i < items.size(); ++i) {
      if (!std::all_of(current.begin(), current.end(), [&](const Subgraph& c) { return ok(c, items[i]); })) continue;
      current.push_back(items[i]);
      out.push_back(current);
      grow(i + 1);
      current.pop_back();
    }
  };
  grow(0);
  return out;
}

}  // namespace

std::vector<Family> HopfAlgebra::divergent_families(const RibbonGraph& g) const {
  if (!is_one_pi(g.graph())) throw PreconditionError("the coproduct is defined on 1PI graphs");
  const auto subs = divergent_subgraphs(g);
  if (!opts_.include_products) {
    std::vector<Family> out;
    for (const auto& s : subs) out.push_back({s});
    return out;
  }
  const Graph& host = g.graph();
  return compatible_sets(subs, [&](const Subgraph& a, const Subgraph& b) { return vertex_disjoint(host, a, b); });
}

std::vector<Family> HopfAlgebra::zimmermann_forests(const RibbonGraph& g) const {
  if (!is_one_pi(g.graph())) throw PreconditionError("forests are defined on 1PI graphs");
  const Graph& host = g.graph();
  std::vector<Family> out{Family{}};
  auto rest = compatible_sets(divergent_subgraphs(g), [&](const Subgraph& a, const Subgraph& b) {
    return vertex_disjoint(host, a, b) || strictly_inside(a, b) || strictly_inside(b, a);
  });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace {

GraphMonomial monomial_of(std::vector<std::string> labels) {
  std::erase(labels, std::string());
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

TensorSum HopfAlgebra::coproduct(const RibbonGraph& g) {
  const std::string l = label(g);
  if (l.empty()) return TensorSum::unit();
  if (auto it = coproduct_memo_.find(l); it != coproduct_memo_.end()) return it->second;
  TensorSum d;
  d.add({GraphMonomial{l}, GraphMonomial{}}, 1);
  d.add({GraphMonomial{}, GraphMonomial{l}}, 1);
  for (const auto& fam : divergent_families(g)) {
    std::vector<std::string> parts;
    for (const auto& s : fam) parts.push_back(label(extract_subgraph(g, s)));
    d.add({monomial_of(parts), monomial_of({label(cograph(g, fam))})}, 1);
  }
  coproduct_memo_.emplace(l, d);
  return d;
}

TensorSum HopfAlgebra::coproduct(const GraphMonomial& m) {
  TensorSum d = TensorSum::unit();
  for (const auto& l : m) d = d * coproduct(graph_of(l));
  return d;
}

GraphSum HopfAlgebra::antipode(const RibbonGraph& g) {
  const std::string l = label(g);
  if (l.empty()) return GraphSum::unit();
  if (auto it = antipode_memo_.find(l); it != antipode_memo_.end()) return it->second;
  GraphSum s = graph_sum({l}, -1);
  for (const TensorSum delta = coproduct(g); const auto& [key, c] : delta.terms()) {
    if (key[0].empty() || key[1].empty()) continue;
    GraphSum t = antipode(key[0]) * graph_sum(key[1]);
    t *= -c;
    s += t;
  }
  antipode_memo_.emplace(l, s);
  return s;
}

GraphSum HopfAlgebra::antipode(const GraphMonomial& m) {
  GraphSum s = GraphSum::unit();
  for (const auto& l : m) s = s * antipode(graph_of(l));
  return s;
}

std::int64_t HopfAlgebra::counit(const GraphSum& x) {
  auto it = x.terms().find(GraphSum::Key{});
  return it == x.terms().end() ? 0 : it->second;
}

bool HopfAlgebra::check_coassociativity(const RibbonGraph& g) {
  TripleTensor left, right;
  for (const TensorSum delta = coproduct(g); const auto& [key, c] : delta.terms()) {
    for (const TensorSum inner = coproduct(key[0]); const auto& [k2, c2] : inner.terms()) {
      left.add({k2[0], k2[1], key[1]}, c * c2);
    }
    for (const TensorSum inner = coproduct(key[1]); const auto& [k2, c2] : inner.terms()) {
      right.add({key[0], k2[0], k2[1]}, c * c2);
    }
  }
  return left == right;
}

bool HopfAlgebra::check_hopf_axioms(const RibbonGraph& g) {
  const std::string l = label(g);
  const GraphSum expected = l.empty() ? GraphSum::unit() : GraphSum();
  GraphSum left, right;
  for (const TensorSum delta = coproduct(g); const auto& [key, c] : delta.terms()) {
    GraphSum a = antipode(key[0]) * graph_sum(key[1]);
    GraphSum b = graph_sum(key[0]) * antipode(key[1]);
    a *= c;
    b *= c;
    left += a;
    right += b;
  }
  return left == expected && right == expected;
}

bool HopfAlgebra::check_counit(const RibbonGraph& g) {
  const std::string l = label(g);
  const GraphSum self = graph_sum(monomial_of({l}));
  GraphSum left, right;
  for (const TensorSum delta = coproduct(g); const auto& [key, c] : delta.terms()) {
    if (key[0].empty()) left += graph_sum(key[1], c);
    if (key[1].empty()) right += graph_sum(key[0], c);
  }
  return left == self && right == self;
}

bool HopfAlgebra::check_grading(const RibbonGraph& g) {
  const int n = grading(monomial_of({label(g)}));
  for (const TensorSum delta = coproduct(g); const auto& [key, c] : delta.terms()) {
    if (grading(key[0]) + grading(key[1]) != n) return false;
  }
  return true;
}

// ---------------------------------------------------------------- renormalization

FormalAmplitude HopfAlgebra::forest_term(const RibbonGraph& g, const Subgraph& s, const Family& forest) {
  const RibbonGraph piece = extract_subgraph(g, s);
  Family kids;
  FormalAmplitude counterterms = FormalAmplitude::one();
  for (const auto& c : forest) {
    if (!strictly_inside(c, s)) continue;
    const bool maximal = std::none_of(forest.begin(), forest.end(), [&](const Subgraph& o) {
      return strictly_inside(c, o) && strictly_inside(o, s);
    });
    if (!maximal) continue;
    std::vector<std::size_t> local;
    for (auto e : c.edges.indices()) local.push_back(piece.graph().edge_index(g.graph().edges()[e].id));
    kids.push_back({EdgeSubset::of(local)});
    counterterms = counterterms * -apply_t(forest_term(g, c, forest));
  }
  return FormalAmplitude::phi(monomial_of({label(cograph(piece, kids))})) * counterterms;
}

FormalAmplitude HopfAlgebra::bogoliubov_forest(const RibbonGraph& g) {
  const Subgraph whole{EdgeSubset::all(g.graph().num_edges())};
  FormalAmplitude out;
  for (const auto& f : zimmermann_forests(g)) out += forest_term(g, whole, f);
  return out;
}

FormalAmplitude HopfAlgebra::rbar(const std::string& l) {
  if (l.empty()) return FormalAmplitude::one();
  if (auto it = rbar_memo_.find(l); it != rbar_memo_.end()) return it->second;
  const RibbonGraph g = graph_of(l);
  FormalAmplitude r = FormalAmplitude::phi({l});
  for (const TensorSum delta = coproduct(g); const auto& [key, c] : delta.terms()) {
    if (key[0].empty() || key[1].empty()) continue;
    r += FormalAmplitude::constant(c) * twisted_antipode(key[0]) * FormalAmplitude::phi(key[1]);
  }
  rbar_memo_.emplace(l, r);
  return r;
}

FormalAmplitude HopfAlgebra::bogoliubov_hopf(const RibbonGraph& g) { return rbar(label(g)); }

FormalAmplitude HopfAlgebra::twisted_antipode(const RibbonGraph& g) {
  const std::string l = label(g);
  if (l.empty()) return FormalAmplitude::one();
  return -apply_t(rbar(l));
}

FormalAmplitude HopfAlgebra::twisted_antipode(const GraphMonomial& m) {
  FormalAmplitude a = FormalAmplitude::one();
  for (const auto& l : m) a = a * twisted_antipode(graph_of(l));
  return a;
}

FormalAmplitude HopfAlgebra::character(Character c, const GraphMonomial& m) {
  switch (c) {
    case Character::Epsilon: return m.empty() ? FormalAmplitude::one() : FormalAmplitude();
    case Character::Phi: return FormalAmplitude::phi(m);
    case Character::PhiMinus: return twisted_antipode(m);
  }
  return {};
}

FormalAmplitude HopfAlgebra::convolution(Character f, Character h, const RibbonGraph& g) {
  FormalAmplitude out;
  for (const TensorSum delta = coproduct(g); const auto& [key, c] : delta.terms()) {
    out += FormalAmplitude::constant(c) * character(f, key[0]) * character(h, key[1]);
  }
  return out;
}

FormalAmplitude HopfAlgebra::renormalized(const RibbonGraph& g) {
  return convolution(Character::PhiMinus, Character::Phi, g);
}

// ---------------------------------------------------------------- insertion

namespace {

// Legs of a ribbon graph in boundary-walk order, face after face.
std::vector<std::size_t> legs_in_walk_order(const RibbonGraph& rg) {
  std::vector<std::size_t> out;
  for (const auto& f : faces(rg)) {
    for (const auto& d : f.darts) {
      if (d.is_leg()) out.push_back(d.index);
    }
  }
  return out;
}

bool is_cyclic_shift(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[(i + s) % a.size()] == b[i];
    if (same) return true;
  }
  return false;
}

}  // namespace

Insertion insert(const RibbonGraph& host, const RibbonGraph& inner, const Gluing& gluing, const std::string& prefix,
                 bool check_cyclic_order) {
  const Graph& h = host.graph();
  const Graph& in = inner.graph();
  if (gluing.legs.size() != in.num_legs()) {
    throw InputError("gluing must name every leg of the inserted graph");
  }
  // host half-edge name -> inserted leg index
  std::map<std::string, std::size_t> glued;
  for (const auto& [leg, target] : gluing.legs) {
    auto l = in.find_leg(leg);
    if (!l) throw InputError("gluing names unknown leg '" + leg + "'");
    if (!glued.emplace(target, *l).second) throw InputError("half-edge '" + target + "' glued twice");
  }
  std::vector<std::string> expected;
  std::size_t vertex = 0;
  std::size_t edge = 0;
  if (gluing.target == Gluing::Target::Vertex) {
    vertex = h.vertex_index(gluing.at);
    for (const auto& d : host.rotation()[vertex]) expected.push_back(host.dart_name(d));
  } else {
    edge = h.edge_index(gluing.at);
    expected = {gluing.at + ".t", gluing.at + ".h"};
  }
  if (expected.size() != glued.size()) {
    throw InputError("arity mismatch: " + std::to_string(expected.size()) + " half-edges, " +
                     std::to_string(glued.size()) + " legs");
  }
  for (const auto& name : expected) {
    if (!glued.count(name)) throw InputError("half-edge '" + name + "' is not glued");
  }
  if (check_cyclic_order) {
    std::vector<std::string> walk;
    std::map<std::size_t, std::string> target_of;
    for (const auto& [name, l] : glued) target_of[l] = name;
    for (auto l : legs_in_walk_order(inner)) walk.push_back(target_of.at(l));
    if (!is_cyclic_shift(walk, expected)) throw InputError("gluing does not respect the cyclic order");
  }

  auto inner_vertex = [&](std::size_t leg) { return prefix + in.vertices()[in.legs()[leg].vertex]; };
  // Name of the dart that replaces inserted leg l at its inner vertex.
  std::map<std::size_t, std::string> replace;
  Blueprint bp;
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    if (gluing.target == Gluing::Target::Vertex && v == vertex) continue;
    bp.vertices.push_back(h.vertices()[v]);
    std::vector<std::string> rot;
    for (const auto& d : host.rotation()[v]) {
      std::string name = host.dart_name(d);
      if (gluing.target == Gluing::Target::Edge && !d.is_leg() && d.index == edge) {
        name = gluing.at + (d.kind == Dart::Kind::Tail ? "_t.t" : "_h.h");
      }
      rot.push_back(name);
    }
    bp.rotation.push_back(std::move(rot));
  }
  for (const auto& v : in.vertices()) bp.vertices.push_back(prefix + v);

  if (gluing.target == Gluing::Target::Vertex) {
    for (const auto& [name, l] : glued) replace[l] = name;
  } else {
    replace[glued.at(gluing.at + ".t")] = gluing.at + "_t.h";
    replace[glued.at(gluing.at + ".h")] = gluing.at + "_h.t";
  }
  for (std::size_t v = 0; v < in.num_vertices(); ++v) {
    std::vector<std::string> rot;
    for (const auto& d : inner.rotation()[v]) {
      rot.push_back(d.is_leg() ? replace.at(d.index) : prefix + inner.dart_name(d));
    }
    bp.rotation.push_back(std::move(rot));
  }

  // Where each host half-edge at the insertion vertex now ends.
  auto end_vertex = [&](std::size_t e, Dart::Kind kind) {
    const Edge& ed = h.edges()[e];
    const std::size_t v = kind == Dart::Kind::Tail ? ed.tail : ed.head;
    if (gluing.target == Gluing::Target::Vertex && v == vertex) {
      return inner_vertex(glued.at(host.dart_name({kind, e})));
    }
    return h.vertices()[v];
  };
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    if (gluing.target == Gluing::Target::Edge && e == edge) {
      bp.edges.push_back({gluing.at + "_t", h.vertices()[h.edges()[e].tail], inner_vertex(glued.at(gluing.at + ".t"))});
      bp.edges.push_back({gluing.at + "_h", inner_vertex(glued.at(gluing.at + ".h")), h.vertices()[h.edges()[e].head]});
      continue;
    }
    bp.edges.push_back({h.edges()[e].id, end_vertex(e, Dart::Kind::Tail), end_vertex(e, Dart::Kind::Head)});
  }
  const std::size_t first_inner = bp.edges.size();
  for (const auto& e : in.edges()) {
    bp.edges.push_back({prefix + e.id, prefix + in.vertices()[e.tail], prefix + in.vertices()[e.head]});
  }
  for (std::size_t l = 0; l < h.num_legs(); ++l) {
    const Leg& leg = h.legs()[l];
    std::string at = h.vertices()[leg.vertex];
    if (gluing.target == Gluing::Target::Vertex && leg.vertex == vertex) at = inner_vertex(glued.at(leg.id));
    bp.legs.push_back({leg.id, at, leg.dir});
  }

  Insertion out{bp.build(), {}};
  std::vector<std::size_t> image;
  for (std::size_t e = first_inner; e < bp.edges.size(); ++e) image.push_back(e);
  out.image = {EdgeSubset::of(image)};
  return out;
}

}  // namespace feyncomb
