#pragma once

// Connes-Kreimer Hopf algebra of Feynman graphs and BPHZ renormalization.
//
// Graphs are handled as ribbon graphs; the commutative models ignore the
// rotation. Generators are canonical labels, and a graph without internal
// edges is identified with the unit.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "feyncomb/graph.hpp"
#include "feyncomb/ribbon.hpp"

namespace feyncomb {

enum class Model { Phi4, GwRibbon, Core };
Model parse_model(const std::string& name);
const char* to_string(Model m);

struct HopfOptions {
  Model model = Model::Phi4;
  /// Single self-loop subgraphs count as divergent.
  bool tadpoles_divergent = true;
  /// Families may hold several vertex-disjoint subgraphs. Turning this off
  /// is only useful to exhibit the resulting failure of coassociativity.
  bool include_products = true;
};

/// Sorted multiset of generator labels; empty = 1.
using GraphMonomial = std::vector<std::string>;

/// Integer combinations of N-fold tensors of graph monomials.
template <std::size_t N>
class Tensor {
 public:
  using Key = std::array<GraphMonomial, N>;
  using Terms = std::map<Key, std::int64_t>;

  void add(const Key& k, std::int64_t c) {
    if (c == 0) return;
    auto& slot = terms_[k];
    slot += c;
    if (slot == 0) terms_.erase(k);
  }
  Tensor& operator+=(const Tensor& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Tensor& operator*=(std::int64_t s) {
    Terms out;
    if (s != 0) {
      for (const auto& [k, c] : terms_) out.emplace(k, c * s);
    }
    terms_ = std::move(out);
    return *this;
  }
  /// Componentwise product of tensor factors.
  friend Tensor operator*(const Tensor& a, const Tensor& b) {
    Tensor out;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        Key k;
        for (std::size_t i = 0; i < N; ++i) k[i] = merge(ka[i], kb[i]);
        out.add(k, ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const Tensor&, const Tensor&) = default;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  static Tensor unit() {
    Tensor t;
    t.add(Key{}, 1);
    return t;
  }

  static GraphMonomial merge(const GraphMonomial& a, const GraphMonomial& b);

 private:
  Terms terms_;
};

template <std::size_t N>
GraphMonomial Tensor<N>::merge(const GraphMonomial& a, const GraphMonomial& b) {
  GraphMonomial m = a;
  m.insert(m.end(), b.begin(), b.end());
  std::sort(m.begin(), m.end());
  return m;
}

using GraphSum = Tensor<1>;
using TensorSum = Tensor<2>;
using TripleTensor = Tensor<3>;

GraphSum graph_sum(const GraphMonomial& m, std::int64_t c = 1);
std::string to_string(const GraphMonomial& m);
template <std::size_t N>
std::string to_string(const Tensor<N>& t);

/// A connected subgraph given by its internal edges; its vertices are the
/// ends of those edges.
struct Subgraph {
  EdgeSubset edges;
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
  friend auto operator<=>(const Subgraph&, const Subgraph&) = default;
};
using Family = std::vector<Subgraph>;

/// Vertex indices touched by the edges of s.
std::vector<std::size_t> subgraph_vertices(const Graph& g, const Subgraph& s);
/// Half-edges at the vertices of s that are not internal edges of s.
int subgraph_external_legs(const Graph& g, const Subgraph& s);
int subgraph_external_legs(const Graph& g, const std::vector<std::size_t>& vertices, EdgeSubset edges);
/// s as a ribbon graph in its own right; cut half-edges become legs named after the dart.
RibbonGraph extract_subgraph(const RibbonGraph& rg, const Subgraph& s);

/// Shrinks every member of the family to a single vertex. The new vertex
/// lists the cut half-edges in the order they appear along the member's
/// boundary.
RibbonGraph cograph(const RibbonGraph& rg, const Family& family);

/// Formal sums of products of atoms Phi(label) and T[...]. T is linear over
/// sums and scalars; a product inside T stays one atom.
class FormalAmplitude {
 public:
  using Monomial = std::vector<std::string>;  // sorted atoms
  using Terms = std::map<Monomial, std::int64_t>;

  static FormalAmplitude one();
  static FormalAmplitude constant(std::int64_t c);
  static FormalAmplitude atom(const std::string& a);
  /// Phi of a graph monomial (Phi is multiplicative; Phi(1) = 1).
  static FormalAmplitude phi(const GraphMonomial& m);

  FormalAmplitude& operator+=(const FormalAmplitude& o);
  FormalAmplitude& operator-=(const FormalAmplitude& o);
  FormalAmplitude operator-() const;
  friend FormalAmplitude operator+(FormalAmplitude a, const FormalAmplitude& b) { return a += b; }
  friend FormalAmplitude operator-(FormalAmplitude a, const FormalAmplitude& b) { return a -= b; }
  friend FormalAmplitude operator*(const FormalAmplitude& a, const FormalAmplitude& b);
  friend bool operator==(const FormalAmplitude&, const FormalAmplitude&) = default;

  const Terms& terms() const { return terms_; }
  std::string to_string() const;

 private:
  void add(const Monomial& m, std::int64_t c);
  Terms terms_;
};

/// The operator T.
FormalAmplitude apply_t(const FormalAmplitude& x);

enum class Character { Epsilon, Phi, PhiMinus };

class HopfAlgebra {
 public:
  explicit HopfAlgebra(HopfOptions opts = {});

  const HopfOptions& options() const { return opts_; }

  /// Registers g and returns its generator label ("" for edgeless graphs).
  std::string label(const RibbonGraph& g);
  /// Graph registered under a label.
  const RibbonGraph& graph_of(const std::string& label) const;
  int grading(const std::string& label) const;
  int grading(const GraphMonomial& m) const;

  bool is_divergent(const RibbonGraph& host, const Subgraph& s) const;
  /// Proper connected divergent subgraphs (nonempty, not the whole graph).
  std::vector<Subgraph> divergent_subgraphs(const RibbonGraph& g) const;
  /// Sets of pairwise vertex-disjoint divergent subgraphs. Throws
  /// PreconditionError unless g is 1PI.
  std::vector<Family> divergent_families(const RibbonGraph& g) const;
  /// Sets of divergent subgraphs, pairwise vertex-disjoint or nested,
  /// starting with the empty forest.
  std::vector<Family> zimmermann_forests(const RibbonGraph& g) const;

  TensorSum coproduct(const RibbonGraph& g);
  TensorSum coproduct(const GraphMonomial& m);
  GraphSum antipode(const RibbonGraph& g);
  GraphSum antipode(const GraphMonomial& m);
  static std::int64_t counit(const GraphSum& x);

  bool check_coassociativity(const RibbonGraph& g);
  /// m(S x id)D = m(id x S)D = u e
  bool check_hopf_axioms(const RibbonGraph& g);
  /// (e x id)D = id = (id x e)D
  bool check_counit(const RibbonGraph& g);
  /// Every term a x b of D(g) has grading(a) + grading(b) = grading(g).
  bool check_grading(const RibbonGraph& g);

  FormalAmplitude bogoliubov_forest(const RibbonGraph& g);
  FormalAmplitude twisted_antipode(const RibbonGraph& g);
  FormalAmplitude twisted_antipode(const GraphMonomial& m);
  FormalAmplitude bogoliubov_hopf(const RibbonGraph& g);
  FormalAmplitude convolution(Character f, Character h, const RibbonGraph& g);
  FormalAmplitude renormalized(const RibbonGraph& g);

 private:
  FormalAmplitude character(Character c, const GraphMonomial& m);
  FormalAmplitude forest_term(const RibbonGraph& g, const Subgraph& s, const Family& forest);
  FormalAmplitude rbar(const std::string& label);

  HopfOptions opts_;
  std::map<std::string, RibbonGraph> registry_;
  std::map<std::string, TensorSum> coproduct_memo_;
  std::map<std::string, GraphSum> antipode_memo_;
  std::map<std::string, FormalAmplitude> rbar_memo_;
};

/// How to glue an inserted graph: either into a vertex of the host (every
/// half-edge at it receives one leg of the inserted graph) or into an edge
/// (its two ends "<edge>.t" and "<edge>.h" receive the two legs).
struct Gluing {
  enum class Target { Vertex, Edge };
  Target target = Target::Vertex;
  std::string at;  // vertex id or edge id
  /// inserted leg id -> host half-edge name
  std::map<std::string, std::string> legs;
};

struct Insertion {
  RibbonGraph graph;
  Subgraph image;  // edges coming from the inserted graph
};

/// Inserts `inner` into `host`. Ids of `inner` get `prefix` prepended.
/// Ribbon graphs must have the inserted legs in the same cyclic order as the
/// half-edges they replace; otherwise InputError.
Insertion insert(const RibbonGraph& host, const RibbonGraph& inner, const Gluing& gluing,
                 const std::string& prefix = "i.", bool check_cyclic_order = true);

}  // namespace feyncomb
