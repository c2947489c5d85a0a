#pragma once

// Tutte family on graphs, Bollobas-Riordan family on ribbon graphs.
//
// Every polynomial has a subset-sum route (the reference) and a
// deletion/contraction route. External legs are ignored throughout.

#include <cstdint>
#include <string>

#include "feyncomb/graph.hpp"
#include "feyncomb/poly.hpp"
#include "feyncomb/ribbon.hpp"

namespace feyncomb {

enum class Method { SubsetSum, DeleteContract };

struct PolyOptions {
  Method method = Method::SubsetSum;
  /// Deletion/contraction only: cache intermediate results by isomorphism class.
  bool memoize = true;
  /// Worker threads for the subset sum and the top of the d/c recursion.
  unsigned threads = 1;
};

/// "b.<edge id>"
std::string beta_var(const std::string& edge_id);

MultiPoly tutte(const Graph& g, const PolyOptions& opts = {});
/// Z(q, beta) = sum over A of q^k(A) prod_{e in A} b.e
MultiPoly multivariate_tutte(const Graph& g, const PolyOptions& opts = {});

/// Z at b.e = y-1, q = (x-1)(y-1) equals (x-1)^k(E) (y-1)^|V| T.
bool check_tutte_relation(const Graph& g);

/// Polynomial in k. Throw PreconditionError for disconnected graphs.
MultiPoly chromatic(const Graph& g);
MultiPoly flow_poly(const Graph& g);

/// Brute force over all k^|V| colourings.
std::uint64_t count_colorings_oracle(const Graph& g, unsigned k);
/// Brute force over all nowhere-zero Z_k assignments, checking conservation.
std::uint64_t count_flows_oracle(const Graph& g, unsigned k);

/// R(x, y, z) = sum over H of (x-1)^{r(E)-r(H)} y^n(H) z^{k(H)-F(H)+n(H)}
MultiPoly bollobas_riordan(const RibbonGraph& rg, const PolyOptions& opts = {});
/// sum over H of x^k(H) prod_{e in H} b.e z^F(H)
MultiPoly multivariate_br(const RibbonGraph& rg, const PolyOptions& opts = {});

/// R(x, y-1, 1) == T(x, y).
bool check_br_tutte_specialization(const RibbonGraph& rg);

Graph without_legs(const Graph& g);
RibbonGraph without_legs(const RibbonGraph& rg);

}  // namespace feyncomb
