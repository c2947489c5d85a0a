#pragma once

// Exact determinants and Pfaffians over the polynomial ring.

#include <cstddef>
#include <vector>

#include "feyncomb/graph.hpp"
#include "feyncomb/poly.hpp"

namespace feyncomb {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

PolyMatrix zero_matrix(std::size_t n);
PolyMatrix transpose(const PolyMatrix& m);

/// Cofactor expansion along rows, memoized on the set of used columns.
MultiPoly det(const PolyMatrix& m);

/// Signed sum over perfect matchings; the A12 A34 ... term has sign +1.
/// Odd dimension gives 0. Throws PreconditionError unless skew-symmetric.
MultiPoly pfaffian(const PolyMatrix& a);
/// Expansion along the first row.
MultiPoly pfaffian_recursive(const PolyMatrix& a);

/// [[A, D], [-D, -A]] for diagonal D and skew A, both n x n.
PolyMatrix skew_assembly(const PolyMatrix& d, const PolyMatrix& a);
/// (-1)^{n(n-1)/2}
int pfaffian_sign_constant(std::size_t n);
/// det(D + A) == sign * Pf(skew_assembly(D, A)).
bool det_d_plus_a_identity(const PolyMatrix& d, const PolyMatrix& a, int sign);
bool det_d_plus_a_identity(const PolyMatrix& d, const PolyMatrix& a);

/// Kirchhoff: determinant of the reduced Laplacian; self-loops ignored.
Integer matrix_tree_count(const Graph& g);

}  // namespace feyncomb
