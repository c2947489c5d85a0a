#pragma once

// Seeded generators for property tests and the self-test corpus.

#include <random>

#include "feyncomb/graph.hpp"
#include "feyncomb/linalg.hpp"
#include "feyncomb/parametric.hpp"
#include "feyncomb/ribbon.hpp"

namespace feyncomb {

using Rng = std::mt19937_64;

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

/// Multigraph with at most `max_edges` edges; self-loops and parallel edges allowed.
Graph random_multigraph(Rng& rng, std::size_t max_vertices, std::size_t max_edges);
/// Connected multigraph: a random spanning tree plus extra random edges.
Graph random_connected_multigraph(Rng& rng, std::size_t max_vertices, std::size_t max_edges);
/// Adds `legs` external legs at random vertices, alternating in/out.
Graph with_random_legs(Rng& rng, const Graph& g, std::size_t legs);
/// Uniformly shuffled rotation at every vertex.
RibbonGraph random_rotation(Rng& rng, const Graph& g);
/// Each edge reversed with probability 1/2.
Graph random_reorientation(Rng& rng, const Graph& g);
/// Connected 1PI graph, every vertex of degree 4 counting legs, with 2 or 4
/// legs and at most `max_loops` loops.
Graph random_phi4_graph(Rng& rng, int max_loops);
/// Small integer momenta on every leg, with the last leg fixed by conservation.
ExternalAssignment random_momenta(Rng& rng, const Graph& g);
/// Entries are small rationals, or polynomials in u, v when `polynomial` is set.
PolyMatrix random_skew_matrix(Rng& rng, std::size_t n, bool polynomial);
PolyMatrix random_diagonal_matrix(Rng& rng, std::size_t n, bool polynomial);

}  // namespace feyncomb
