#pragma once

// Multigraphs with external legs.
//
// Self-loops and parallel edges are allowed. Internal edges carry an
// orientation (tail -> head) used only for momentum routing and the
// incidence matrix; external legs hang off a single vertex and never count
// toward |E|, rank, nullity or connectivity.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace feyncomb {

enum class LegDirection { In, Out };

struct Edge {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
  bool is_self_loop() const { return tail == head; }
};

struct Leg {
  std::string id;
  std::size_t vertex = 0;
  LegDirection dir = LegDirection::In;
  /// +1 for ingoing momentum, -1 for outgoing.
  int sign() const { return dir == LegDirection::In ? 1 : -1; }
};

class Graph {
 public:
  std::size_t add_vertex(const std::string& id);
  std::size_t add_edge(const std::string& id, const std::string& tail, const std::string& head);
  std::size_t add_edge_by_index(const std::string& id, std::size_t tail, std::size_t head);
  std::size_t add_leg(const std::string& id, const std::string& vertex, LegDirection dir);
  std::size_t add_leg_by_index(const std::string& id, std::size_t vertex, LegDirection dir);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Leg>& legs() const { return legs_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_legs() const { return legs_.size(); }

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;
  std::optional<std::size_t> find_leg(const std::string& id) const;
  /// Throws InputError for unknown ids.
  std::size_t vertex_index(const std::string& id) const;
  std::size_t edge_index(const std::string& id) const;

  /// Half-edges at v: internal edge ends (loops count twice) plus legs.
  std::size_t degree(std::size_t v) const;

  /// Removes vertex v, which must have no incident edges or legs.
  void remove_isolated_vertex(std::size_t v);
  void remove_edge_at(std::size_t e);
  void remove_leg_at(std::size_t l);
  void set_edge_ends(std::size_t e, std::size_t tail, std::size_t head);
  void set_leg_vertex(std::size_t l, std::size_t v);
  void reverse_edge(std::size_t e);

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void check_fresh_line_id(const std::string& id) const;

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<Leg> legs_;
};

bool operator==(const Edge& a, const Edge& b);
bool operator==(const Leg& a, const Leg& b);

/// A set of internal edges of a host graph, indexed by the host's edge order.
class EdgeSubset {
 public:
  static constexpr std::size_t kMaxEdges = 63;

  EdgeSubset() = default;
  explicit EdgeSubset(std::uint64_t bits) : bits_(bits) {}
  static EdgeSubset all(std::size_t num_edges);
  static EdgeSubset of(const std::vector<std::size_t>& indices);

  bool contains(std::size_t e) const { return (bits_ >> e) & 1U; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }
  EdgeSubset with(std::size_t e) const { return EdgeSubset(bits_ | (std::uint64_t{1} << e)); }
  EdgeSubset without(std::size_t e) const { return EdgeSubset(bits_ & ~(std::uint64_t{1} << e)); }
  bool is_subset_of(EdgeSubset other) const { return (bits_ & ~other.bits_) == 0; }
  std::vector<std::size_t> indices() const;

  friend bool operator==(EdgeSubset, EdgeSubset) = default;
  friend auto operator<=>(EdgeSubset a, EdgeSubset b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

/// Throws InputError if g has too many edges for subset enumeration.
void require_enumerable(const Graph& g);

/// Component id of each vertex in the spanning subgraph (V, A); ids are
/// assigned in order of the lowest vertex index of each component.
std::vector<std::size_t> component_labels(const Graph& g, EdgeSubset a);
std::size_t components(const Graph& g, EdgeSubset a);
int rank(const Graph& g, EdgeSubset a);
int nullity(const Graph& g, EdgeSubset a);
bool is_connected(const Graph& g);
/// Loop number of the whole graph.
int loop_number(const Graph& g);

enum class EdgeKind { Bridge, SelfLoop, Regular };
EdgeKind classify_edge(const Graph& g, std::size_t e);
const char* to_string(EdgeKind kind);

/// Removes edge `id`; all other ids are preserved.
Graph delete_edge(const Graph& g, const std::string& id);
/// Identifies the ends of edge `id` (the merged vertex keeps the tail's id)
/// and removes it. Contracting a self-loop is the same as deleting it.
Graph contract_edge(const Graph& g, const std::string& id);

std::vector<EdgeSubset> spanning_trees(const Graph& g);

struct TwoTree {
  EdgeSubset edges;
  /// 0 or 1 for each vertex; side 0 holds vertex 0.
  std::vector<int> side;
  /// Leg indices attached to each side.
  std::vector<std::size_t> legs[2];
};
std::vector<TwoTree> spanning_two_trees(const Graph& g);

/// Rows indexed by internal edges, columns by vertices. +1 where the edge
/// leaves the vertex, -1 where it enters, 0 otherwise and for self-loops.
std::vector<std::vector<int>> incidence_matrix(const Graph& g);

/// Connected and bridgeless.
bool is_one_pi(const Graph& g);

/// Isomorphism-class label of the graph with its per-vertex external leg
/// counts. Edge orientation, ids and leg directions are ignored.
std::string canonical_form(const Graph& g);

/// Same graph with vertices, edges and legs listed in the given orders
/// (permutations of the index ranges).
Graph relabeled(const Graph& g, const std::vector<std::size_t>& vertex_order,
                const std::vector<std::size_t>& edge_order);

}  // namespace feyncomb
