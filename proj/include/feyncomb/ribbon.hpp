#pragma once

// Ribbon graphs as rotation systems.
//
// Every vertex carries the cyclic order of the half-edges ("darts") at it:
// two darts per internal edge (tail end, head end) and one per external leg.
// Faces are the orbits of  d -> succ(partner(d)), where succ is the next
// dart in the rotation of d's vertex and a leg is its own partner, so legs
// sit inside faces as markers without joining them. A vertex with no darts
// bounds one face of its own.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "feyncomb/graph.hpp"

namespace feyncomb {

struct Dart {
  enum class Kind { Tail, Head, Leg };
  Kind kind = Kind::Tail;
  std::size_t index = 0;  // edge index for Tail/Head, leg index for Leg

  bool is_leg() const { return kind == Kind::Leg; }
  friend bool operator==(const Dart&, const Dart&) = default;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

using Rotation = std::vector<std::vector<Dart>>;

class RibbonGraph {
 public:
  RibbonGraph() = default;
  /// Throws InputError unless each dart of g appears exactly once, at its own vertex.
  RibbonGraph(Graph graph, Rotation rotation);

  const Graph& graph() const { return graph_; }
  const Rotation& rotation() const { return rotation_; }

  std::string dart_name(const Dart& d) const;
  /// "e1.t", "e1.h" or a leg id.
  Dart parse_dart(const std::string& name) const;
  std::size_t dart_vertex(const Dart& d) const;
  /// Other end of an internal edge; a leg is its own partner.
  Dart partner(const Dart& d) const;

  friend bool operator==(const RibbonGraph&, const RibbonGraph&) = default;

 private:
  Graph graph_;
  Rotation rotation_;
};

/// Builds a ribbon graph from the edge/leg order at each vertex: darts are
/// listed in edge order then leg order.
RibbonGraph with_default_rotation(const Graph& g);

struct Face {
  std::vector<Dart> darts;                     // boundary walk, legs included
  std::optional<std::size_t> isolated_vertex;  // set for a dart-free vertex
};

/// Faces of the spanning sub-ribbon graph with internal edges `h` (all vertices and legs kept).
std::vector<Face> faces(const RibbonGraph& rg, EdgeSubset h);
std::vector<Face> faces(const RibbonGraph& rg);
std::size_t face_count(const RibbonGraph& rg, EdgeSubset h);

/// Sum of component genera from V - E + F = 2k - 2g.
int genus(const RibbonGraph& rg);
int genus(const RibbonGraph& rg, EdgeSubset h);

std::size_t broken_faces(const RibbonGraph& rg);
bool is_planar_regular(const RibbonGraph& rg);

/// Removes both darts of the edge from the rotations.
RibbonGraph ribbon_delete(const RibbonGraph& rg, const std::string& id);
/// Splices the rotations of the two end vertices at the removed darts.
/// Throws PreconditionError for a self-loop.
RibbonGraph ribbon_contract(const RibbonGraph& rg, const std::string& id);

/// Spanning connected sub-ribbon graphs with exactly one face.
std::vector<EdgeSubset> quasi_trees(const RibbonGraph& rg);

struct TwoQuasiTree {
  EdgeSubset edges;
  std::vector<Face> faces;  // exactly two
};
/// Spanning connected sub-ribbon graphs with exactly two faces.
std::vector<TwoQuasiTree> two_quasi_trees(const RibbonGraph& rg);

struct BoundaryLeg {
  std::size_t leg;
  int sign;  // +1 ingoing, -1 outgoing
  friend bool operator==(const BoundaryLeg&, const BoundaryLeg&) = default;
};
/// Legs met along a face, in walk order.
std::vector<BoundaryLeg> face_boundary_order(const RibbonGraph& rg, const Face& face);

/// Orientation-preserving isomorphism-class label (includes leg positions).
std::string canonical_form(const RibbonGraph& rg);

}  // namespace feyncomb
