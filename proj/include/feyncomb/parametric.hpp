#pragma once

// Symanzik polynomials U, V and their Moyal counterparts U*, Re V*, Im V*.
//
// Edge parameters are the variables "a.<edge id>"; the Moyal parameter is
// "theta". Momenta are exact rational Euclidean 4-vectors.

#include <array>
#include <map>
#include <string>

#include "feyncomb/graph.hpp"
#include "feyncomb/poly.hpp"
#include "feyncomb/ribbon.hpp"

namespace feyncomb {

/// "a.<edge id>"
std::string alpha_var(const std::string& edge_id);

struct Momentum {
  std::array<Rational, 4> c{0, 0, 0, 0};

  Momentum& operator+=(const Momentum& o);
  friend Momentum operator+(Momentum a, const Momentum& b) { return a += b; }
  friend Momentum operator*(int s, Momentum a);
  friend bool operator==(const Momentum&, const Momentum&) = default;
};

/// Euclidean dot product.
Rational dot(const Momentum& p, const Momentum& q);
/// p1 q2 - p2 q1 + p3 q4 - p4 q3
Rational wedge(const Momentum& p, const Momentum& q);

struct ExternalMomentum {
  Momentum p;
  int sign = 1;  // +1 ingoing, -1 outgoing
};
/// Keyed by external leg id.
using ExternalAssignment = std::map<std::string, ExternalMomentum>;

/// Throws InputError unless every leg of g has a momentum with the leg's own
/// direction, no extra legs are named, and the signed momenta sum to zero.
void check_assignment(const Graph& g, const ExternalAssignment& ext);

/// A finite sum  sum_n (theta/2)^n * payload_n  with theta-free payloads.
class ThetaTracked {
 public:
  using Terms = std::map<int, MultiPoly>;

  ThetaTracked() = default;
  static ThetaTracked of(int power, const MultiPoly& payload);

  void add(int power, const MultiPoly& payload);
  ThetaTracked& operator+=(const ThetaTracked& o);
  /// Multiplies every payload by a theta-free polynomial.
  ThetaTracked& operator*=(const MultiPoly& p);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Throws ArithmeticError if any power is negative.
  MultiPoly to_poly() const;
  /// theta := 0
  MultiPoly at_zero() const;

  friend bool operator==(const ThetaTracked&, const ThetaTracked&) = default;

 private:
  Terms terms_;
};

MultiPoly symanzik_u(const Graph& g);
/// `side` picks which component of each two-tree carries the momentum flow.
MultiPoly symanzik_v(const Graph& g, const ExternalAssignment& ext, int side = 0);
/// From det Q with one vertex column deleted and self-loops peeled.
MultiPoly symanzik_u_via_det(const Graph& g, std::size_t deleted_vertex = 0);
MultiPoly symanzik_u_delcon(const Graph& g);
/// Spanning-forest part of Z at q^k(G), complemented edge by edge.
MultiPoly u_from_multivariate_tutte(const Graph& g);

struct Integrand {
  MultiPoly u;
  MultiPoly v;
  MultiPoly mass_term;  // m^2 * sum of alphas
};
Integrand parametric_integrand(const Graph& g, const ExternalAssignment& ext, const Rational& m2);

ThetaTracked nc_u(const RibbonGraph& rg);
ThetaTracked nc_u_delcon(const RibbonGraph& rg);
ThetaTracked nc_u_from_multivariate_br(const RibbonGraph& rg);
/// nc_u at theta = 0.
MultiPoly commutative_limit(const RibbonGraph& rg);

/// `face` (0 or 1) picks which face of each two-quasi-tree carries the flow.
ThetaTracked nc_v_real(const RibbonGraph& rg, const ExternalAssignment& ext, int face = 0);
/// Boundary legs are read from the smallest leg id, then shifted by `start_shift`.
ThetaTracked nc_v_imag(const RibbonGraph& rg, const ExternalAssignment& ext, std::size_t start_shift = 0);

}  // namespace feyncomb
