#include "feyncomb/parametric.hpp"

#include <algorithm>
#include <set>

#include "feyncomb/errors.hpp"
#include "feyncomb/graph_polynomials.hpp"
#include "feyncomb/linalg.hpp"

namespace feyncomb {

namespace {

void require_connected(const Graph& g, const char* what) {
  if (!is_connected(g)) throw PreconditionError(std::string(what) + " requires a connected graph");
}

// prod over edges outside h of a.e
Monomial alpha_complement(const Graph& g, EdgeSubset h) {
  std::vector<Monomial::Factor> f;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (!h.contains(e)) f.emplace_back(alpha_var(g.edges()[e].id), 1);
  }
  return Monomial(std::move(f));
}

Momentum signed_momentum(const Graph& g, const ExternalAssignment& ext, std::size_t leg) {
  const auto& m = ext.at(g.legs()[leg].id);
  return m.sign * m.p;
}

int b_exponent(const RibbonGraph& rg) {
  // F - 1 + 2g, for a connected ribbon graph
  return static_cast<int>(faces(rg).size()) - 1 + 2 * genus(rg);
}

}  // namespace

std::string alpha_var(const std::string& edge_id) { return "a." + edge_id; }

Momentum& Momentum::operator+=(const Momentum& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}

Momentum operator*(int s, Momentum a) {
  for (auto& x : a.c) x *= s;
  return a;
}

Rational dot(const Momentum& p, const Momentum& q) {
  Rational r = 0;
  for (std::size_t i = 0; i < 4; ++i) r += p.c[i] * q.c[i];
  return r;
}

Rational wedge(const Momentum& p, const Momentum& q) {
  return p.c[0] * q.c[1] - p.c[1] * q.c[0] + p.c[2] * q.c[3] - p.c[3] * q.c[2];
}

void check_assignment(const Graph& g, const ExternalAssignment& ext) {
  Momentum total;
  for (const auto& leg : g.legs()) {
    auto it = ext.find(leg.id);
    if (it == ext.end()) throw InputError("no momentum given for external leg '" + leg.id + "'");
    if (it->second.sign != leg.sign()) throw InputError("momentum direction of leg '" + leg.id + "' disagrees with the graph");
    total += it->second.sign * it->second.p;
  }
  for (const auto& [id, m] : ext) {
    if (!g.find_leg(id)) throw InputError("momentum given for unknown leg '" + id + "'");
  }
  if (!(total == Momentum{})) throw InputError("external momenta violate conservation");
}

// ---------------------------------------------------------------- ThetaTracked

ThetaTracked ThetaTracked::of(int power, const MultiPoly& payload) {
  ThetaTracked t;
  t.add(power, payload);
  return t;
}

void ThetaTracked::add(int power, const MultiPoly& payload) {
  if (payload.variables().count("theta")) throw ArithmeticError("theta inside a tracked payload");
  auto& slot = terms_[power];
  slot += payload;
  if (slot.is_zero()) terms_.erase(power);
}

ThetaTracked& ThetaTracked::operator+=(const ThetaTracked& o) {
  for (const auto& [n, p] : o.terms_) add(n, p);
  return *this;
}

ThetaTracked& ThetaTracked::operator*=(const MultiPoly& p) {
  Terms out;
  for (auto& [n, q] : terms_) {
    MultiPoly r = q * p;
    if (!r.is_zero()) out.emplace(n, std::move(r));
  }
  terms_ = std::move(out);
  return *this;
}

MultiPoly ThetaTracked::to_poly() const {
  MultiPoly out;
  for (const auto& [n, p] : terms_) {
    if (n < 0) throw ArithmeticError("negative power of theta/2 (" + std::to_string(n) + ") in a polynomial context");
    Rational scale(1);
    mpz_mul_2exp(scale.get_den_mpz_t(), scale.get_den_mpz_t(), static_cast<mp_bitcnt_t>(n));
    out += p * MultiPoly::term(Monomial::var("theta", static_cast<std::uint32_t>(n)), scale);
  }
  return out;
}

MultiPoly ThetaTracked::at_zero() const {
  for (const auto& [n, p] : terms_) {
    if (n < 0) throw ArithmeticError("negative power of theta/2 has no limit at theta = 0");
  }
  auto it = terms_.find(0);
  return it == terms_.end() ? MultiPoly() : it->second;
}

// ---------------------------------------------------------------- commutative

MultiPoly symanzik_u(const Graph& g) {
  require_connected(g, "symanzik_u");
  MultiPoly u;
  for (auto t : spanning_trees(g)) u.add_term(alpha_complement(g, t), 1);
  return u;
}

MultiPoly symanzik_v(const Graph& g, const ExternalAssignment& ext, int side) {
  require_connected(g, "symanzik_v");
  check_assignment(g, ext);
  MultiPoly v;
  for (const auto& t : spanning_two_trees(g)) {
    Momentum flow;
    for (auto leg : t.legs[side ? 1 : 0]) flow += signed_momentum(g, ext, leg);
    const Rational sq = dot(flow, flow);
    if (sq != 0) v.add_term(alpha_complement(g, t.edges), sq);
  }
  return v;
}

MultiPoly symanzik_u_via_det(const Graph& g, std::size_t deleted_vertex) {
  require_connected(g, "symanzik_u_via_det");
  if (deleted_vertex >= g.num_vertices()) throw InputError("deleted vertex out of range");
  MultiPoly loops(1);
  std::vector<std::size_t> kept;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edges()[e].is_self_loop()) {
      loops *= MultiPoly::var(alpha_var(g.edges()[e].id));
    } else {
      kept.push_back(e);
    }
  }
  const auto eps = incidence_matrix(g);
  std::vector<std::size_t> cols;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (v != deleted_vertex) cols.push_back(v);
  }
  const std::size_t m = kept.size(), n = m + cols.size();
  PolyMatrix q = zero_matrix(n);
  for (std::size_t i = 0; i < m; ++i) {
    q[i][i] = MultiPoly::var(alpha_var(g.edges()[kept[i]].id));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      q[i][m + j] = MultiPoly(-eps[kept[i]][cols[j]]);
      q[m + j][i] = MultiPoly(-eps[kept[i]][cols[j]]);
    }
  }
  // det Q = (-1)^{V-1} U for the column-reduced matrix.
  MultiPoly d = det(q) * loops;
  return cols.size() % 2 ? -d : d;
}

namespace {

MultiPoly u_delcon(const Graph& g) {
  std::optional<std::size_t> pick;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edges()[e].is_self_loop()) continue;
    if (!pick || g.edges()[e].id < g.edges()[*pick].id) pick = e;
  }
  if (!pick) {
    if (g.num_vertices() != 1) return MultiPoly();
    MultiPoly p(1);
    for (const auto& e : g.edges()) p *= MultiPoly::var(alpha_var(e.id));
    return p;
  }
  const std::string& id = g.edges()[*pick].id;
  MultiPoly out = u_delcon(contract_edge(g, id));
  if (classify_edge(g, *pick) != EdgeKind::Bridge) {
    out += MultiPoly::var(alpha_var(id)) * u_delcon(delete_edge(g, id));
  }
  return out;
}

}  // namespace

MultiPoly symanzik_u_delcon(const Graph& g) {
  require_connected(g, "symanzik_u_delcon");
  require_enumerable(g);
  return u_delcon(g);
}

MultiPoly u_from_multivariate_tutte(const Graph& g) {
  require_connected(g, "u_from_multivariate_tutte");
  const MultiPoly z = multivariate_tutte(g);
  std::set<std::string> betas;
  for (const auto& e : g.edges()) betas.insert(beta_var(e.id));
  const MultiPoly forests = lowest_homogeneous_part(coefficient_of(z, "q", 1), betas);
  MultiPoly u;
  for (const auto& [mono, coeff] : forests.terms()) {
    std::vector<std::size_t> in;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (mono.exponent_of(beta_var(g.edges()[e].id))) in.push_back(e);
    }
    u.add_term(alpha_complement(g, EdgeSubset::of(in)), coeff);
  }
  return u;
}

Integrand parametric_integrand(const Graph& g, const ExternalAssignment& ext, const Rational& m2) {
  Integrand out{symanzik_u(g), symanzik_v(g, ext), MultiPoly()};
  for (const auto& e : g.edges()) out.mass_term += MultiPoly::term(Monomial::var(alpha_var(e.id)), m2);
  return out;
}

// ---------------------------------------------------------------- Moyal

ThetaTracked nc_u(const RibbonGraph& rg) {
  const Graph& g = rg.graph();
  require_connected(g, "nc_u");
  const int shift = b_exponent(rg) - static_cast<int>(g.num_edges());
  ThetaTracked out;
  for (auto t : quasi_trees(rg)) {
    out.add(shift + static_cast<int>(t.size()), MultiPoly::term(alpha_complement(g, t)));
  }
  return out;
}

namespace {

ThetaTracked nc_u_dc(const RibbonGraph& rg) {
  const Graph& g = rg.graph();
  std::optional<std::size_t> pick;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edges()[e].is_self_loop()) continue;
    if (!pick || g.edges()[e].id < g.edges()[*pick].id) pick = e;
  }
  if (!pick) return g.num_vertices() == 1 ? nc_u(rg) : ThetaTracked();
  const std::string& id = g.edges()[*pick].id;
  ThetaTracked out = nc_u_dc(ribbon_contract(rg, id));
  if (classify_edge(g, *pick) != EdgeKind::Bridge) {
    ThetaTracked del = nc_u_dc(ribbon_delete(rg, id));
    del *= MultiPoly::var(alpha_var(id));
    out += del;
  }
  return out;
}

}  // namespace

ThetaTracked nc_u_delcon(const RibbonGraph& rg) {
  require_connected(rg.graph(), "nc_u_delcon");
  require_enumerable(rg.graph());
  return nc_u_dc(rg);
}

ThetaTracked nc_u_from_multivariate_br(const RibbonGraph& rg) {
  const Graph& g = rg.graph();
  require_connected(g, "nc_u_from_multivariate_br");
  const MultiPoly w1 = coefficient_of(substitute(multivariate_br(rg), {{"x", 1}}), "z", 1);
  // b.e -> (theta/2) / a.e, times prod a.e, times (theta/2)^{1-|V|}
  const int norm = 1 - static_cast<int>(g.num_vertices());
  ThetaTracked out;
  for (const auto& [mono, coeff] : w1.terms()) {
    std::vector<std::size_t> in;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (mono.exponent_of(beta_var(g.edges()[e].id))) in.push_back(e);
    }
    out.add(static_cast<int>(in.size()) + norm, MultiPoly::term(alpha_complement(g, EdgeSubset::of(in)), coeff));
  }
  return out;
}

MultiPoly commutative_limit(const RibbonGraph& rg) { return nc_u(rg).at_zero(); }

ThetaTracked nc_v_real(const RibbonGraph& rg, const ExternalAssignment& ext, int face) {
  const Graph& g = rg.graph();
  require_connected(g, "nc_v_real");
  check_assignment(g, ext);
  const int shift = b_exponent(rg) + 1 - static_cast<int>(g.num_edges());
  ThetaTracked out;
  for (const auto& t : two_quasi_trees(rg)) {
    Momentum flow;
    for (const auto& bl : face_boundary_order(rg, t.faces[face ? 1 : 0])) {
      flow += signed_momentum(g, ext, bl.leg);
    }
    const Rational sq = dot(flow, flow);
    if (sq != 0) out.add(shift + static_cast<int>(t.edges.size()), MultiPoly::term(alpha_complement(g, t.edges), sq));
  }
  return out;
}

ThetaTracked nc_v_imag(const RibbonGraph& rg, const ExternalAssignment& ext, std::size_t start_shift) {
  const Graph& g = rg.graph();
  require_connected(g, "nc_v_imag");
  check_assignment(g, ext);
  const int shift = b_exponent(rg) - static_cast<int>(g.num_edges());
  ThetaTracked out;
  for (auto t : quasi_trees(rg)) {
    const auto fs = faces(rg, t);
    auto order = face_boundary_order(rg, fs.front());
    if (order.size() < 2) continue;
    auto smallest = std::min_element(order.begin(), order.end(), [&](const BoundaryLeg& a, const BoundaryLeg& b) {
      return g.legs()[a.leg].id < g.legs()[b.leg].id;
    });
    std::rotate(order.begin(), smallest, order.end());
    std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(start_shift % order.size()), order.end());
    Rational psi = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Momentum pi = signed_momentum(g, ext, order[i].leg);
      for (std::size_t j = i + 1; j < order.size(); ++j) psi += wedge(pi, signed_momentum(g, ext, order[j].leg));
    }
    if (psi != 0) out.add(shift + static_cast<int>(t.size()), MultiPoly::term(alpha_complement(g, t), psi));
  }
  return out;
}

}  // namespace feyncomb
