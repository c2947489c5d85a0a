#include "feyncomb/cli.hpp"

#include <sstream>

#include <CLI11.hpp>

#include "feyncomb/errors.hpp"
#include "feyncomb/graph_polynomials.hpp"
#include "feyncomb/hopf.hpp"
#include "feyncomb/io.hpp"
#include "feyncomb/parametric.hpp"
#include "feyncomb/selftest.hpp"

namespace feyncomb {

namespace {

struct Args {
  std::string kind;
  std::string fixture;
  std::string method = "subset";
  std::string model = "phi4";
  std::string momenta;
  std::string mass2 = "1";
  bool check = false;
  bool json = false;
  bool no_tadpoles = false;
  bool no_memo = false;
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

class Checks {
 public:
  explicit Checks(std::ostream& out) : out_(out) {}
  void operator()(const std::string& name, bool ok) {
    out_ << (ok ? "PASS  " : "FAIL  ") << name << '\n';
    failed_ = failed_ || !ok;
  }
  int exit_code() const { return failed_ ? 1 : 0; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

void print_poly(std::ostream& out, const MultiPoly& p, bool json) {
  out << canonical_string(p) << '\n';
  if (json) out << nlohmann::json{{"poly", canonical_string(p)}, {"terms", poly_to_json(p)}}.dump() << '\n';
}

const RibbonGraph& require_ribbon(const Fixture& f, const std::string& what) {
  if (!f.is_ribbon) throw PreconditionError(what + " needs a ribbon fixture");
  return f.graph;
}

ExternalAssignment momenta_for(const Args& a, const Graph& g) {
  if (!a.momenta.empty()) return load_momenta(a.momenta);
  if (g.num_legs() == 0) return {};
  throw InputError("--momenta is required for a graph with external legs");
}

int run_poly(const Args& a, std::ostream& out) {
  const Fixture f = load_fixture(a.fixture);
  const Graph& g = f.graph.graph();
  PolyOptions opts;
  opts.method = a.method == "delcon" ? Method::DeleteContract : Method::SubsetSum;
  opts.memoize = !a.no_memo;
  opts.threads = a.threads;
  PolyOptions other = opts;
  other.method = opts.method == Method::SubsetSum ? Method::DeleteContract : Method::SubsetSum;
  Checks check(out);

  if (a.kind == "tutte") {
    const MultiPoly t = tutte(g, opts);
    print_poly(out, t, a.json);
    if (a.check) {
      check("subset == delcon", t == tutte(g, other));
      PolyOptions plain = opts;
      plain.method = Method::DeleteContract;
      plain.memoize = false;
      check("delcon without memo", t == tutte(g, plain));
      check("multivariate relation", check_tutte_relation(g));
    }
  } else if (a.kind == "ztutte") {
    const MultiPoly z = multivariate_tutte(g, opts);
    print_poly(out, z, a.json);
    if (a.check) {
      check("subset == delcon", z == multivariate_tutte(g, other));
      check("multivariate relation", check_tutte_relation(g));
    }
  } else if (a.kind == "chromatic") {
    const MultiPoly p = chromatic(g);
    print_poly(out, p, a.json);
    if (a.check) {
      for (unsigned k = 1; k <= 4; ++k) {
        check("colorings k=" + std::to_string(k),
              eval_rational(p, {{"k", k}}) == Rational(count_colorings_oracle(g, k)));
      }
    }
  } else if (a.kind == "flow") {
    const MultiPoly p = flow_poly(g);
    print_poly(out, p, a.json);
    if (a.check) {
      for (unsigned k = 2; k <= 5; ++k) {
        check("flows k=" + std::to_string(k), eval_rational(p, {{"k", k}}) == Rational(count_flows_oracle(g, k)));
      }
    }
  } else if (a.kind == "br") {
    const RibbonGraph& rg = require_ribbon(f, "br");
    const MultiPoly r = bollobas_riordan(rg, opts);
    print_poly(out, r, a.json);
    if (a.check) {
      check("subset == delcon", r == bollobas_riordan(rg, other));
      check("R(x, y-1, 1) == T(x, y)", check_br_tutte_specialization(rg));
    }
  } else {
    const RibbonGraph& rg = require_ribbon(f, "zbr");
    const MultiPoly z = multivariate_br(rg, opts);
    print_poly(out, z, a.json);
    if (a.check) check("subset == delcon", z == multivariate_br(rg, other));
  }
  return check.exit_code();
}

int run_param(const Args& a, std::ostream& out) {
  const Fixture f = load_fixture(a.fixture);
  const Graph& g = f.graph.graph();
  Checks check(out);

  if (a.kind == "u") {
    const MultiPoly u = symanzik_u(g);
    print_poly(out, u, a.json);
    if (a.check) {
      check("determinant", u == symanzik_u_via_det(g));
      check("d/c", u == symanzik_u_delcon(g));
      check("Tutte-limit", u == u_from_multivariate_tutte(g));
    }
  } else if (a.kind == "udet") {
    const MultiPoly u = symanzik_u_via_det(g);
    print_poly(out, u, a.json);
    if (a.check) {
      check("spanning trees", u == symanzik_u(g));
      for (std::size_t v = 1; v < g.num_vertices(); ++v) {
        check("deleted vertex " + g.vertices()[v], u == symanzik_u_via_det(g, v));
      }
    }
  } else if (a.kind == "v") {
    const ExternalAssignment ext = momenta_for(a, g);
    const MultiPoly v = symanzik_v(g, ext);
    print_poly(out, v, a.json);
    if (a.check) check("side choice", v == symanzik_v(g, ext, 1));
  } else if (a.kind == "integrand") {
    const ExternalAssignment ext = momenta_for(a, g);
    const Integrand in = parametric_integrand(g, ext, parse_rational(a.mass2));
    out << "U = " << canonical_string(in.u) << '\n'
        << "V = " << canonical_string(in.v) << '\n'
        << "mass = " << canonical_string(in.mass_term) << '\n';
    if (a.json) {
      out << nlohmann::json{{"u", poly_to_json(in.u)}, {"v", poly_to_json(in.v)}, {"mass", poly_to_json(in.mass_term)}}
                 .dump()
          << '\n';
    }
  } else if (a.kind == "ustar") {
    const RibbonGraph& rg = require_ribbon(f, "ustar");
    const ThetaTracked u = nc_u(rg);
    print_poly(out, u.to_poly(), a.json);
    if (a.check) {
      check("d/c", u == nc_u_delcon(rg));
      check("BR-limit", u == nc_u_from_multivariate_br(rg));
      check("commutative-limit", commutative_limit(rg) == symanzik_u(g));
    }
  } else if (a.kind == "vstar-re") {
    const RibbonGraph& rg = require_ribbon(f, "vstar-re");
    const ExternalAssignment ext = momenta_for(a, g);
    const ThetaTracked v = nc_v_real(rg, ext);
    print_poly(out, v.to_poly(), a.json);
    if (a.check) check("face choice", v == nc_v_real(rg, ext, 1));
  } else {
    const RibbonGraph& rg = require_ribbon(f, "vstar-im");
    const ExternalAssignment ext = momenta_for(a, g);
    const ThetaTracked v = nc_v_imag(rg, ext);
    print_poly(out, v.to_poly(), a.json);
    if (a.check) {
      for (std::size_t s = 1; s < g.num_legs(); ++s) {
        check("cyclic start " + std::to_string(s), v == nc_v_imag(rg, ext, s));
      }
    }
  }
  return check.exit_code();
}

std::string forest_string(const Graph& g, const Family& forest) {
  std::string s = "[";
  for (std::size_t i = 0; i < forest.size(); ++i) {
    s += i ? " {" : "{";
    bool first = true;
    for (std::size_t e : forest[i].edges.indices()) {
      s += (first ? "" : ",") + g.edges()[e].id;
      first = false;
    }
    s += "}";
  }
  return s + "]";
}

int run_hopf(const Args& a, std::ostream& out) {
  const Fixture f = load_fixture(a.fixture);
  HopfOptions opts;
  opts.model = parse_model(a.model);
  opts.tadpoles_divergent = !a.no_tadpoles;
  if (opts.model == Model::GwRibbon) require_ribbon(f, "the gw model");
  HopfAlgebra h(opts);
  const RibbonGraph& g = f.graph;
  Checks check(out);

  if (a.kind == "coproduct") {
    out << to_string(h.coproduct(g)) << '\n';
    if (a.check) {
      check("coassociativity", h.check_coassociativity(g));
      check("counit", h.check_counit(g));
      check("grading", h.check_grading(g));
    }
  } else if (a.kind == "antipode") {
    out << to_string(h.antipode(g)) << '\n';
    if (a.check) check("antipode axiom", h.check_hopf_axioms(g));
  } else if (a.kind == "forests") {
    for (const auto& forest : h.zimmermann_forests(g)) out << forest_string(g.graph(), forest) << '\n';
  } else if (a.kind == "rbar") {
    const FormalAmplitude r = h.bogoliubov_hopf(g);
    out << r.to_string() << '\n';
    if (a.check) check("forest formula", r == h.bogoliubov_forest(g));
  } else {
    const FormalAmplitude r = h.renormalized(g);
    out << r.to_string() << '\n';
    if (a.check) {
      const FormalAmplitude rb = h.bogoliubov_hopf(g);
      check("(id - T) of rbar", r == rb - apply_t(rb));
      check("forest formula", rb == h.bogoliubov_forest(g));
    }
  }
  return check.exit_code();
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Exact graph polynomials and Hopf-algebraic renormalization", "feyncomb"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* sub, std::initializer_list<const char*> kinds) {
    std::vector<std::string> names(kinds.begin(), kinds.end());
    sub->add_option("kind", a.kind)->required()->check(CLI::IsMember(names));
    sub->add_option("fixture", a.fixture, "fixture JSON")->required();
    sub->add_flag("--json", a.json, "also print a JSON term list");
    sub->add_option("--threads", a.threads, "worker threads")->check(CLI::Range(1u, 256u));
  };

  CLI::App* poly = app.add_subcommand("poly", "Tutte and Bollobas-Riordan family");
  common(poly, {"tutte", "ztutte", "chromatic", "flow", "br", "zbr"});
  poly->add_option("--method", a.method)->check(CLI::IsMember({"subset", "delcon"}));
  poly->add_flag("--no-memo", a.no_memo, "disable the isomorphism cache in d/c");
  poly->add_flag("--check", a.check, "cross-validate");

  CLI::App* param = app.add_subcommand("param", "Symanzik polynomials and their Moyal versions");
  common(param, {"u", "v", "udet", "ustar", "vstar-re", "vstar-im", "integrand"});
  param->add_option("--momenta", a.momenta, "momenta JSON");
  param->add_option("--mass2", a.mass2, "squared mass (rational)");
  param->add_flag("--check-all", a.check, "cross-validate");

  CLI::App* hopf = app.add_subcommand("hopf", "Hopf algebra and renormalization");
  common(hopf, {"coproduct", "antipode", "forests", "rbar", "renorm"});
  hopf->add_option("--model", a.model)->check(CLI::IsMember({"phi4", "gw", "core"}));
  hopf->add_flag("--no-tadpoles", a.no_tadpoles, "single self-loops are not divergent");
  hopf->add_flag("--check", a.check, "check Hopf identities");

  CLI::App* self = app.add_subcommand("selftest", "Run the acceptance corpus");
  self->add_option("--seed", a.seed, "random corpus seed");

  CliResult result;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }

  try {
    if (poly->parsed()) result.exit_code = run_poly(a, out);
    else if (param->parsed()) result.exit_code = run_param(a, out);
    else if (hopf->parsed()) result.exit_code = run_hopf(a, out);
    else result.exit_code = run_selftest(out, a.seed) ? 0 : 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = 2;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace feyncomb
