#include "feyncomb/graph_polynomials.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "feyncomb/errors.hpp"

namespace feyncomb {

namespace {

const MultiPoly kX = MultiPoly::var("x");
const MultiPoly kY = MultiPoly::var("y");
const MultiPoly kQ = MultiPoly::var("q");

class Memo {
 public:
  std::optional<MultiPoly> get(const std::string& key) {
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void put(const std::string& key, const MultiPoly& value) {
    std::lock_guard lock(mutex_);
    table_.emplace(key, value);
  }

 private:
  std::mutex mutex_;
  std::map<std::string, MultiPoly> table_;
};

int spawn_depth(unsigned threads) {
  int d = 0;
  while ((1U << d) < threads) ++d;
  return d;
}

// Evaluates a and b, the first on another thread while depth allows it.
template <typename A, typename B>
MultiPoly both(int spawn, A&& a, B&& b, MultiPoly (*combine)(MultiPoly, MultiPoly)) {
  if (spawn > 0) {
    auto fa = std::async(std::launch::async, std::forward<A>(a));
    MultiPoly rb = b();
    return combine(fa.get(), std::move(rb));
  }
  MultiPoly ra = a();
  return combine(std::move(ra), b());
}

MultiPoly plus(MultiPoly a, MultiPoly b) { return a += b; }

// Splits [0, 2^E) into contiguous chunks, one per worker; `body(bits, acc)`
// accumulates into a per-chunk polynomial. Chunks are summed in order.
template <typename Body>
MultiPoly subset_sum(std::size_t num_edges, unsigned threads, Body body) {
  const std::uint64_t n = std::uint64_t{1} << num_edges;
  const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, n);
  std::vector<MultiPoly> parts(workers);
  auto work = [&](std::uint64_t w) {
    for (std::uint64_t bits = w * n / workers; bits < (w + 1) * n / workers; ++bits) {
      body(EdgeSubset(bits), parts[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  MultiPoly total;
  for (const auto& p : parts) total += p;
  return total;
}

// Tallies subsets by an exponent key, then expands each key once.
template <std::size_t N, typename Key, typename Expand>
MultiPoly tallied_sum(std::size_t num_edges, unsigned threads, Key key, Expand expand) {
  const std::uint64_t n = std::uint64_t{1} << num_edges;
  const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, n);
  using Tally = std::map<std::array<int, N>, std::uint64_t>;
  std::vector<Tally> parts(workers);
  auto work = [&](std::uint64_t w) {
    for (std::uint64_t bits = w * n / workers; bits < (w + 1) * n / workers; ++bits) {
      ++parts[w][key(EdgeSubset(bits))];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  Tally total;
  for (const auto& p : parts) {
    for (const auto& [k, c] : p) total[k] += c;
  }
  MultiPoly out;
  for (const auto& [k, c] : total) {
    MultiPoly term = expand(k);
    term *= MultiPoly(Rational(static_cast<unsigned long>(c)));
    out += term;
  }
  return out;
}

std::optional<std::size_t> lowest_id_edge(const Graph& g, auto&& pred) {
  std::optional<std::size_t> best;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (!pred(e)) continue;
    if (!best || g.edges()[e].id < g.edges()[*best].id) best = e;
  }
  return best;
}

// ---------------------------------------------------------------- Tutte

MultiPoly tutte_subset(const Graph& g, unsigned threads) {
  const int k_all = static_cast<int>(components(g, EdgeSubset::all(g.num_edges())));
  const int v = static_cast<int>(g.num_vertices());
  return tallied_sum<2>(
      g.num_edges(), threads,
      [&](EdgeSubset h) {
        const int k = static_cast<int>(components(g, h));
        return std::array<int, 2>{k - k_all, static_cast<int>(h.size()) - (v - k)};
      },
      [](const std::array<int, 2>& k) {
        return (kX - 1).pow(static_cast<std::uint32_t>(k[0])) * (kY - 1).pow(static_cast<std::uint32_t>(k[1]));
      });
}

MultiPoly tutte_dc(const Graph& g, Memo* memo, int spawn) {
  std::string key;
  if (memo) {
    key = canonical_form(g);
    if (auto hit = memo->get(key)) return *hit;
  }
  auto e = lowest_id_edge(g, [&](std::size_t i) { return classify_edge(g, i) == EdgeKind::Regular; });
  MultiPoly result;
  if (!e) {
    std::uint32_t bridges = 0, loops = 0;
    for (const auto& edge : g.edges()) (edge.is_self_loop() ? loops : bridges) += 1;
    result = MultiPoly::term(Monomial{{"x", bridges}, {"y", loops}});
  } else {
    const std::string& id = g.edges()[*e].id;
    result = both(
        spawn, [&] { return tutte_dc(delete_edge(g, id), memo, spawn - 1); },
        [&] { return tutte_dc(contract_edge(g, id), memo, spawn - 1); }, plus);
  }
  if (memo) memo->put(key, result);
  return result;
}

// ---------------------------------------------------------------- multivariate Tutte

Monomial beta_product(const Graph& g, EdgeSubset h) {
  std::vector<Monomial::Factor> f;
  for (auto e : h.indices()) f.emplace_back(beta_var(g.edges()[e].id), 1);
  return Monomial(std::move(f));
}

MultiPoly ztutte_subset(const Graph& g, unsigned threads) {
  return subset_sum(g.num_edges(), threads, [&](EdgeSubset h, MultiPoly& acc) {
    const auto k = static_cast<std::uint32_t>(components(g, h));
    acc.add_term(beta_product(g, h) * Monomial::var("q", k), 1);
  });
}

MultiPoly ztutte_dc(const Graph& g, int spawn) {
  if (g.num_edges() == 0) return kQ.pow(static_cast<std::uint32_t>(g.num_vertices()));
  auto e = lowest_id_edge(g, [](std::size_t) { return true; });
  const std::string& id = g.edges()[*e].id;
  const MultiPoly beta = MultiPoly::var(beta_var(id));
  return both(
      spawn, [&] { return ztutte_dc(delete_edge(g, id), spawn - 1); },
      [&] { return beta * ztutte_dc(contract_edge(g, id), spawn - 1); }, plus);
}

// ---------------------------------------------------------------- Bollobas-Riordan

MultiPoly br_subset(const RibbonGraph& rg, unsigned threads) {
  const Graph& g = rg.graph();
  const int k_all = static_cast<int>(components(g, EdgeSubset::all(g.num_edges())));
  const int v = static_cast<int>(g.num_vertices());
  return tallied_sum<3>(
      g.num_edges(), threads,
      [&](EdgeSubset h) {
        const int k = static_cast<int>(components(g, h));
        const int n = static_cast<int>(h.size()) - (v - k);
        const int f = static_cast<int>(face_count(rg, h));
        return std::array<int, 3>{k - k_all, n, k - f + n};
      },
      [](const std::array<int, 3>& k) {
        if (k[2] < 0) throw ArithmeticError("negative z exponent in Bollobas-Riordan sum");
        return (kX - 1).pow(static_cast<std::uint32_t>(k[0])) *
               MultiPoly::term(Monomial{{"y", static_cast<std::uint32_t>(k[1])},
                                        {"z", static_cast<std::uint32_t>(k[2])}});
      });
}

// The one-vertex ribbon graph at v: its self-loops and their darts.
RibbonGraph vertex_piece(const RibbonGraph& rg, std::size_t v) {
  const Graph& g = rg.graph();
  Graph piece;
  piece.add_vertex(g.vertices()[v]);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edges()[e].tail == v) renumber[e] = piece.add_edge_by_index(g.edges()[e].id, 0, 0);
  }
  Rotation rot(1);
  for (auto d : rg.rotation()[v]) {
    if (d.is_leg()) continue;
    d.index = renumber.at(d.index);
    rot[0].push_back(d);
  }
  return RibbonGraph(std::move(piece), std::move(rot));
}

MultiPoly br_dc(const RibbonGraph& rg, Memo* memo, int spawn) {
  const Graph& g = rg.graph();
  std::string key;
  if (memo) {
    key = canonical_form(rg);
    if (auto hit = memo->get(key)) return *hit;
  }
  MultiPoly result;
  if (auto e = lowest_id_edge(g, [&](std::size_t i) { return classify_edge(g, i) == EdgeKind::Regular; })) {
    const std::string& id = g.edges()[*e].id;
    result = both(
        spawn, [&] { return br_dc(ribbon_contract(rg, id), memo, spawn - 1); },
        [&] { return br_dc(ribbon_delete(rg, id), memo, spawn - 1); }, plus);
  } else if (auto b = lowest_id_edge(g, [&](std::size_t i) { return classify_edge(g, i) == EdgeKind::Bridge; })) {
    result = kX * br_dc(ribbon_contract(rg, g.edges()[*b].id), memo, spawn);
  } else {
    // Only self-loops remain, so every component is a single vertex.
    result = MultiPoly(1);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) result *= br_subset(vertex_piece(rg, v), 1);
  }
  if (memo) memo->put(key, result);
  return result;
}

MultiPoly zbr_subset(const RibbonGraph& rg, unsigned threads) {
  const Graph& g = rg.graph();
  return subset_sum(g.num_edges(), threads, [&](EdgeSubset h, MultiPoly& acc) {
    const auto k = static_cast<std::uint32_t>(components(g, h));
    const auto f = static_cast<std::uint32_t>(face_count(rg, h));
    acc.add_term(beta_product(g, h) * Monomial{{"x", k}, {"z", f}}, 1);
  });
}

MultiPoly zbr_dc(const RibbonGraph& rg, int spawn) {
  const Graph& g = rg.graph();
  auto e = lowest_id_edge(g, [&](std::size_t i) { return !g.edges()[i].is_self_loop(); });
  if (!e) return zbr_subset(rg, 1);
  const std::string& id = g.edges()[*e].id;
  const MultiPoly beta = MultiPoly::var(beta_var(id));
  return both(
      spawn, [&] { return zbr_dc(ribbon_delete(rg, id), spawn - 1); },
      [&] { return beta * zbr_dc(ribbon_contract(rg, id), spawn - 1); }, plus);
}

void require_connected(const Graph& g, const char* what) {
  if (!is_connected(g)) throw PreconditionError(std::string(what) + " requires a connected graph");
}

}  // namespace

std::string beta_var(const std::string& edge_id) { return "b." + edge_id; }

Graph without_legs(const Graph& g) {
  Graph out;
  for (const auto& v : g.vertices()) out.add_vertex(v);
  for (const auto& e : g.edges()) out.add_edge_by_index(e.id, e.tail, e.head);
  return out;
}

RibbonGraph without_legs(const RibbonGraph& rg) {
  Rotation rot = rg.rotation();
  for (auto& r : rot) std::erase_if(r, [](const Dart& d) { return d.is_leg(); });
  return RibbonGraph(without_legs(rg.graph()), std::move(rot));
}

MultiPoly tutte(const Graph& g, const PolyOptions& opts) {
  if (g.num_vertices() == 0) throw PreconditionError("tutte requires at least one vertex");
  require_enumerable(g);
  const Graph bare = without_legs(g);
  if (opts.method == Method::SubsetSum) return tutte_subset(bare, opts.threads);
  Memo memo;
  return tutte_dc(bare, opts.memoize ? &memo : nullptr, spawn_depth(opts.threads));
}

MultiPoly multivariate_tutte(const Graph& g, const PolyOptions& opts) {
  require_enumerable(g);
  const Graph bare = without_legs(g);
  if (opts.method == Method::SubsetSum) return ztutte_subset(bare, opts.threads);
  return ztutte_dc(bare, spawn_depth(opts.threads));
}

bool check_tutte_relation(const Graph& g) {
  const MultiPoly z = multivariate_tutte(g);
  Bindings b{{"q", (kX - 1) * (kY - 1)}};
  for (const auto& e : g.edges()) b[beta_var(e.id)] = kY - 1;
  const auto k = static_cast<std::uint32_t>(components(g, EdgeSubset::all(g.num_edges())));
  const auto v = static_cast<std::uint32_t>(g.num_vertices());
  return substitute(z, b) == (kX - 1).pow(k) * (kY - 1).pow(v) * tutte(g);
}

MultiPoly chromatic(const Graph& g) {
  require_connected(g, "chromatic");
  const MultiPoly k = MultiPoly::var("k");
  MultiPoly p = k * substitute(tutte(g), {{"x", 1 - k}, {"y", 0}});
  return (g.num_vertices() - 1) % 2 ? -p : p;
}

MultiPoly flow_poly(const Graph& g) {
  require_connected(g, "flow_poly");
  const MultiPoly k = MultiPoly::var("k");
  MultiPoly p = substitute(tutte(g), {{"x", 0}, {"y", 1 - k}});
  return (g.num_edges() + g.num_vertices() + 1) % 2 ? -p : p;
}

std::uint64_t count_colorings_oracle(const Graph& g, unsigned k) {
  const std::size_t n = g.num_vertices();
  if (k == 0) return n == 0 ? 1 : 0;
  std::vector<unsigned> colour(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool proper = std::all_of(g.edges().begin(), g.edges().end(),
                              [&](const Edge& e) { return colour[e.tail] != colour[e.head]; });
    count += proper;
    std::size_t i = 0;
    while (i < n && ++colour[i] == k) colour[i++] = 0;
    if (i == n) break;
  }
  return count;
}

std::uint64_t count_flows_oracle(const Graph& g, unsigned k) {
  if (k < 2) return 0;
  const std::size_t m = g.num_edges();
  std::vector<unsigned> value(m, 1);
  std::uint64_t count = 0;
  for (;;) {
    std::vector<unsigned> net(g.num_vertices(), 0);
    for (std::size_t e = 0; e < m; ++e) {
      const Edge& edge = g.edges()[e];
      net[edge.tail] = (net[edge.tail] + value[e]) % k;
      net[edge.head] = (net[edge.head] + k - value[e]) % k;
    }
    count += std::all_of(net.begin(), net.end(), [](unsigned x) { return x == 0; });
    std::size_t i = 0;
    while (i < m && ++value[i] == k) value[i++] = 1;
    if (i == m) break;
  }
  return count;
}

MultiPoly bollobas_riordan(const RibbonGraph& rg, const PolyOptions& opts) {
  if (rg.graph().num_vertices() == 0) throw PreconditionError("bollobas_riordan requires at least one vertex");
  require_enumerable(rg.graph());
  const RibbonGraph bare = without_legs(rg);
  if (opts.method == Method::SubsetSum) return br_subset(bare, opts.threads);
  Memo memo;
  return br_dc(bare, opts.memoize ? &memo : nullptr, spawn_depth(opts.threads));
}

MultiPoly multivariate_br(const RibbonGraph& rg, const PolyOptions& opts) {
  require_enumerable(rg.graph());
  const RibbonGraph bare = without_legs(rg);
  if (opts.method == Method::SubsetSum) return zbr_subset(bare, opts.threads);
  return zbr_dc(bare, spawn_depth(opts.threads));
}

bool check_br_tutte_specialization(const RibbonGraph& rg) {
  return substitute(bollobas_riordan(rg), {{"y", kY - 1}, {"z", 1}}) == tutte(rg.graph());
}

}  // namespace feyncomb
