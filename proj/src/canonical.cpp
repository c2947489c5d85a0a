// Graph canonical labels: colour refinement, then brute force over orderings
// inside each colour class. Fine for the small graphs this library handles.

#include <algorithm>
#include <map>
#include <tuple>

#include "feyncomb/graph.hpp"

namespace feyncomb {

namespace {

using Colouring = std::vector<int>;

template <typename Key>
Colouring rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colouring out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  }
  return out;
}

int classes(const Colouring& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1; }

struct Search {
  std::size_t n;
  const std::vector<std::vector<int>>& adj;
  const std::vector<int>& legs;
  std::vector<std::vector<std::size_t>> cells;  // in colour order
  std::vector<std::size_t> order;               // new position -> old vertex
  std::vector<int> best;
  bool have_best = false;

  std::vector<int> code() const {
    std::vector<int> c;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) c.push_back(adj[order[i]][order[j]]);
    }
    for (std::size_t i = 0; i < n; ++i) c.push_back(legs[order[i]]);
    return c;
  }

  void run(std::size_t cell) {
    if (cell == cells.size()) {
      auto c = code();
      if (!have_best || c < best) {
        best = std::move(c);
        have_best = true;
      }
      return;
    }
    auto members = cells[cell];
    std::sort(members.begin(), members.end());
    const std::size_t base = order.size();
    do {
      order.resize(base);
      order.insert(order.end(), members.begin(), members.end());
      run(cell + 1);
    } while (std::next_permutation(members.begin(), members.end()));
    order.resize(base);
  }
};

}  // namespace

std::string canonical_form(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  std::vector<int> loops(n, 0), legs(n, 0);
  for (const auto& e : g.edges()) {
    if (e.is_self_loop()) {
      ++adj[e.tail][e.tail];
      ++loops[e.tail];
    } else {
      ++adj[e.tail][e.head];
      ++adj[e.head][e.tail];
    }
  }
  for (const auto& l : g.legs()) ++legs[l.vertex];

  std::vector<std::tuple<std::size_t, int, int>> initial;
  for (std::size_t v = 0; v < n; ++v) initial.emplace_back(g.degree(v), loops[v], legs[v]);
  Colouring colour = rank_keys(initial);
  for (;;) {
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (std::size_t w = 0; w < n; ++w) {
        if (w != v && adj[v][w]) sig[v].second.emplace_back(colour[w], adj[v][w]);
      }
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    Colouring next = rank_keys(sig);
    const bool stable = classes(next) == classes(colour);
    colour = std::move(next);
    if (stable) break;
  }

  Search s{n, adj, legs, {}, {}, {}, false};
  s.cells.resize(static_cast<std::size_t>(classes(colour)));
  for (std::size_t v = 0; v < n; ++v) s.cells[static_cast<std::size_t>(colour[v])].push_back(v);
  s.run(0);

  std::string out = "G" + std::to_string(n) + ":";
  std::size_t k = 0;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++k) {
      if (!s.best[k]) continue;
      if (!first) out += ',';
      first = false;
      out += std::to_string(i) + "-" + std::to_string(j) + "x" + std::to_string(s.best[k]);
    }
  }
  out += "|L";
  for (std::size_t i = 0; i < n; ++i) out += (i ? "," : "") + std::to_string(s.best[k + i]);
  return out;
}

}  // namespace feyncomb
