#include "feyncomb/linalg.hpp"

#include <bit>
#include <cstdint>
#include <unordered_map>

#include "feyncomb/errors.hpp"

namespace feyncomb {

namespace {

void require_square(const PolyMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw PreconditionError("matrix is not square");
  }
  if (m.size() > 30) throw PreconditionError("matrix too large for cofactor expansion");
}

void require_skew(const PolyMatrix& a) {
  require_square(a);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) {
      if (!(a[i][j] == -a[j][i])) throw PreconditionError("matrix is not skew-symmetric");
    }
  }
}

struct DetExpansion {
  const PolyMatrix& m;
  std::unordered_map<std::uint32_t, MultiPoly> memo;

  MultiPoly operator()(std::uint32_t used) {
    const auto row = static_cast<std::size_t>(std::popcount(used));
    if (row == m.size()) return MultiPoly(1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    MultiPoly sum;
    int sign = 1;
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (used >> c & 1U) continue;
      if (!m[row][c].is_zero()) {
        MultiPoly t = m[row][c] * (*this)(used | (1U << c));
        if (sign > 0) sum += t; else sum -= t;
      }
      sign = -sign;
    }
    memo.emplace(used, sum);
    return sum;
  }
};

int permutation_parity(const std::vector<std::size_t>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  }
  return inv % 2 ? -1 : 1;
}

void matchings(const PolyMatrix& a, std::vector<bool>& matched, std::vector<std::size_t>& seq, MultiPoly& acc) {
  std::size_t i = 0;
  while (i < a.size() && matched[i]) ++i;
  if (i == a.size()) {
    MultiPoly t(permutation_parity(seq));
    for (std::size_t k = 0; k < seq.size(); k += 2) t *= a[seq[k]][seq[k + 1]];
    acc += t;
    return;
  }
  matched[i] = true;
  for (std::size_t j = i + 1; j < a.size(); ++j) {
    if (matched[j] || a[i][j].is_zero()) continue;
    matched[j] = true;
    seq.push_back(i);
    seq.push_back(j);
    matchings(a, matched, seq, acc);
    seq.resize(seq.size() - 2);
    matched[j] = false;
  }
  matched[i] = false;
}

struct PfExpansion {
  const PolyMatrix& a;
  std::unordered_map<std::uint32_t, MultiPoly> memo;

  MultiPoly operator()(std::uint32_t removed) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    while (i < n && (removed >> i & 1U)) ++i;
    if (i == n) return MultiPoly(1);
    if (auto it = memo.find(removed); it != memo.end()) return it->second;
    MultiPoly sum;
    int sign = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (removed >> j & 1U) continue;
      if (!a[i][j].is_zero()) {
        MultiPoly t = a[i][j] * (*this)(removed | (1U << i) | (1U << j));
        if (sign > 0) sum += t; else sum -= t;
      }
      sign = -sign;
    }
    memo.emplace(removed, sum);
    return sum;
  }
};

}  // namespace

PolyMatrix zero_matrix(std::size_t n) { return PolyMatrix(n, std::vector<MultiPoly>(n)); }

PolyMatrix transpose(const PolyMatrix& m) {
  PolyMatrix t = zero_matrix(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

MultiPoly det(const PolyMatrix& m) {
  require_square(m);
  DetExpansion expand{m, {}};
  return expand(0);
}

MultiPoly pfaffian(const PolyMatrix& a) {
  require_skew(a);
  if (a.size() % 2) return MultiPoly();
  std::vector<bool> matched(a.size(), false);
  std::vector<std::size_t> seq;
  MultiPoly acc;
  matchings(a, matched, seq, acc);
  return acc;
}

MultiPoly pfaffian_recursive(const PolyMatrix& a) {
  require_skew(a);
  if (a.size() % 2) return MultiPoly();
  PfExpansion expand{a, {}};
  return expand(0);
}

PolyMatrix skew_assembly(const PolyMatrix& d, const PolyMatrix& a) {
  require_square(d);
  require_skew(a);
  const std::size_t n = a.size();
  if (d.size() != n) throw PreconditionError("D and A must have the same size");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !d[i][j].is_zero()) throw PreconditionError("D is not diagonal");
    }
  }
  PolyMatrix k = zero_matrix(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      k[i][j] = a[i][j];
      k[i][n + j] = d[i][j];
      k[n + i][j] = -d[i][j];
      k[n + i][n + j] = -a[i][j];
    }
  }
  return k;
}

int pfaffian_sign_constant(std::size_t n) { return (n * (n - 1) / 2) % 2 ? -1 : 1; }

bool det_d_plus_a_identity(const PolyMatrix& d, const PolyMatrix& a, int sign) {
  PolyMatrix sum = a;
  for (std::size_t i = 0; i < a.size(); ++i) sum[i][i] += d[i][i];
  return det(sum) == MultiPoly(sign) * pfaffian(skew_assembly(d, a));
}

bool det_d_plus_a_identity(const PolyMatrix& d, const PolyMatrix& a) {
  return det_d_plus_a_identity(d, a, pfaffian_sign_constant(a.size()));
}

Integer matrix_tree_count(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0;
  if (!is_connected(g)) return 0;
  const std::size_t m = n - 1;
  std::vector<std::vector<Rational>> lap(m, std::vector<Rational>(m, 0));
  for (const auto& e : g.edges()) {
    if (e.is_self_loop()) continue;
    const std::size_t u = e.tail, v = e.head;
    if (u < m) lap[u][u] += 1;
    if (v < m) lap[v][v] += 1;
    if (u < m && v < m) {
      lap[u][v] -= 1;
      lap[v][u] -= 1;
    }
  }
  Rational result = 1;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    while (p < m && lap[p][c] == 0) ++p;
    if (p == m) return 0;
    if (p != c) {
      std::swap(lap[p], lap[c]);
      result = -result;
    }
    result *= lap[c][c];
    for (std::size_t r = c + 1; r < m; ++r) {
      if (lap[r][c] == 0) continue;
      const Rational f = lap[r][c] / lap[c][c];
      for (std::size_t k = c; k < m; ++k) lap[r][k] -= f * lap[c][k];
    }
  }
  return result.get_num();
}

}  // namespace feyncomb
