#pragma once

// Test-side reference computations. None of them call into the library code
// they are used to check; they work from raw depth matrices and edge lists.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "dcover/dcover.hpp"

namespace oracle {

using dcover::Integer;
using dcover::Rational;

struct RawCluster {
  std::vector<std::size_t> members;
  Rational depth;
  friend bool operator==(const RawCluster&, const RawCluster&) = default;
  friend bool operator<(const RawCluster& a, const RawCluster& b) {
    return std::tie(a.members, a.depth) < std::tie(b.members, b.depth);
  }
};

/// Clusters by single linkage: for every realized positive threshold c, the
/// connected components of {depth >= c} with at least two points, plus the
/// whole set at depth 0. The depth of a cluster is its minimum pairwise depth.
inline std::set<RawCluster> threshold_clusters(const dcover::DepthMatrix& d) {
  const std::size_t n = d.size();
  std::set<Rational> thresholds;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d(i, j) > 0) thresholds.insert(d(i, j));

  std::set<RawCluster> out;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  out.insert({all, 0});
  for (const Rational& c : thresholds) {
    std::vector<int> comp(n, -1);
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<std::size_t> stack{s};
      comp[s] = next;
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y = 0; y < n; ++y)
          if (y != x && comp[y] < 0 && d(x, y) >= c) {
            comp[y] = next;
            stack.push_back(y);
          }
      }
      ++next;
    }
    for (int k = 0; k < next; ++k) {
      std::vector<std::size_t> m;
      for (std::size_t x = 0; x < n; ++x)
        if (comp[x] == k) m.push_back(x);
      if (m.size() < 2 || m.size() == n) continue;
      Rational depth = d(m[0], m[1]);
      for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = a + 1; b < m.size(); ++b) depth = std::min(depth, d(m[a], m[b]));
      out.insert({m, depth});
    }
  }
  return out;
}

/// v_s from the definition, with joins found among the oracle clusters.
inline Rational cluster_v(const std::set<RawCluster>& clusters, const std::vector<std::size_t>& s,
                          std::int64_t v_phi, std::size_t n) {
  Rational v = v_phi;
  for (std::size_t r = 0; r < n; ++r) {
    const RawCluster* best = nullptr;
    for (const auto& c : clusters) {
      bool ok = std::binary_search(c.members.begin(), c.members.end(), r) &&
                std::includes(c.members.begin(), c.members.end(), s.begin(), s.end());
      if (ok && (!best || c.members.size() < best->members.size())) best = &c;
    }
    v += best->depth;
  }
  return v;
}

/// p-adic valuation of a rational by repeated division in 64-bit arithmetic.
inline int small_valuation(std::int64_t num, std::int64_t den, std::int64_t p) {
  int v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

struct Edge {
  std::size_t a, b;
};

/// Reduced Laplacian (vertex 0 removed), loops ignored.
inline std::vector<std::vector<Rational>> reduced_laplacian(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<Rational>> l(n - 1, std::vector<Rational>(n - 1, 0));
  for (const auto& e : edges) {
    if (e.a == e.b) continue;
    if (e.a > 0) l[e.a - 1][e.a - 1] += 1;
    if (e.b > 0) l[e.b - 1][e.b - 1] += 1;
    if (e.a > 0 && e.b > 0) {
      l[e.a - 1][e.b - 1] -= 1;
      l[e.b - 1][e.a - 1] -= 1;
    }
  }
  return l;
}

/// Determinant by rational Gaussian elimination with row swaps.
inline Rational rational_determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline Integer kirchhoff(std::size_t n, const std::vector<Edge>& edges) {
  if (n <= 1) return 1;
  Rational d = rational_determinant(reduced_laplacian(n, edges));
  return dcover::num(d);
}

/// Spanning trees by exhaustive search over edge subsets with union-find.
inline Integer brute_spanning_trees(std::size_t n, const std::vector<Edge>& all_edges) {
  std::vector<Edge> edges;
  for (const auto& e : all_edges)
    if (e.a != e.b) edges.push_back(e);
  if (n <= 1) return 1;
  Integer count = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() == n - 1) {
      std::vector<std::size_t> uf(n);
      std::iota(uf.begin(), uf.end(), std::size_t{0});
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return uf[x] == x ? x : uf[x] = find(uf[x]);
      };
      for (std::size_t e : chosen) {
        std::size_t x = find(edges[e].a), y = find(edges[e].b);
        if (x == y) return;
        uf[x] = y;
      }
      ++count;
      return;
    }
    for (std::size_t e = start; e < edges.size(); ++e) {
      if (edges.size() - e < n - 1 - chosen.size()) return;
      chosen.push_back(e);
      rec(e + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return count;
}

/// The critical group Div^0 / Prin of a multigraph, enumerated element by
/// element. Elements are integer vectors on vertices 1..n-1 (vertex 0 absorbs
/// the degree); two vectors are equal in the group iff L^-1 x agree mod 1.
class CriticalGroup {
public:
  CriticalGroup(std::size_t n, const std::vector<Edge>& edges, std::size_t limit = 2'000'000) : n_(n) {
    if (n_ <= 1) {
      elements_.push_back({});
      keys_.insert({{}, 0});
      return;
    }
    inv_ = invert(reduced_laplacian(n_, edges));
    std::vector<Integer> zero(n_ - 1, 0);
    keys_.insert({key(zero), 0});
    elements_.push_back(zero);
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      for (std::size_t i = 0; i + 1 < n_; ++i) {
        std::vector<Integer> x = elements_[head];
        x[i] += 1;
        auto k = key(x);
        if (keys_.contains(k)) continue;
        keys_.insert({k, elements_.size()});
        elements_.push_back(std::move(x));
        if (elements_.size() > limit) throw std::runtime_error("critical group too large for the oracle");
      }
    }
  }

  std::size_t order() const { return elements_.size(); }

  /// Number of elements fixed by the vertex permutation sigma.
  std::size_t fixed_points(const std::vector<std::size_t>& sigma) const {
    if (n_ <= 1) return 1;
    std::size_t count = 0;
    for (const auto& x : elements_)
      if (key(act(sigma, x)) == key(x)) ++count;
    return count;
  }

  /// #{x : k x = 0}; for Z/d_1 + ... this is prod gcd(k, d_i).
  std::size_t killed_by(std::int64_t k) const {
    std::size_t count = 0;
    for (const auto& x : elements_) {
      std::vector<Integer> y = x;
      for (auto& v : y) v *= k;
      if (key(y) == key(std::vector<Integer>(x.size(), 0))) ++count;
    }
    return count;
  }

private:
  using Key = std::vector<Rational>;

  static std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (a[p][c] == 0) ++p;
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      Rational f = a[c][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[c][k] /= f;
        inv[c][k] /= f;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a[r][c] == 0) continue;
        Rational g = a[r][c];
        for (std::size_t k = 0; k < n; ++k) {
          a[r][k] -= g * a[c][k];
          inv[r][k] -= g * inv[c][k];
        }
      }
    }
    return inv;
  }

  Key key(const std::vector<Integer>& x) const {
    Key k(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += inv_[i][j] * x[j];
      Rational fl = dcover::floor_of(s);
      k[i] = s - fl;
    }
    return k;
  }

  std::vector<Integer> act(const std::vector<std::size_t>& sigma, const std::vector<Integer>& x) const {
    std::vector<Integer> full(n_, 0);
    Integer sum = 0;
    for (std::size_t i = 1; i < n_; ++i) {
      full[i] = x[i - 1];
      sum += x[i - 1];
    }
    full[0] = -sum;
    std::vector<Integer> image(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) image[sigma[v]] = full[v];
    return {image.begin() + 1, image.end()};
  }

  std::size_t n_;
  std::vector<std::vector<Rational>> inv_;
  std::map<Key, std::size_t> keys_;
  std::vector<std::vector<Integer>> elements_;
};

inline std::vector<Edge> edges_of(const dcover::UnitGraph& u) {
  std::vector<Edge> out;
  for (const auto& e : u.edges) out.push_back({e.from, e.to});
  return out;
}

/// True iff the vertex permutation maps the edge multiset onto itself.
inline bool preserves_edges(const dcover::UnitGraph& u, const std::vector<std::size_t>& sigma) {
  std::multiset<std::pair<std::size_t, std::size_t>> before, after;
  for (const auto& e : u.edges) {
    before.insert(std::minmax(e.from, e.to));
    after.insert(std::minmax(sigma[e.from], sigma[e.to]));
  }
  return before == after;
}

/// prod gcd(k, d_i) over the invariant factors.
inline Integer killed_by_formula(const std::vector<Integer>& factors, std::int64_t k) {
  Integer c = 1;
  for (const auto& d : factors) c *= boost::multiprecision::gcd(Integer(k), d);
  return c;
}

}  // namespace oracle
