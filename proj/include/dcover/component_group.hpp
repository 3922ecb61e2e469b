#pragma once

// Component group Phi = Lambda^dual / Lambda of a unit multigraph, where
// Lambda = H_1 with the edge-length pairing, the Frobenius action on Phi and
// its fixed points.

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "dcover/dual_graph.hpp"
#include "dcover/smith_normal_form.hpp"

namespace dcover {

struct CycleLattice {
  /// Basis cycles as signed edge-incidence vectors, one per non-tree edge.
  std::vector<std::vector<Integer>> basis;
  /// nontree_edges[i] is the edge that only basis cycle i uses, with coefficient +1.
  std::vector<std::size_t> nontree_edges;
  std::vector<bool> in_tree;
  IntMatrix gram;

  std::size_t rank() const noexcept { return basis.size(); }
};

struct AbelianGroup {
  /// Non-trivial invariant factors d_1 | d_2 | ..., each > 1.
  std::vector<Integer> invariant_factors;
  /// Smith form of the Gram matrix: U * gram * V = D.
  SmithForm<Integer> snf;
  /// Positions on the SNF diagonal holding the non-trivial factors.
  std::vector<std::size_t> positions;

  Integer order() const {
    Integer o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }
};

struct InducedAction {
  IntMatrix on_lattice;     // A on Lambda, cycle basis coordinates
  IntMatrix on_dual;        // B = gram A gram^-1 on Lambda^dual, dual basis
  IntMatrix on_group;       // action on (+) Z/d_i, entries reduced mod d_i
};

/// Fundamental cycles of a BFS spanning tree rooted at vertex 0.
/// Throws LatticeError on a disconnected graph.
inline CycleLattice cycle_basis(const UnitGraph& g) {
  CycleLattice cl;
  const std::size_t n = g.vertex_count;
  const std::size_t m = g.edges.size();
  cl.in_tree.assign(m, false);
  if (n == 0) return cl;

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < m; ++e) {
    adj[g.edges[e].from].push_back(e);
    if (g.edges[e].to != g.edges[e].from) adj[g.edges[e].to].push_back(e);
  }
  std::vector<std::optional<std::size_t>> up(n);  // tree edge towards the root
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : adj[v]) {
      std::size_t w = g.edges[e].from == v ? g.edges[e].to : g.edges[e].from;
      if (seen[w]) continue;
      seen[w] = true;
      up[w] = e;
      cl.in_tree[e] = true;
      queue.push_back(w);
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) throw LatticeError("graph is disconnected");

  // Adds the tree path from v up to the root, traversed upwards, times `sign`.
  auto add_path_to_root = [&](std::vector<Integer>& c, std::size_t v, int sign) {
    while (up[v]) {
      const auto& e = g.edges[*up[v]];
      std::size_t parent = e.from == v ? e.to : e.from;
      c[*up[v]] += sign * (e.from == v ? 1 : -1);
      v = parent;
    }
  };
  for (std::size_t e = 0; e < m; ++e) {
    if (cl.in_tree[e]) continue;
    std::vector<Integer> c(m, 0);
    c[e] = 1;
    add_path_to_root(c, g.edges[e].to, 1);
    add_path_to_root(c, g.edges[e].from, -1);
    cl.basis.push_back(std::move(c));
    cl.nontree_edges.push_back(e);
  }

  const std::size_t r = cl.basis.size();
  cl.gram = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Integer s = 0;
      for (std::size_t e = 0; e < m; ++e) s += cl.basis[i][e] * cl.basis[j][e];
      cl.gram(i, j) = s;
      cl.gram(j, i) = s;
    }
  return cl;
}

inline AbelianGroup component_group(const CycleLattice& cl) {
  if (!is_positive_definite(cl.gram)) throw LatticeError("Gram matrix is not positive definite");
  AbelianGroup g;
  g.snf = smith_normal_form(cl.gram);
  for (std::size_t i = 0; i < g.snf.D.rows(); ++i)
    if (g.snf.D(i, i) > 1) {
      g.invariant_factors.push_back(g.snf.D(i, i));
      g.positions.push_back(i);
    }
  return g;
}

/// Action of a graph automorphism on Lambda, Lambda^dual and Phi.
inline InducedAction induced_action(const UnitGraph& g, const CycleLattice& cl, const AbelianGroup& grp,
                                    const UnitAutomorphism& aut) {
  const std::size_t r = cl.rank();
  const std::size_t m = g.edges.size();
  InducedAction act;
  act.on_lattice = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Integer> image(m, 0);
    for (std::size_t e = 0; e < m; ++e)
      if (cl.basis[i][e] != 0) image[aut.edge_map[e]] += aut.edge_sign[e] * cl.basis[i][e];
    for (std::size_t j = 0; j < r; ++j) act.on_lattice(j, i) = image[cl.nontree_edges[j]];
    // The image must be a cycle, hence the combination read off above.
    for (std::size_t e = 0; e < m; ++e) {
      Integer s = 0;
      for (std::size_t j = 0; j < r; ++j) s += act.on_lattice(j, i) * cl.basis[j][e];
      if (s != image[e]) throw LatticeError("image of a basis cycle is not a cycle; invalid automorphism");
    }
  }
  if (act.on_lattice.transpose() * cl.gram * act.on_lattice != cl.gram)
    throw LatticeError("automorphism does not preserve the length pairing");

  if (r == 0) return act;
  const RatMatrix gram_q = to_rational(cl.gram);
  act.on_dual = to_integer(gram_q * to_rational(act.on_lattice) * inverse(gram_q));

  const IntMatrix& U = grp.snf.U;
  const IntMatrix full = to_integer(to_rational(U) * to_rational(act.on_dual) * inverse(to_rational(U)));
  const std::size_t k = grp.positions.size();
  act.on_group = IntMatrix(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const Integer& d = grp.invariant_factors[a];
      Integer x = full(grp.positions[a], grp.positions[b]) % d;
      if (x < 0) x += d;
      act.on_group(a, b) = x;
    }
  return act;
}

/// Reverses the orientation of every edge with flips[e] set, adjusting the
/// automorphism's edge signs to match.
inline void reorient(UnitGraph& g, UnitAutomorphism& aut, const std::vector<bool>& flips) {
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (flips[e]) std::swap(g.edges[e].from, g.edges[e].to);
    int f = (flips[e] ? -1 : 1) * (flips[aut.edge_map[e]] ? -1 : 1);
    aut.edge_sign[e] *= f;
  }
}

struct FixedPointOptions {
  std::uint64_t max_enumeration = 10'000'000;
  bool allow_algebraic = false;
};

/// |ker(M - I)| on (+) Z/d_i, read off the Smith form of [M - I | diag(d)].
inline Integer fixed_point_count_algebraic(const AbelianGroup& grp, const InducedAction& act) {
  const std::size_t k = grp.invariant_factors.size();
  if (k == 0) return 1;
  IntMatrix big(k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) big(i, j) = act.on_group(i, j) - (i == j ? 1 : 0);
    big(i, k + i) = grp.invariant_factors[i];
  }
  const auto f = smith_normal_form(big);
  Integer count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= f.D(i, i);
  return count;
}

/// Number of x in Phi with act(x) = x, by enumerating Phi.
inline Integer fixed_point_count(const AbelianGroup& grp, const InducedAction& act,
                                 const FixedPointOptions& opt = {}) {
  const Integer order = grp.order();
  if (order > opt.max_enumeration) {
    if (opt.allow_algebraic) return fixed_point_count_algebraic(grp, act);
    throw LatticeError("|Phi| = " + order.str() + " exceeds the enumeration bound " +
                       std::to_string(opt.max_enumeration) + "; raise the bound or enable the algebraic method");
  }
  const std::size_t k = grp.invariant_factors.size();
  std::vector<std::int64_t> d(k);
  std::vector<std::vector<std::int64_t>> M(k, std::vector<std::int64_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    d[i] = to_int64(grp.invariant_factors[i]);
    for (std::size_t j = 0; j < k; ++j) M[i][j] = to_int64(act.on_group(i, j));
  }
  std::vector<std::int64_t> x(k, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool fixed = true;
    for (std::size_t i = 0; i < k && fixed; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < k; ++j) s += static_cast<__int128>(M[i][j]) * x[j];
      fixed = static_cast<std::int64_t>(s % d[i]) == x[i];
    }
    if (fixed) ++count;
    std::size_t i = 0;
    while (i < k && ++x[i] == d[i]) x[i++] = 0;
    if (i == k) break;
  }
  return Integer(count);
}

/// Kirchhoff: any cofactor of the Laplacian. Loops are ignored.
inline Integer spanning_tree_count(const UnitGraph& g) {
  const std::size_t n = g.vertex_count;
  if (n <= 1) return 1;
  IntMatrix lap(n - 1, n - 1);
  for (const auto& e : g.edges) {
    if (e.from == e.to) continue;
    for (std::size_t v : {e.from, e.to})
      if (v > 0) lap(v - 1, v - 1) += 1;
    if (e.from > 0 && e.to > 0) {
      lap(e.from - 1, e.to - 1) -= 1;
      lap(e.to - 1, e.from - 1) -= 1;
    }
  }
  return determinant(lap);
}

}  // namespace dcover
