#pragma once

// Metric dual graph of the minimal regular model of a semi-stable double
// cover, built from the cluster picture, and the Frobenius action on it.
//
// Every principal cluster s contributes the vertices v(s,+) and v(s,-); they
// are one vertex unless s is uebereven. Chains:
//
//   child s' of s, both principal, s' odd   v(s')   -> v(s)    length delta/2
//   child s' of s, both principal, s' even  v(s',+) -> v(s,+)  length delta
//                                           v(s',-) -> v(s,-)  length delta
//   twin t with principal parent s          v(s,-)  -> v(s,+)  length 2 delta_t
//
// Frobenius sends v(s,+-) to v(sigma(s), +-eps_s), the chains of an even
// cluster s' to those of sigma(s') with the sign flipped by eps_{s'}, and the
// twin chain L_t to eps_t * L_{sigma(t)}, where -L means reversed.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcover/cluster_picture.hpp"

namespace dcover {

enum class ChainRole { kOddChild, kEvenChild, kTwin, kExtra };

struct GraphVertex {
  std::string id;
  std::size_t cluster = 0;
  int sign = 0;  // +1 / -1 for one of a pair, 0 when v(s,+) = v(s,-)
};

struct Chain {
  std::string id;
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t length = 1;
  std::size_t cluster = 0;  // originating cluster (s' or t)
  int sign = 0;             // +1 / -1 for the two chains of an even child, else 0
  ChainRole role = ChainRole::kExtra;
};

class MetricGraph {
public:
  const std::vector<GraphVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Chain>& chains() const noexcept { return chains_; }

  /// Vertex carrying v(s, sign); sign is ignored when s has a single vertex.
  std::size_t vertex_of(std::size_t cluster, int sign) const {
    auto it = by_cluster_.find(cluster);
    if (it == by_cluster_.end()) throw GraphError("cluster has no vertex in the dual graph");
    const auto& [plus, minus] = it->second;
    return sign < 0 ? minus : plus;
  }

  bool has_vertex_for(std::size_t cluster) const { return by_cluster_.contains(cluster); }

  std::size_t add_vertex(const std::string& id, std::size_t cluster, int sign) {
    vertices_.push_back({id, cluster, sign});
    return vertices_.size() - 1;
  }

  /// Registers the vertices standing for v(s,+) and v(s,-).
  void bind_cluster(std::size_t cluster, std::size_t plus, std::size_t minus) {
    by_cluster_[cluster] = {plus, minus};
  }

  std::size_t add_chain(Chain c) {
    if (c.length < 1) throw GraphError("chain " + c.id + " must have positive length");
    if (c.from >= vertices_.size() || c.to >= vertices_.size()) throw GraphError("chain endpoint out of range");
    chains_.push_back(std::move(c));
    return chains_.size() - 1;
  }

  std::optional<std::size_t> find_chain(const std::string& id) const {
    for (std::size_t i = 0; i < chains_.size(); ++i)
      if (chains_[i].id == id) return i;
    return std::nullopt;
  }

  std::int64_t first_betti_number() const {
    return static_cast<std::int64_t>(chains_.size()) - static_cast<std::int64_t>(vertices_.size()) + 1;
  }

private:
  std::vector<GraphVertex> vertices_;
  std::vector<Chain> chains_;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> by_cluster_;
};

/// chain c goes to chain_map[c]; chain_sign -1 means the image runs reversed.
struct GraphAutomorphism {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> chain_map;
  std::vector<int> chain_sign;

  friend bool operator==(const GraphAutomorphism&, const GraphAutomorphism&) = default;
};

inline GraphAutomorphism identity_automorphism(const MetricGraph& gr) {
  GraphAutomorphism a;
  for (std::size_t i = 0; i < gr.vertices().size(); ++i) a.vertex_map.push_back(i);
  for (std::size_t i = 0; i < gr.chains().size(); ++i) {
    a.chain_map.push_back(i);
    a.chain_sign.push_back(1);
  }
  return a;
}

/// (a * b) applies b first.
inline GraphAutomorphism compose(const GraphAutomorphism& a, const GraphAutomorphism& b) {
  GraphAutomorphism c;
  for (std::size_t v : b.vertex_map) c.vertex_map.push_back(a.vertex_map[v]);
  for (std::size_t i = 0; i < b.chain_map.size(); ++i) {
    c.chain_map.push_back(a.chain_map[b.chain_map[i]]);
    c.chain_sign.push_back(a.chain_sign[b.chain_map[i]] * b.chain_sign[i]);
  }
  return c;
}

/// Throws GraphError unless `aut` is a bijection preserving incidence,
/// orientation and chain lengths.
inline void validate_automorphism(const MetricGraph& gr, const GraphAutomorphism& aut) {
  const auto& vs = gr.vertices();
  const auto& cs = gr.chains();
  if (aut.vertex_map.size() != vs.size() || aut.chain_map.size() != cs.size() || aut.chain_sign.size() != cs.size())
    throw GraphError("automorphism has the wrong size");
  std::vector<bool> hit_v(vs.size(), false), hit_c(cs.size(), false);
  for (std::size_t v : aut.vertex_map) {
    if (v >= vs.size() || hit_v[v]) throw GraphError("vertex map is not a bijection");
    hit_v[v] = true;
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::size_t j = aut.chain_map[i];
    if (j >= cs.size() || hit_c[j]) throw GraphError("chain map is not a bijection");
    hit_c[j] = true;
    const Chain& c = cs[i];
    const Chain& img = cs[j];
    if (c.length != img.length) throw GraphError("chain " + c.id + " maps to a chain of different length");
    std::size_t a = aut.vertex_map[c.from], b = aut.vertex_map[c.to];
    bool ok = aut.chain_sign[i] > 0 ? (a == img.from && b == img.to) : (a == img.to && b == img.from);
    if (!ok)
      throw GraphError("endpoint mismatch: chain " + c.id + " does not map onto " + img.id +
                       " (inconsistent eps values?)");
  }
}

/// Chain length as an integer; throws naming the cluster otherwise.
inline std::int64_t integral_length(const Rational& len, const Cluster& c) {
  if (!is_integral(len) || len <= 0)
    throw GraphError("chain length " + format_rational(len) + " for cluster " + c.id + " is not a positive integer");
  return to_int64(num(len));
}

inline MetricGraph build_dual_graph(const ClusterPicture& pic) {
  MetricGraph gr;
  std::vector<std::size_t> principal;
  for (std::size_t s = 0; s < pic.size(); ++s)
    if (pic.cluster(s).size() >= 3) principal.push_back(s);

  if (principal.empty()) {
    std::size_t v = gr.add_vertex("v(" + pic.root().id + ")", 0, 0);
    gr.bind_cluster(0, v, v);
    return gr;
  }

  // Vertices sorted by identifier so index 0 is the lexicographically least.
  struct Pending {
    std::string id;
    std::size_t cluster;
    int sign;
  };
  std::vector<Pending> pending;
  for (std::size_t s : principal) {
    const std::string& id = pic.cluster(s).id;
    if (classify_cluster(pic, s).uebereven) {
      pending.push_back({"v(" + id + ",+)", s, 1});
      pending.push_back({"v(" + id + ",-)", s, -1});
    } else {
      pending.push_back({"v(" + id + ")", s, 0});
    }
  }
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) { return a.id < b.id; });
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> slots;
  for (const auto& p : pending) {
    std::size_t v = gr.add_vertex(p.id, p.cluster, p.sign);
    auto& slot = slots[p.cluster];
    if (p.sign >= 0) slot.first = v;
    if (p.sign <= 0) slot.second = v;
  }
  for (const auto& [s, pm] : slots) gr.bind_cluster(s, pm.first, pm.second);

  std::vector<Chain> chains;
  for (std::size_t s = 1; s < pic.size(); ++s) {
    const Cluster& c = pic.cluster(s);
    const std::size_t parent = *c.parent;
    if (pic.cluster(parent).size() < 3) continue;
    const Rational delta = *c.delta;
    if (c.size() == 2) {
      chains.push_back({"L(" + c.id + ")", gr.vertex_of(parent, -1), gr.vertex_of(parent, 1),
                        integral_length(2 * delta, c), s, 0, ChainRole::kTwin});
    } else if (c.size() % 2 != 0) {
      chains.push_back({"L(" + c.id + ")", gr.vertex_of(s, 0), gr.vertex_of(parent, 0),
                        integral_length(delta / 2, c), s, 0, ChainRole::kOddChild});
    } else {
      std::int64_t len = integral_length(delta, c);
      chains.push_back({"L(" + c.id + ",+)", gr.vertex_of(s, 1), gr.vertex_of(parent, 1), len, s, 1,
                        ChainRole::kEvenChild});
      chains.push_back({"L(" + c.id + ",-)", gr.vertex_of(s, -1), gr.vertex_of(parent, -1), len, s, -1,
                        ChainRole::kEvenChild});
    }
  }
  std::sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) { return a.id < b.id; });
  for (auto& ch : chains) gr.add_chain(std::move(ch));
  return gr;
}

/// Sign eps_s for every cluster. An empty eps map means trivial signs;
/// otherwise it must be defined on exactly the even clusters, and odd
/// clusters get +1.
inline std::vector<int> resolve_eps(const ClusterPicture& pic, const std::map<std::string, int>& eps) {
  std::vector<int> out(pic.size(), 1);
  if (eps.empty()) return out;
  for (const auto& [id, v] : eps) {
    auto s = pic.find(id);
    if (!s) throw GraphError("eps given for '" + id + "', which is not a cluster");
    if (pic.cluster(*s).size() % 2 != 0 && v != 1)
      throw GraphError("eps for odd cluster '" + id + "' must be +1");
  }
  for (std::size_t s = 0; s < pic.size(); ++s) {
    if (pic.cluster(s).size() % 2 != 0) continue;
    auto it = eps.find(pic.cluster(s).id);
    if (it == eps.end()) throw GraphError("eps missing for even cluster '" + pic.cluster(s).id + "'");
    out[s] = it->second;
  }
  return out;
}

/// Frobenius action given the permutation of branch points and eps signs.
inline GraphAutomorphism frobenius_automorphism(const MetricGraph& gr, const ClusterPicture& pic,
                                                const Permutation& frobenius, const std::map<std::string, int>& eps) {
  const std::vector<std::size_t> cmap = apply_label_permutation(pic, frobenius);
  const std::vector<int> e = resolve_eps(pic, eps);

  GraphAutomorphism aut;
  for (const GraphVertex& v : gr.vertices()) {
    const int sign = v.sign == 0 ? 1 : v.sign * e[v.cluster];
    aut.vertex_map.push_back(gr.vertex_of(cmap[v.cluster], sign));
  }
  for (const Chain& c : gr.chains()) {
    const Cluster& target = pic.cluster(cmap[c.cluster]);
    std::string id;
    int orientation = 1;
    switch (c.role) {
      case ChainRole::kOddChild: id = "L(" + target.id + ")"; break;
      case ChainRole::kEvenChild: id = "L(" + target.id + (c.sign * e[c.cluster] > 0 ? ",+)" : ",-)"); break;
      case ChainRole::kTwin:
        id = "L(" + target.id + ")";
        orientation = e[c.cluster];
        break;
      case ChainRole::kExtra: throw GraphError("frobenius action is undefined on extra chain " + c.id);
    }
    auto j = gr.find_chain(id);
    if (!j) throw GraphError("chain " + c.id + " has no image " + id);
    aut.chain_map.push_back(*j);
    aut.chain_sign.push_back(orientation);
  }
  validate_automorphism(gr, aut);
  return aut;
}

inline GraphAutomorphism frobenius_automorphism(const MetricGraph& gr, const ClusterPicture& pic,
                                                const GaloisDatum& g) {
  return frobenius_automorphism(gr, pic, g.frobenius, g.eps);
}

/// Chains expanded into unit edges. Vertex i < metric vertex count is the
/// metric vertex i; intermediate vertices follow in chain order.
struct UnitGraph {
  struct Edge {
    std::size_t from, to;
  };
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  /// For every chain, its unit edges and vertices w_0 = from, ..., w_n = to.
  std::vector<std::vector<std::size_t>> chain_edges;
  std::vector<std::vector<std::size_t>> chain_vertices;
};

struct UnitAutomorphism {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
  std::vector<int> edge_sign;
};

inline UnitGraph subdivide(const MetricGraph& gr) {
  UnitGraph u;
  u.vertex_count = gr.vertices().size();
  for (const Chain& c : gr.chains()) {
    std::vector<std::size_t> path{c.from};
    for (std::int64_t k = 1; k < c.length; ++k) path.push_back(u.vertex_count++);
    path.push_back(c.to);
    std::vector<std::size_t> es;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      u.edges.push_back({path[k], path[k + 1]});
      es.push_back(u.edges.size() - 1);
    }
    u.chain_edges.push_back(std::move(es));
    u.chain_vertices.push_back(std::move(path));
  }
  return u;
}

/// Canonical lift: a reversed chain of length n sends w_k to w'_{n-k}.
inline UnitAutomorphism lift_automorphism(const MetricGraph& gr, const UnitGraph& u, const GraphAutomorphism& aut) {
  UnitAutomorphism ua;
  ua.vertex_map.assign(u.vertex_count, 0);
  ua.edge_map.assign(u.edges.size(), 0);
  ua.edge_sign.assign(u.edges.size(), 1);
  for (std::size_t v = 0; v < gr.vertices().size(); ++v) ua.vertex_map[v] = aut.vertex_map[v];
  for (std::size_t c = 0; c < gr.chains().size(); ++c) {
    const std::size_t img = aut.chain_map[c];
    const int sign = aut.chain_sign[c];
    const auto& w = u.chain_vertices[c];
    const auto& w2 = u.chain_vertices[img];
    const auto& e = u.chain_edges[c];
    const auto& e2 = u.chain_edges[img];
    const std::size_t n = e.size();
    for (std::size_t k = 1; k < n; ++k) ua.vertex_map[w[k]] = sign > 0 ? w2[k] : w2[n - k];
    for (std::size_t k = 0; k < n; ++k) {
      ua.edge_map[e[k]] = sign > 0 ? e2[k] : e2[n - 1 - k];
      ua.edge_sign[e[k]] = sign;
    }
  }
  return ua;
}

/// Deterministic DOT rendering: vertices, then chains, each sorted by id.
inline std::string export_dot(const MetricGraph& gr) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  std::vector<std::size_t> vs(gr.vertices().size()), cs(gr.chains().size());
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = i;
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = i;
  std::sort(vs.begin(), vs.end(), [&](auto a, auto b) { return gr.vertices()[a].id < gr.vertices()[b].id; });
  std::sort(cs.begin(), cs.end(), [&](auto a, auto b) { return gr.chains()[a].id < gr.chains()[b].id; });

  std::string out = "graph dual_graph {\n";
  for (std::size_t i : vs) {
    const GraphVertex& v = gr.vertices()[i];
    out += "  " + quote(v.id);
    if (v.sign > 0)
      out += " [shape=doublecircle, xlabel=\"+\"]";
    else if (v.sign < 0)
      out += " [shape=doublecircle, xlabel=\"-\"]";
    else
      out += " [shape=circle]";
    out += ";\n";
  }
  for (std::size_t i : cs) {
    const Chain& c = gr.chains()[i];
    out += "  " + quote(gr.vertices()[c.from].id) + " -- " + quote(gr.vertices()[c.to].id) +
           " [label=\"" + std::to_string(c.length) + "\", id=" + quote(c.id) + "];\n";
  }
  return out + "}\n";
}

}  // namespace dcover
