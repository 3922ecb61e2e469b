#pragma once

// Cluster picture of a degree-two cover: the nested threshold balls of the
// branch locus with their depths d_s, invariants v_s and relative depths.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcover/branch_data.hpp"

namespace dcover {

struct Cluster {
  std::vector<std::size_t> members;  // sorted label positions, at least two
  std::string id;                    // canonical identifier
  Rational depth;                    // d_s
  std::optional<std::size_t> parent; // empty for the root
  std::vector<std::size_t> children; // ordered by canonical id
  Rational v;                        // v_s
  std::optional<Rational> delta;     // d_s - d_{P(s)}, empty for the root

  std::size_t size() const noexcept { return members.size(); }
  bool contains(std::size_t label) const {
    return std::binary_search(members.begin(), members.end(), label);
  }
};

struct ClassificationFlags {
  bool principal = false;
  bool twin = false;
  bool even = false;
  bool uebereven = false;
  bool maximal = false;

  friend bool operator==(const ClassificationFlags&, const ClassificationFlags&) = default;
};

class ClusterPicture {
public:
  /// Clusters in pre-order; index 0 is the root s_0.
  const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
  const Cluster& cluster(std::size_t i) const { return clusters_.at(i); }
  const Cluster& root() const { return clusters_.front(); }
  std::size_t size() const noexcept { return clusters_.size(); }
  const BranchDatum& source() const noexcept { return source_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  std::optional<std::size_t> find(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  /// Throws if no cluster has that identifier.
  std::size_t at(const std::string& id) const {
    auto i = find(id);
    if (!i) throw ValidationError("no cluster with id '" + id + "'");
    return *i;
  }

  /// Index of the smallest cluster containing the label at all.
  std::size_t smallest_containing(std::size_t label) const { return leaf_.at(label); }

private:
  friend inline ClusterPicture build_cluster_picture(const BranchDatum& b);

  BranchDatum source_;
  std::vector<Cluster> clusters_;
  std::map<std::string, std::size_t> by_id_;
  std::vector<std::size_t> leaf_;
  std::vector<std::string> warnings_;
};

/// Smallest cluster containing {r} and every member of s (r ^ s).
inline std::size_t join(const ClusterPicture& pic, std::size_t label, std::size_t s) {
  if (label >= pic.source().size()) throw ValidationError("unknown label position " + std::to_string(label));
  std::size_t c = s;
  while (!pic.cluster(c).contains(label)) c = *pic.cluster(c).parent;
  return c;
}

inline std::size_t join(const ClusterPicture& pic, const Label& label, std::size_t s) {
  return join(pic, pic.source().index_of(label), s);
}

/// v_s = v_phi + sum over all labels r of d_{r ^ s}.
inline Rational v_of_cluster(const ClusterPicture& pic, std::size_t s) {
  Rational v = pic.source().v_phi;
  for (std::size_t r = 0; r < pic.source().size(); ++r) v += pic.cluster(join(pic, r, s)).depth;
  return v;
}

inline ClassificationFlags classify_cluster(const ClusterPicture& pic, std::size_t s) {
  const Cluster& c = pic.cluster(s);
  ClassificationFlags f;
  f.principal = c.size() >= 3;
  f.twin = c.size() == 2;
  f.even = c.size() % 2 == 0;
  f.maximal = c.parent.has_value() && *c.parent == 0;
  // Labels lying in no proper subcluster are singleton children and count as odd.
  std::size_t covered = 0;
  bool children_even = true;
  for (std::size_t ch : c.children) {
    covered += pic.cluster(ch).size();
    children_even = children_even && pic.cluster(ch).size() % 2 == 0;
  }
  f.uebereven = f.even && children_even && covered == c.size();
  return f;
}

/// d_s - d_{P(s)}; the root has none.
inline Rational relative_depth(const ClusterPicture& pic, std::size_t s) {
  const Cluster& c = pic.cluster(s);
  if (!c.parent) throw ValidationError("relative depth of the root cluster is undefined");
  return c.depth - pic.cluster(*c.parent).depth;
}

/// Builds the picture. Throws ValidationError listing every invariant
/// violation of the branch datum.
inline ClusterPicture build_cluster_picture(const BranchDatum& b) {
  if (auto violations = validate_branch_datum(b); !violations.empty()) {
    std::string msg = "invalid branch datum:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw ValidationError(msg);
  }
  const std::size_t n = b.size();

  // Every threshold ball {r' : d(r, r') >= c} of size >= 2.
  std::set<std::vector<std::size_t>> balls;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  balls.insert(all);
  for (std::size_t r = 0; r < n; ++r) {
    std::set<Rational> thresholds;
    for (std::size_t o = 0; o < n; ++o)
      if (o != r) thresholds.insert(b.depth(r, o));
    for (const Rational& c : thresholds) {
      std::vector<std::size_t> ball{r};
      for (std::size_t o = 0; o < n; ++o)
        if (o != r && b.depth(r, o) >= c) ball.push_back(o);
      std::sort(ball.begin(), ball.end());
      if (ball.size() >= 2) balls.insert(ball);
    }
  }

  ClusterPicture pic;
  pic.source_ = b;

  struct Raw {
    std::vector<std::size_t> members;
    std::string id;
  };
  std::vector<Raw> raw;
  for (const auto& m : balls) raw.push_back({m, canonical_id(b.labels, m)});

  // Parent = smallest strictly larger ball containing it.
  auto subset = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& c) {
    return a.size() < c.size() && std::includes(c.begin(), c.end(), a.begin(), a.end());
  };
  std::vector<std::optional<std::size_t>> parent(raw.size());
  std::size_t root_raw = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].members.size() == n) root_raw = i;
    for (std::size_t j = 0; j < raw.size(); ++j)
      if (subset(raw[i].members, raw[j].members) &&
          (!parent[i] || raw[j].members.size() < raw[*parent[i]].members.size()))
        parent[i] = j;
  }
  std::vector<std::vector<std::size_t>> kids(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (parent[i]) kids[*parent[i]].push_back(i);
  for (auto& k : kids)
    std::sort(k.begin(), k.end(), [&](std::size_t x, std::size_t y) { return raw[x].id < raw[y].id; });

  // Pre-order numbering, root first.
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack{root_raw};
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    order.push_back(c);
    for (auto it = kids[c].rbegin(); it != kids[c].rend(); ++it) stack.push_back(*it);
  }
  std::vector<std::size_t> index_of(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k) index_of[order[k]] = k;

  Rational global_min;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (first || b.depth(i, j) < global_min) global_min = b.depth(i, j);
      first = false;
    }
  if (global_min > 0)
    pic.warnings_.push_back("all pairwise depths are positive (minimum " + format_rational(global_min) +
                            "); the root cluster is still assigned depth 0");

  for (std::size_t k = 0; k < order.size(); ++k) {
    const Raw& r = raw[order[k]];
    Cluster c;
    c.members = r.members;
    c.id = r.id;
    if (k == 0) {
      c.depth = 0;
    } else {
      bool init = false;
      for (std::size_t x = 0; x < c.members.size(); ++x)
        for (std::size_t y = x + 1; y < c.members.size(); ++y) {
          const Rational& d = b.depth(c.members[x], c.members[y]);
          if (!init || d < c.depth) c.depth = d;
          init = true;
        }
    }
    if (parent[order[k]]) c.parent = index_of[*parent[order[k]]];
    for (std::size_t ch : kids[order[k]]) c.children.push_back(index_of[ch]);
    pic.by_id_[c.id] = k;
    pic.clusters_.push_back(std::move(c));
  }

  // Smallest cluster containing each label; pre-order means deeper clusters come later.
  pic.leaf_.assign(n, 0);
  for (std::size_t k = 0; k < pic.clusters_.size(); ++k)
    for (std::size_t m : pic.clusters_[k].members)
      if (pic.clusters_[k].size() <= pic.clusters_[pic.leaf_[m]].size()) pic.leaf_[m] = k;

  for (std::size_t k = 0; k < pic.clusters_.size(); ++k) {
    Cluster& c = pic.clusters_[k];
    if (c.parent) c.delta = c.depth - pic.clusters_[*c.parent].depth;
  }
  for (std::size_t k = 0; k < pic.clusters_.size(); ++k) pic.clusters_[k].v = v_of_cluster(pic, k);
  return pic;
}

/// Induced map on clusters (image index per cluster) of a label permutation
/// that preserves the depth matrix. Throws ValidationError naming a pair whose
/// depth is not preserved.
inline std::vector<std::size_t> apply_label_permutation(const ClusterPicture& pic, const Permutation& perm) {
  const BranchDatum& b = pic.source();
  const std::size_t n = b.size();
  if (!is_bijection(perm, n)) throw ValidationError("permutation is not a bijection of labels");

  auto check_pair = [&](std::size_t x, std::size_t y) {
    if (b.depth(x, y) != b.depth(perm[x], perm[y]))
      throw ValidationError("permutation is not an automorphism of the cluster picture: depth(" + b.labels[x] +
                            ", " + b.labels[y] + ") = " + format_rational(b.depth(x, y)) + " but depth(" +
                            b.labels[perm[x]] + ", " + b.labels[perm[y]] + ") = " +
                            format_rational(b.depth(perm[x], perm[y])));
  };

  // Deepest clusters first so the witness is the most local one.
  std::vector<std::size_t> by_depth(pic.size());
  for (std::size_t i = 0; i < by_depth.size(); ++i) by_depth[i] = i;
  std::stable_sort(by_depth.begin(), by_depth.end(),
                   [&](std::size_t x, std::size_t y) { return pic.cluster(x).depth > pic.cluster(y).depth; });
  for (std::size_t s : by_depth) {
    const auto& m = pic.cluster(s).members;
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = x + 1; y < m.size(); ++y) check_pair(m[x], m[y]);
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) check_pair(x, y);

  std::vector<std::size_t> image(pic.size());
  for (std::size_t s = 0; s < pic.size(); ++s) {
    std::vector<std::size_t> m;
    for (std::size_t x : pic.cluster(s).members) m.push_back(perm[x]);
    image[s] = pic.at(canonical_id(b.labels, m));
  }
  return image;
}

}  // namespace dcover
