#pragma once

// Admissible disc collection of a semi-stable cover, its tree, the parity
// invariants v_D and the shape of the special fibre above each disc.
//
// A disc here is a member set together with an integer depth. Following set
// inclusion, a deeper disc is contained in a shallower one; the parent of a
// disc always has depth one less.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcover/cluster_picture.hpp"
#include "dcover/semistability.hpp"

namespace dcover {

struct Disc {
  std::vector<std::size_t> members;
  std::int64_t depth = 0;
  bool defining = false;   // D(s) for a cluster of integral depth
  std::size_t origin = 0;  // cluster whose member set this disc carries
  std::int64_t v = 0;      // v_D

  friend bool operator==(const Disc&, const Disc&) = default;
};

struct DiscCollection {
  /// Pre-order; index 0 is D_0.
  std::vector<Disc> discs;
  std::vector<std::optional<std::size_t>> parent;
  std::vector<std::vector<std::size_t>> children;

  std::size_t size() const noexcept { return discs.size(); }
};

/// Rooted tree on the discs; edges are parent/child pairs.
struct DiscTree {
  std::size_t root = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (parent, child)
};

enum class FiberKind : int {
  kRootNotUebereven = 1,
  kRootUebereven = 2,
  kDefiningUebereven = 3,
  kDefiningNotUebereven = 4,
  kHalfDepthTwin = 5,
  kOddV = 6,
  kGeneric = 7,
};

struct FiberDescriptor {
  int component_count = 1;
  int multiplicity = 1;
  int self_chains = 0;
  bool exceptional = false;
  FiberKind kind = FiberKind::kGeneric;
};

inline std::string disc_name(const ClusterPicture& pic, const Disc& d) {
  if (d.members.size() == pic.source().size() && d.depth == 0) return "D0";
  return "D(" + pic.cluster(d.origin).id + ";" + std::to_string(d.depth) + ")";
}

/// v_D = v_phi + sum over labels r of min(d_D, depth of r ^ origin(D)).
inline Integer disc_invariant_v(const ClusterPicture& pic, const Disc& d) {
  Rational v = pic.source().v_phi;
  const Rational cap(d.depth);
  for (std::size_t r = 0; r < pic.source().size(); ++r) {
    const Rational& j = pic.cluster(join(pic, r, d.origin)).depth;
    v += j < cap ? j : cap;
  }
  if (!is_integral(v)) throw ValidationError("v_D is not integral for " + disc_name(pic, d));
  return num(v);
}

/// Throws ValidationError if a principal cluster has non-integral depth.
inline DiscCollection build_disc_collection(const ClusterPicture& pic) {
  for (std::size_t s = 0; s < pic.size(); ++s)
    if (pic.cluster(s).size() >= 3 && !is_integral(pic.cluster(s).depth))
      throw ValidationError("principal cluster " + pic.cluster(s).id + " has non-integral depth " +
                            format_rational(pic.cluster(s).depth));

  DiscCollection dc;
  // For every cluster s: the integral depths d with d_{P(s)} < d <= d_s.
  auto visit = [&](auto&& self, std::size_t s, std::optional<std::size_t> parent_disc) -> void {
    const Cluster& c = pic.cluster(s);
    std::optional<std::size_t> last = parent_disc;
    if (!c.parent) {
      dc.discs.push_back({c.members, 0, true, s, 0});
      dc.parent.push_back(std::nullopt);
      last = 0;
    } else {
      const std::int64_t lo = to_int64(num(pic.cluster(*c.parent).depth));
      const std::int64_t hi = to_int64(floor_of(c.depth));
      for (std::int64_t d = lo + 1; d <= hi; ++d) {
        dc.discs.push_back({c.members, d, d == hi && is_integral(c.depth), s, 0});
        dc.parent.push_back(last);
        last = dc.discs.size() - 1;
      }
    }
    for (std::size_t ch : c.children) self(self, ch, last);
  };
  visit(visit, 0, std::nullopt);

  dc.children.assign(dc.size(), {});
  for (std::size_t i = 0; i < dc.size(); ++i) {
    if (dc.parent[i]) dc.children[*dc.parent[i]].push_back(i);
    dc.discs[i].v = to_int64(disc_invariant_v(pic, dc.discs[i]));
  }
  return dc;
}

inline DiscTree disc_tree(const DiscCollection& dc) {
  DiscTree t;
  for (std::size_t i = 0; i < dc.size(); ++i)
    if (dc.parent[i]) t.edges.push_back({*dc.parent[i], i});
  return t;
}

/// Even, and every residue class of the disc holds an even number of branch
/// points. Below a non-defining disc the only class is the origin cluster;
/// below a defining disc the classes are the child clusters and singletons.
inline bool disc_is_uebereven(const ClusterPicture& pic, const Disc& d) {
  if (d.members.size() % 2 != 0) return false;
  if (!d.defining) return true;
  return classify_cluster(pic, d.origin).uebereven;
}

/// Fibre above a disc; the kind is the first matching case in the order 1..7.
inline FiberDescriptor classify_fiber(const ClusterPicture& pic, const DiscCollection& dc, std::size_t i,
                                      const Verdict& verdict) {
  if (!verdict.semistable) throw NotSemistableError("fibre classification needs a semi-stable cover");
  const Disc& d = dc.discs.at(i);
  const Cluster& origin = pic.cluster(d.origin);
  FiberDescriptor f;
  const bool ue = disc_is_uebereven(pic, d);
  f.component_count = ue ? 2 : 1;
  f.multiplicity = d.v % 2 != 0 ? 2 : 1;
  f.exceptional = d.v % 2 != 0;

  const Rational half_above = Rational(d.depth) + Rational(1, 2);
  for (std::size_t s = d.origin; s < pic.size(); ++s) {
    const Cluster& t = pic.cluster(s);
    if (t.size() == 2 && t.depth == half_above &&
        std::includes(origin.members.begin(), origin.members.end(), t.members.begin(), t.members.end()))
      ++f.self_chains;
  }

  const bool is_root = i == 0;
  if (is_root && !ue)
    f.kind = FiberKind::kRootNotUebereven;
  else if (is_root)
    f.kind = FiberKind::kRootUebereven;
  else if (d.defining && origin.size() >= 3 && ue)
    f.kind = FiberKind::kDefiningUebereven;
  else if (d.defining && !ue)
    f.kind = FiberKind::kDefiningNotUebereven;
  else if (origin.size() == 2 && origin.depth == half_above)
    f.kind = FiberKind::kHalfDepthTwin;
  else if (d.v % 2 != 0)
    f.kind = FiberKind::kOddV;
  else
    f.kind = FiberKind::kGeneric;
  return f;
}

}  // namespace dcover
