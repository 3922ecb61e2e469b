#pragma once

// Input model: branch points with pairwise depths, field invariants and
// Galois data of a degree-two cover.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dcover/errors.hpp"
#include "dcover/rational.hpp"

namespace dcover {

using Label = std::string;

/// Symmetric matrix of rational depths indexed by label position.
/// The diagonal is never read.
class DepthMatrix {
public:
  DepthMatrix() = default;
  explicit DepthMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, const Rational& d) {
    data_[i * n_ + j] = d;
    data_[j * n_ + i] = d;
  }

  friend bool operator==(const DepthMatrix&, const DepthMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// image[i] is the position of the label that label i is sent to.
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

inline bool is_bijection(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

/// (p * q)(i) = p(q(i))
inline Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Permutation invert(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = i;
  return r;
}

struct BranchDatum {
  std::vector<Label> labels;
  DepthMatrix depth;
  std::int64_t v_phi = 0;
  std::int64_t field_degree_e = 1;  // [L:F]
  std::int64_t ram_index = 1;       // ramification index of F(B)/F
  std::int64_t residue_char = 3;
  std::int64_t genus_Y = 1;

  std::size_t size() const noexcept { return labels.size(); }

  /// Throws ValidationError for an unknown label.
  std::size_t index_of(const Label& l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw ValidationError("unknown label '" + l + "'");
    return static_cast<std::size_t>(it - labels.begin());
  }

  friend bool operator==(const BranchDatum&, const BranchDatum&) = default;
};

struct GaloisDatum {
  Permutation frobenius;
  /// Keyed by canonical cluster id; values are +1 or -1.
  std::map<std::string, int> eps;
  std::vector<Permutation> inertia;

  friend bool operator==(const GaloisDatum&, const GaloisDatum&) = default;
};

struct CoverSpec {
  BranchDatum branch;
  GaloisDatum galois;

  friend bool operator==(const CoverSpec&, const CoverSpec&) = default;
};

/// Canonical identifier of a set of labels: sorted labels joined by commas.
inline std::string canonical_id(const std::vector<Label>& labels, std::span<const std::size_t> members) {
  std::vector<std::string> names;
  names.reserve(members.size());
  for (std::size_t m : members) names.push_back(labels[m]);
  std::sort(names.begin(), names.end());
  std::string id;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) id += ',';
    id += names[i];
  }
  return id;
}

enum class ViolationKind {
  kTooFewLabels,
  kOddLabelCount,
  kDuplicateLabel,
  kNegativeDepth,
  kDenominator,
  kUltrametric,
  kFieldData,
};

struct Violation {
  ViolationKind kind;
  std::vector<Label> witness;  // offending pair or triple, when there is one
  std::string message;
};

/// Empty iff every BranchDatum invariant holds.
inline std::vector<Violation> validate_branch_datum(const BranchDatum& b) {
  std::vector<Violation> out;
  const std::size_t n = b.size();
  if (n < 2) out.push_back({ViolationKind::kTooFewLabels, {}, "need at least two branch points"});
  if (n % 2 != 0)
    out.push_back({ViolationKind::kOddLabelCount, {},
                   "branch locus of a degree-two cover has even size, got " + std::to_string(n)});
  {
    std::set<Label> seen;
    for (const auto& l : b.labels)
      if (!seen.insert(l).second)
        out.push_back({ViolationKind::kDuplicateLabel, {l}, "duplicate label '" + l + "'"});
  }
  if (b.field_degree_e < 1)
    out.push_back({ViolationKind::kFieldData, {}, "field degree e must be positive"});
  if (b.ram_index < 1 || (b.field_degree_e >= 1 && b.field_degree_e % b.ram_index != 0))
    out.push_back({ViolationKind::kFieldData, {}, "ramification index must be positive and divide e"});
  if (b.residue_char == 2 || !is_prime(b.residue_char))
    out.push_back({ViolationKind::kFieldData, {}, "residue characteristic must be an odd prime"});
  if (b.genus_Y < 0) out.push_back({ViolationKind::kFieldData, {}, "genus of Y must be non-negative"});
  if (b.depth.size() != n) {
    out.push_back({ViolationKind::kFieldData, {}, "depth matrix size does not match labels"});
    return out;
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational& d = b.depth(i, j);
      if (d < 0)
        out.push_back({ViolationKind::kNegativeDepth, {b.labels[i], b.labels[j]},
                       "negative depth " + format_rational(d)});
      if (b.field_degree_e >= 1 && b.field_degree_e % den(d) != 0)
        out.push_back({ViolationKind::kDenominator, {b.labels[i], b.labels[j]},
                       "depth " + format_rational(d) + " has denominator not dividing e = " +
                           std::to_string(b.field_degree_e)});
    }

  // The minimum of the three pairwise depths must be attained at least twice.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Rational& a = b.depth(i, j);
        const Rational& c = b.depth(j, k);
        const Rational& e = b.depth(i, k);
        const Rational& m = std::min({a, c, e});
        int hits = (a == m) + (c == m) + (e == m);
        if (hits < 2)
          out.push_back({ViolationKind::kUltrametric, {b.labels[i], b.labels[j], b.labels[k]},
                         "ultrametric law fails at (" + b.labels[i] + ", " + b.labels[j] + ", " +
                             b.labels[k] + ")"});
      }
  return out;
}

/// A branch point given by a rational coordinate, or the point at infinity.
using Point = std::optional<Rational>;

struct PointDepths {
  DepthMatrix depths;
  std::vector<std::string> warnings;
};

/// depth(r, r') = v_p(r - r') clamped below at 0; depth(inf, .) = 0.
inline PointDepths depths_from_rational_points(std::span<const Point> points, std::int64_t p) {
  if (p % 2 == 0 || !is_prime(p)) throw ValidationError("p must be an odd prime, got " + std::to_string(p));
  const std::size_t n = points.size();
  std::size_t infinities = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i]) ++infinities;
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j])
        throw ValidationError("duplicate point at positions " + std::to_string(i) + " and " +
                              std::to_string(j));
  }
  if (infinities > 1) throw ValidationError("at most one point at infinity");

  PointDepths out{DepthMatrix(n), {}};
  const Integer prime(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!points[i] || !points[j]) {
        out.depths.set(i, j, 0);
        continue;
      }
      int v = valuation(Rational(*points[i] - *points[j]), prime);
      if (v < 0) {
        out.warnings.push_back("negative valuation between points " + std::to_string(i) + " and " +
                               std::to_string(j) + " clamped to 0");
        v = 0;
      }
      out.depths.set(i, j, v);
    }
  return out;
}

}  // namespace dcover
