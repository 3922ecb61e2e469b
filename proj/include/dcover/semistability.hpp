#pragma once

// Semi-stability criterion and reduction type of a degree-two cover X -> Y
// where Y has good reduction.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dcover/cluster_picture.hpp"

namespace dcover {

enum class ViolationCode {
  kVPhiOdd,                     // (1) v_phi is odd
  kRamIndexGt2,                 // (2) ramification index of F(B)/F exceeds 2
  kPrincipalNotInertiaInvariant,// (3) some inertia element moves a principal cluster
  kVsOdd,                       // (4) v_s not an even integer
  kDsNonIntegral,               // (4) d_s not an integer
};

inline const char* to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::kVPhiOdd: return "V_PHI_ODD";
    case ViolationCode::kRamIndexGt2: return "RAM_INDEX_GT_2";
    case ViolationCode::kPrincipalNotInertiaInvariant: return "PRINCIPAL_NOT_INERTIA_INVARIANT";
    case ViolationCode::kVsOdd: return "V_S_ODD";
    case ViolationCode::kDsNonIntegral: return "D_S_NON_INTEGRAL";
  }
  return "?";
}

struct ConditionViolation {
  ViolationCode code;
  std::optional<std::string> cluster;  // canonical id for per-cluster codes

  std::string to_string() const {
    std::string s = dcover::to_string(code);
    if (cluster) s += "(" + *cluster + ")";
    return s;
  }
  friend bool operator==(const ConditionViolation&, const ConditionViolation&) = default;
};

struct Verdict {
  bool semistable = true;
  std::vector<ConditionViolation> violations;
  std::vector<std::string> warnings;
};

enum class ReductionKind { kGood, kSemistable, kPotentiallyTameSemistable, kPotentiallyTameGood, kWild };

inline const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::kGood: return "GOOD";
    case ReductionKind::kSemistable: return "SEMISTABLE";
    case ReductionKind::kPotentiallyTameSemistable: return "POTENTIALLY_TAME_SEMISTABLE";
    case ReductionKind::kPotentiallyTameGood: return "POTENTIALLY_TAME_GOOD";
    case ReductionKind::kWild: return "WILD";
  }
  return "?";
}

struct ReductionType {
  ReductionKind kind;
  std::optional<std::string> note;
};

/// Evaluates the four conditions of the criterion and returns every failure.
/// Requires genus_Y >= 1; the criterion does not hold for rational Y.
inline Verdict check_semistable(const ClusterPicture& pic, const GaloisDatum& g, const BranchDatum& b) {
  if (b.genus_Y < 1)
    throw ValidationError("semi-stability criterion requires genus(Y) >= 1, got " + std::to_string(b.genus_Y));

  Verdict out;
  if (b.v_phi % 2 != 0) out.violations.push_back({ViolationCode::kVPhiOdd, std::nullopt});
  if (b.ram_index > 2) out.violations.push_back({ViolationCode::kRamIndexGt2, std::nullopt});

  for (std::size_t s = 0; s < pic.size(); ++s) {
    const Cluster& c = pic.cluster(s);
    if (!classify_cluster(pic, s).principal) continue;
    for (const Permutation& sigma : g.inertia) {
      if (!is_bijection(sigma, b.size())) throw ValidationError("inertia element is not a bijection of labels");
      std::vector<std::size_t> image;
      for (std::size_t m : c.members) image.push_back(sigma[m]);
      if (canonical_id(b.labels, image) != c.id) {
        out.violations.push_back({ViolationCode::kPrincipalNotInertiaInvariant, c.id});
        break;
      }
    }
  }

  // v_{s_0} = v_phi is already covered by condition (1).
  for (std::size_t s = 1; s < pic.size(); ++s) {
    const Cluster& c = pic.cluster(s);
    if (!classify_cluster(pic, s).principal) continue;
    if (!is_integral(c.v) || num(c.v) % 2 != 0) out.violations.push_back({ViolationCode::kVsOdd, c.id});
    if (!is_integral(c.depth)) out.violations.push_back({ViolationCode::kDsNonIntegral, c.id});
  }

  out.semistable = out.violations.empty();
  if (out.semistable)
    for (const Cluster& c : pic.clusters())
      if (c.size() == 2 && !is_integral(2 * c.depth))
        out.warnings.push_back("twin " + c.id + " has depth " + format_rational(c.depth) +
                               " outside (1/2)Z; its dual-graph chain length is not integral");
  return out;
}

inline ReductionType reduction_type(const ClusterPicture& pic, const GaloisDatum&, const BranchDatum& b,
                                    const Verdict& verdict) {
  const bool only_root = pic.size() == 1;
  if (b.field_degree_e == 1 && b.v_phi % 2 == 0 && only_root) return {ReductionKind::kGood, std::nullopt};
  if (verdict.semistable) return {ReductionKind::kSemistable, std::nullopt};
  if (only_root) {
    std::optional<std::string> note;
    if (b.v_phi % 2 != 0) note = "good after a degree two extension";
    return {ReductionKind::kPotentiallyTameGood, note};
  }
  if (std::gcd(b.field_degree_e, b.residue_char) == 1)
    return {ReductionKind::kPotentiallyTameSemistable, std::nullopt};
  return {ReductionKind::kWild, std::nullopt};
}

}  // namespace dcover
