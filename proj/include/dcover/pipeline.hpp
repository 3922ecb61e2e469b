#pragma once

// End-to-end pipeline: cover data -> Tamagawa number of the Jacobian and the
// normalized p-adic volume of the corresponding Hitchin fibre.

#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dcover/cluster_notation.hpp"
#include "dcover/component_group.hpp"
#include "dcover/disc_model.hpp"
#include "dcover/dual_graph.hpp"
#include "dcover/semistability.hpp"

namespace dcover {

struct NormalizationInputs {
  Integer q;                         // size of the residue field
  std::int64_t dim_d = 1;            // dimension of the abelian variety
  Integer identity_component_points; // |A_s^0(k_F)|
  Rational conductor_c = 1;          // c_omega(A)
};

/// c * |A^0_s| * tamagawa / q^d, exactly.
inline Rational normalized_volume(const Integer& tamagawa, const NormalizationInputs& n) {
  if (n.q < 2 || n.dim_d < 1 || n.identity_component_points < 1 || n.conductor_c <= 0 || tamagawa < 1)
    throw ValidationError("normalization inputs must be positive (q >= 2)");
  Integer qd = 1;
  for (std::int64_t i = 0; i < n.dim_d; ++i) qd *= n.q;
  return n.conductor_c * Rational(n.identity_component_points * tamagawa, qd);
}

/// Zero locus of the completed-square discriminant a1^2 - 4 a2 of a rank-2
/// spectral cover y^2 - a1 y + a2, given as rational points (nullopt = the
/// point at infinity). Returned unchanged once it is known to be a reduced,
/// non-empty branch divisor, ready for depths_from_rational_points.
inline std::vector<Point> hitchin_discriminant_points(std::span<const Point> zeros, std::int64_t p) {
  if (p % 2 == 0 || !is_prime(p)) throw ValidationError("p must be an odd prime");
  if (zeros.empty())
    throw ValidationError("empty discriminant locus: a degree-two cover needs branch points");
  for (std::size_t i = 0; i < zeros.size(); ++i)
    for (std::size_t j = i + 1; j < zeros.size(); ++j)
      if (zeros[i] == zeros[j]) throw ValidationError("repeated root: the branch divisor is not reduced");
  return {zeros.begin(), zeros.end()};
}

struct PipelineOptions {
  FixedPointOptions fixed_points;
};

/// Every intermediate object of one run.
struct Analysis {
  explicit Analysis(ClusterPicture p) : picture(std::move(p)) {}

  ClusterPicture picture;
  Verdict verdict;
  ReductionType reduction{ReductionKind::kWild, std::nullopt};
  std::optional<DiscCollection> discs;
  std::optional<MetricGraph> graph;
  std::optional<GraphAutomorphism> frobenius;
  std::optional<UnitGraph> unit_graph;
  std::optional<CycleLattice> lattice;
  std::optional<AbelianGroup> group;
  std::optional<InducedAction> action;
  std::optional<Integer> spanning_trees;
  std::optional<Integer> tamagawa;
};

/// Cluster picture, verdict and reduction type only.
inline Analysis analyze_reduction(const CoverSpec& spec) {
  Analysis a(build_cluster_picture(spec.branch));
  a.verdict = check_semistable(a.picture, spec.galois, spec.branch);
  a.reduction = reduction_type(a.picture, spec.galois, spec.branch, a.verdict);
  return a;
}

/// Full pipeline. Throws NotSemistableError if the criterion fails.
inline Analysis analyze(const CoverSpec& spec, const PipelineOptions& opt = {}) {
  Analysis a = analyze_reduction(spec);
  if (!a.verdict.semistable) {
    std::string msg = "cover is not semi-stable:";
    for (const auto& v : a.verdict.violations) msg += " " + v.to_string();
    throw NotSemistableError(msg);
  }
  a.discs = build_disc_collection(a.picture);
  a.graph = build_dual_graph(a.picture);
  a.frobenius = frobenius_automorphism(*a.graph, a.picture, spec.galois);
  a.unit_graph = subdivide(*a.graph);
  a.lattice = cycle_basis(*a.unit_graph);
  a.group = component_group(*a.lattice);
  a.action = induced_action(*a.unit_graph, *a.lattice, *a.group,
                            lift_automorphism(*a.graph, *a.unit_graph, *a.frobenius));
  a.spanning_trees = spanning_tree_count(*a.unit_graph);
  a.tamagawa = fixed_point_count(*a.group, *a.action, opt.fixed_points);
  return a;
}

inline Integer tamagawa_number(const CoverSpec& spec, const PipelineOptions& opt = {}) {
  return *analyze(spec, opt).tamagawa;
}

inline std::string group_string(const std::vector<Integer>& invariant_factors) {
  if (invariant_factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + invariant_factors[i].str();
  }
  return s;
}

inline std::string verdict_string(const Verdict& v) {
  if (v.semistable) return "semistable";
  std::string s = "not semistable:";
  for (const auto& x : v.violations) s += " " + x.to_string();
  return s;
}

inline std::string reduction_string(const ReductionType& r) {
  std::string s = to_string(r.kind);
  if (r.note) s += " (" + *r.note + ")";
  return s;
}

inline std::string graph_summary(const MetricGraph& g) {
  return std::to_string(g.vertices().size()) + " vertices, " + std::to_string(g.chains().size()) +
         " chains, first Betti number " + std::to_string(g.first_betti_number());
}

/// Plain-text chain table.
inline std::string chain_table(const MetricGraph& g) {
  std::ostringstream os;
  os << "vertices:\n";
  for (const auto& v : g.vertices()) os << "  " << v.id << "\n";
  os << "chains:\n";
  for (const auto& c : g.chains())
    os << "  " << c.id << ": " << g.vertices()[c.from].id << " -> " << g.vertices()[c.to].id
       << "  length " << c.length << "\n";
  return os.str();
}

/// Disc tree, one disc per line, indented by depth in the tree.
inline std::string disc_tree_string(const ClusterPicture& pic, const DiscCollection& dc,
                                    const std::optional<Verdict>& verdict) {
  std::ostringstream os;
  auto visit = [&](auto&& self, std::size_t i, int indent) -> void {
    const Disc& d = dc.discs[i];
    os << std::string(2 * indent, ' ') << disc_name(pic, d) << "  v=" << d.v << (d.defining ? "  defining" : "");
    if (verdict && verdict->semistable) {
      FiberDescriptor f = classify_fiber(pic, dc, i, *verdict);
      os << "  kind " << static_cast<int>(f.kind) << ", components " << f.component_count << ", multiplicity "
         << f.multiplicity;
      if (f.self_chains) os << ", self chains " << f.self_chains;
    }
    os << "\n";
    for (std::size_t c : dc.children[i]) self(self, c, indent + 1);
  };
  visit(visit, 0, 0);
  return os.str();
}

struct VolumeReport {
  Integer tamagawa;
  std::optional<Rational> volume;
  Verdict verdict;
  ReductionType reduction;
  std::vector<Integer> invariant_factors;
  std::string graph_summary;
};

inline VolumeReport volume_report(const Analysis& a, const std::optional<NormalizationInputs>& n) {
  VolumeReport r{*a.tamagawa, std::nullopt, a.verdict, a.reduction, a.group->invariant_factors,
                 graph_summary(*a.graph)};
  if (n) r.volume = normalized_volume(r.tamagawa, *n);
  return r;
}

inline std::string render_text(const VolumeReport& r) {
  std::ostringstream os;
  os << "verdict: " << verdict_string(r.verdict) << "\n";
  os << "reduction: " << reduction_string(r.reduction) << "\n";
  os << "dual graph: " << r.graph_summary << "\n";
  os << "Phi = " << group_string(r.invariant_factors) << "\n";
  os << "tamagawa: " << r.tamagawa << "\n";
  // Without normalization inputs the volume is reported as the Tamagawa number.
  os << "normalized volume: " << (r.volume ? format_rational(*r.volume) : r.tamagawa.str())
     << (r.volume ? "" : " (Tamagawa number; no normalization inputs)") << "\n";
  return os.str();
}

inline nlohmann::json render_json(const VolumeReport& r) {
  nlohmann::json j;
  j["verdict"] = {{"semistable", r.verdict.semistable}, {"violations", nlohmann::json::array()}};
  for (const auto& v : r.verdict.violations) j["verdict"]["violations"].push_back(v.to_string());
  j["reduction"] = reduction_string(r.reduction);
  j["invariant_factors"] = nlohmann::json::array();
  for (const auto& d : r.invariant_factors) j["invariant_factors"].push_back(to_int64(d));
  j["tamagawa"] = to_int64(r.tamagawa);
  j["volume"] = r.volume ? nlohmann::json(format_rational(*r.volume)) : nlohmann::json(nullptr);
  return j;
}

}  // namespace dcover
