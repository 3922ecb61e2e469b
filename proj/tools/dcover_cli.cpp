// Command line front end for the double-cover pipeline.
//
// Exit codes: 0 success, 1 parse/validation/graph errors, 2 input that is not
// semi-stable (check, graph, tamagawa, volume).

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "dcover/dcover.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitNotSemistable = 2;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dcover::Error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dcover::CoverSpec load(const std::string& path) { return dcover::parse_cover_spec(read_input(path)); }

void print_warnings(const std::vector<std::string>& ws) {
  for (const auto& w : ws) std::cerr << "warning: " << w << "\n";
}

int cmd_check(const std::string& input, bool json) {
  const auto spec = load(input);
  const auto a = dcover::analyze_reduction(spec);
  print_warnings(a.picture.warnings());
  print_warnings(a.verdict.warnings);
  if (json) {
    nlohmann::json j;
    j["verdict"] = {{"semistable", a.verdict.semistable}, {"violations", nlohmann::json::array()}};
    for (const auto& v : a.verdict.violations) j["verdict"]["violations"].push_back(v.to_string());
    j["reduction"] = dcover::reduction_string(a.reduction);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << dcover::verdict_string(a.verdict) << "\n";
    std::cout << "reduction: " << dcover::reduction_string(a.reduction) << "\n";
  }
  return a.verdict.semistable ? 0 : kExitNotSemistable;
}

int cmd_picture(const std::string& input) {
  const auto spec = load(input);
  const auto pic = dcover::build_cluster_picture(spec.branch);
  print_warnings(pic.warnings());
  std::cout << dcover::render_ascii(pic) << "\n\n";
  std::cout << "clusters:\n";
  for (std::size_t s = 0; s < pic.size(); ++s) {
    const auto& c = pic.cluster(s);
    const auto f = dcover::classify_cluster(pic, s);
    std::cout << "  {" << c.id << "}  d=" << dcover::format_rational(c.depth)
              << "  v=" << dcover::format_rational(c.v);
    if (c.delta) std::cout << "  delta=" << dcover::format_rational(*c.delta);
    if (f.principal) std::cout << "  principal";
    if (f.twin) std::cout << "  twin";
    if (f.even) std::cout << "  even";
    if (f.uebereven) std::cout << "  uebereven";
    if (f.maximal) std::cout << "  maximal";
    std::cout << "\n";
  }

  std::optional<dcover::Verdict> verdict;
  if (spec.branch.genus_Y >= 1) verdict = dcover::check_semistable(pic, spec.galois, spec.branch);
  try {
    const auto dc = dcover::build_disc_collection(pic);
    std::cout << "\ndiscs:\n" << dcover::disc_tree_string(pic, dc, verdict);
  } catch (const dcover::ValidationError& e) {
    std::cout << "\ndiscs: unavailable (" << e.what() << ")\n";
  }
  return 0;
}

dcover::Analysis full_analysis(const dcover::CoverSpec& spec, const dcover::PipelineOptions& opt) {
  auto a = dcover::analyze(spec, opt);
  print_warnings(a.picture.warnings());
  print_warnings(a.verdict.warnings);
  return a;
}

int cmd_graph(const std::string& input, const std::string& dot_path) {
  const auto spec = load(input);
  const auto a = full_analysis(spec, {});
  std::cout << dcover::graph_summary(*a.graph) << "\n" << dcover::chain_table(*a.graph);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path, std::ios::binary);
    if (!out) throw dcover::Error("cannot write DOT file '" + dot_path + "'");
    out << dcover::export_dot(*a.graph);
  }
  return 0;
}

int cmd_tamagawa(const std::string& input, const dcover::PipelineOptions& opt, bool json) {
  const auto spec = load(input);
  const auto a = full_analysis(spec, opt);
  if (json) {
    std::cout << dcover::render_json(dcover::volume_report(a, std::nullopt)).dump(2) << "\n";
    return 0;
  }
  std::cout << "invariant factors:";
  if (a.group->invariant_factors.empty()) std::cout << " (none)";
  for (const auto& d : a.group->invariant_factors) std::cout << " " << d;
  std::cout << "\naction on Phi:\n";
  if (a.group->invariant_factors.empty())
    std::cout << "  (trivial group)\n";
  else
    std::cout << "  " << dcover::to_string(a.action->on_group) << "\n";
  std::cout << "Phi = " << dcover::group_string(a.group->invariant_factors) << ", fixed = " << *a.tamagawa
            << "\n";
  std::cout << "spanning trees: " << *a.spanning_trees << "\n";
  return 0;
}

struct VolumeArgs {
  std::string q, a0, conductor = "1";
  std::int64_t dim = 1;
};

int cmd_volume(const std::string& input, const VolumeArgs& va, const dcover::PipelineOptions& opt, bool json) {
  const auto spec = load(input);
  dcover::NormalizationInputs n;
  n.q = dcover::Integer(va.q);
  n.dim_d = va.dim;
  n.identity_component_points = dcover::Integer(va.a0);
  n.conductor_c = dcover::parse_rational(va.conductor);
  const auto a = full_analysis(spec, opt);
  const auto report = dcover::volume_report(a, n);
  if (json)
    std::cout << dcover::render_json(report).dump(2) << "\n";
  else
    std::cout << dcover::render_text(report);
  return 0;
}

struct PointsArgs {
  std::int64_t p = 3;
  std::int64_t v_phi = 0;
  std::int64_t genus_y = 1;
  std::int64_t e = 1;
  std::int64_t ram_index = 1;
  std::vector<std::string> points;
};

int cmd_points(const PointsArgs& pa) {
  std::vector<dcover::Point> pts;
  for (const auto& s : pa.points) {
    if (s == "inf" || s == "INF")
      pts.emplace_back(std::nullopt);
    else
      pts.emplace_back(dcover::parse_rational(s));
  }
  pts = dcover::hitchin_discriminant_points(pts, pa.p);
  const auto pd = dcover::depths_from_rational_points(pts, pa.p);
  print_warnings(pd.warnings);

  dcover::CoverSpec spec;
  auto& b = spec.branch;
  for (std::size_t i = 0; i < pts.size(); ++i) b.labels.push_back("r" + std::to_string(i + 1));
  b.depth = pd.depths;
  b.v_phi = pa.v_phi;
  b.field_degree_e = pa.e;
  b.ram_index = pa.ram_index;
  b.residue_char = pa.p;
  b.genus_Y = pa.genus_y;
  spec.galois.frobenius = dcover::identity_permutation(pts.size());
  std::cout << dcover::render_cover_spec(spec);
  return 0;
}

bool is_integer_string(const std::string& s) {
  const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-stable reduction, dual graphs and Tamagawa numbers of double covers of curves"};
  app.require_subcommand(1);

  std::string input, dot_path;
  bool json = false;
  bool algebraic = false;
  std::uint64_t max_enum = 10'000'000;

  auto* check = app.add_subcommand("check", "semi-stability verdict and reduction type");
  check->add_option("INPUT", input, "cover document (JSON, '-' for stdin)")->required();
  check->add_flag("--json", json, "emit JSON");

  auto* picture = app.add_subcommand("picture", "cluster picture and disc tree");
  picture->add_option("INPUT", input, "cover document (JSON, '-' for stdin)")->required();

  auto* graph = app.add_subcommand("graph", "dual graph chain table");
  graph->add_option("INPUT", input, "cover document (JSON, '-' for stdin)")->required();
  graph->add_option("--dot", dot_path, "write the dual graph as DOT to this path");

  auto* tamagawa = app.add_subcommand("tamagawa", "component group, Frobenius action and Tamagawa number");
  tamagawa->add_option("INPUT", input, "cover document (JSON, '-' for stdin)")->required();
  tamagawa->add_option("--max-enum", max_enum, "largest |Phi| enumerated directly")->capture_default_str();
  tamagawa->add_flag("--algebraic", algebraic, "count fixed points via Smith form above the bound");
  tamagawa->add_flag("--json", json, "emit JSON");

  VolumeArgs va;
  auto* volume = app.add_subcommand("volume", "normalized volume report");
  volume->add_option("INPUT", input, "cover document (JSON, '-' for stdin)")->required();
  volume->add_option("--q", va.q, "size of the residue field")->required();
  volume->add_option("--dim", va.dim, "dimension of the abelian variety")->required();
  volume->add_option("--a0", va.a0, "number of points of the identity component")->required();
  volume->add_option("--conductor", va.conductor, "conductor c as n or n/d")->capture_default_str();
  volume->add_option("--max-enum", max_enum, "largest |Phi| enumerated directly")->capture_default_str();
  volume->add_flag("--algebraic", algebraic, "count fixed points via Smith form above the bound");
  volume->add_flag("--json", json, "emit JSON");

  PointsArgs pa;
  auto* points = app.add_subcommand(
      "points", "cover document from rational branch points (zeros of the discriminant a1^2 - 4 a2)");
  points->add_option("--p", pa.p, "odd residue characteristic")->required();
  points->add_option("--v-phi", pa.v_phi, "v_phi")->capture_default_str();
  points->add_option("--genus-y", pa.genus_y, "genus of the base curve")->capture_default_str();
  points->add_option("--e", pa.e, "degree of the splitting field")->capture_default_str();
  points->add_option("--ram-index", pa.ram_index, "ramification index")->capture_default_str();
  points->add_option("POINTS", pa.points, "rationals n or n/d, or 'inf'")->required();

  CLI11_PARSE(app, argc, argv);

  dcover::PipelineOptions opt;
  opt.fixed_points.max_enumeration = max_enum;
  opt.fixed_points.allow_algebraic = algebraic;

  try {
    if (*check) return cmd_check(input, json);
    if (*picture) return cmd_picture(input);
    if (*graph) return cmd_graph(input, dot_path);
    if (*tamagawa) return cmd_tamagawa(input, opt, json);
    if (*volume) {
      if (!is_integer_string(va.q) || !is_integer_string(va.a0))
        throw dcover::ValidationError("--q and --a0 must be integers");
      return cmd_volume(input, va, opt, json);
    }
    if (*points) return cmd_points(pa);
  } catch (const dcover::NotSemistableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotSemistable;
  } catch (const dcover::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
