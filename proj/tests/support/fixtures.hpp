#pragma once

// The four reference covers, built in code. The JSON copies under
// data/fixtures describe the same covers.

#include <fstream>
#include <sstream>
#include <string>

#include "dcover/dcover.hpp"

namespace fixtures {

using dcover::CoverSpec;
using dcover::Rational;

inline CoverSpec base(std::size_t n) {
  CoverSpec s;
  for (std::size_t i = 0; i < n; ++i) s.branch.labels.push_back("r" + std::to_string(i + 1));
  s.branch.depth = dcover::DepthMatrix(n);
  s.branch.v_phi = 0;
  s.branch.field_degree_e = 1;
  s.branch.ram_index = 1;
  s.branch.residue_char = 3;
  s.branch.genus_Y = 1;
  s.galois.frobenius = dcover::identity_permutation(n);
  return s;
}

/// Roots 0, 1, 10, -8, 3, 27, -27, infinity at p = 3.
inline CoverSpec cp_a() {
  CoverSpec s = base(8);
  auto& d = s.branch.depth;
  // a = {r1, r5, r6, r7} at 1, b = {r1, r6, r7} at 3, c = {r2, r3, r4} at 2
  for (auto [i, j] : {std::pair{0, 4}, {4, 5}, {4, 6}}) d.set(i, j, 1);
  for (auto [i, j] : {std::pair{0, 5}, {0, 6}, {5, 6}}) d.set(i, j, 3);
  for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}}) d.set(i, j, 2);
  return s;
}

/// Four points, all pairwise depths 0.
inline CoverSpec cp_b(std::int64_t v_phi = 0) {
  CoverSpec s = base(4);
  s.branch.v_phi = v_phi;
  return s;
}

/// Six points with a single twin {r5, r6} at depth 2.
inline CoverSpec cp_c(int eps_twin) {
  CoverSpec s = base(6);
  s.branch.depth.set(4, 5, 2);
  s.galois.eps = {{"r1,r2,r3,r4,r5,r6", 1}, {"r5,r6", eps_twin}};
  return s;
}

/// Twins {r1, r2} and {r3, r4} at depth 1.
inline CoverSpec cp_d_identity() {
  CoverSpec s = base(4);
  s.branch.depth.set(0, 1, 1);
  s.branch.depth.set(2, 3, 1);
  return s;
}

/// Same picture with Frobenius (r1 r3)(r2 r4) and all signs +1.
inline CoverSpec cp_d_swap() {
  CoverSpec s = cp_d_identity();
  s.galois.frobenius = {2, 3, 0, 1};
  s.galois.eps = {{"r1,r2,r3,r4", 1}, {"r1,r2", 1}, {"r3,r4", 1}};
  return s;
}

inline std::string read(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CoverSpec load(const std::string& name) { return dcover::parse_cover_spec(read(name)); }

}  // namespace fixtures
