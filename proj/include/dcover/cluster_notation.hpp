#pragma once

// Nested-parenthesis notation for cluster pictures.
//
//   picture  := cluster
//   cluster  := "(" item { " " item } ")_" depth
//   item     := cluster | label
//   depth    := rational ("n" or "n/d")
//
// Inside a cluster, child clusters come first (ordered by canonical id), then
// the remaining labels in lexicographic order. The root is written with
// depth 0. Example: "((r5 r6)_2 r1 r2 r3 r4)_0".

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "dcover/cluster_picture.hpp"

namespace dcover {

inline std::string render_ascii(const ClusterPicture& pic) {
  const auto& labels = pic.source().labels;
  auto render = [&](auto&& self, std::size_t s) -> std::string {
    const Cluster& c = pic.cluster(s);
    std::vector<std::string> items;
    std::vector<bool> covered(labels.size(), false);
    for (std::size_t ch : c.children) {
      items.push_back(self(self, ch));
      for (std::size_t m : pic.cluster(ch).members) covered[m] = true;
    }
    std::vector<std::string> singles;
    for (std::size_t m : c.members)
      if (!covered[m]) singles.push_back(labels[m]);
    std::sort(singles.begin(), singles.end());
    items.insert(items.end(), singles.begin(), singles.end());
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ' ';
      out += items[i];
    }
    return out + ")_" + format_rational(c.depth);
  };
  return render(render, 0);
}

/// Labels plus a depth matrix realizing a parsed picture: the depth of a pair
/// is the depth of the smallest cluster containing both.
struct AsciiPicture {
  std::vector<Label> labels;
  DepthMatrix depths;
};

inline AsciiPicture parse_ascii(std::string_view text) {
  struct Node {
    std::vector<std::size_t> labels;  // all labels below
    Rational depth;
  };
  AsciiPicture out;
  std::size_t pos = 0;

  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) -> ParseError { return ParseError(msg, pos); };

  // Every pair of labels is recorded once, at the cluster where they split.
  struct Pending {
    std::size_t a, b;
    Rational d;
  };
  std::vector<Pending> pairs;

  auto parse_cluster = [&](auto&& self) -> Node {
    if (pos >= text.size() || text[pos] != '(') throw fail("expected '('");
    ++pos;
    std::vector<Node> children;
    std::vector<std::size_t> singles;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) throw fail("unbalanced parentheses: missing ')'");
      if (text[pos] == ')') break;
      if (text[pos] == '(') {
        children.push_back(self(self));
        continue;
      }
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != ' ' && text[pos] != '(' && text[pos] != ')' &&
             !std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
      std::string name(text.substr(start, pos - start));
      for (const auto& l : out.labels)
        if (l == name) throw ParseError("duplicate label '" + name + "'", start);
      out.labels.push_back(name);
      singles.push_back(out.labels.size() - 1);
    }
    ++pos;  // ')'
    if (pos >= text.size() || text[pos] != '_') throw fail("expected '_' and a depth");
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' ||
                                 text[pos] == '-' || text[pos] == '+'))
      ++pos;
    Node node;
    try {
      node.depth = parse_rational(text.substr(start, pos - start));
    } catch (const ParseError&) {
      throw ParseError("non-rational depth token '" + std::string(text.substr(start, pos - start)) + "'", start);
    }
    if (node.depth < 0) throw ParseError("negative depth", start);
    for (const Node& ch : children) {
      if (ch.depth <= node.depth) throw ParseError("child cluster is not deeper than its parent", start);
      node.labels.insert(node.labels.end(), ch.labels.begin(), ch.labels.end());
    }
    node.labels.insert(node.labels.end(), singles.begin(), singles.end());
    if (node.labels.size() < 2) throw ParseError("a cluster needs at least two labels", start);
    if (children.size() == 1 && singles.empty())
      throw ParseError("a cluster must split into more than one item", start);
    // Pairs split across different items of this cluster meet here.
    std::vector<std::vector<std::size_t>> groups;
    for (const Node& ch : children) groups.push_back(ch.labels);
    for (std::size_t s : singles) groups.push_back({s});
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (std::size_t h = g + 1; h < groups.size(); ++h)
        for (std::size_t a : groups[g])
          for (std::size_t b : groups[h]) pairs.push_back({a, b, node.depth});
    return node;
  };

  skip_ws();
  Node root = parse_cluster(parse_cluster);
  skip_ws();
  if (pos != text.size()) throw fail("unexpected trailing text (unbalanced parentheses?)");
  if (root.depth != 0) throw ParseError("root cluster must have depth 0", 0);

  out.depths = DepthMatrix(out.labels.size());
  for (const auto& p : pairs) out.depths.set(p.a, p.b, p.d);
  return out;
}

/// Branch datum realizing a parsed picture; field data are placeholders
/// (e = lcm of depth denominators, v_phi = 0, unramified, p = 3, genus 1).
inline BranchDatum branch_datum_from_ascii(const AsciiPicture& a) {
  BranchDatum b;
  b.labels = a.labels;
  b.depth = a.depths;
  Integer e = 1;
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    for (std::size_t j = i + 1; j < a.labels.size(); ++j) e = boost::multiprecision::lcm(e, den(a.depths(i, j)));
  b.field_degree_e = to_int64(e);
  b.ram_index = 1;
  return b;
}

}  // namespace dcover
