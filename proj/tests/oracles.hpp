#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/ideals.hpp"
#include "bratteli/simplex.hpp"
#include "bratteli/stationary.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace bratteli;

inline MultiplicityMatrix random_step(std::mt19937& rng, std::size_t rows, std::size_t cols,
                                      int max_entry = 2) {
  std::uniform_int_distribution<int> entry(0, max_entry);
  for (;;) {
    MultiplicityMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = entry(rng);
    bool ok = true;
    for (std::size_t i = 0; i < rows && ok; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < cols; ++j) any |= a(i, j) != 0;
      ok = any;
    }
    for (std::size_t j = 0; j < cols && ok; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < rows; ++i) any |= a(i, j) != 0;
      ok = any;
    }
    if (ok) return a;
  }
}

/// Valid unital prefix with `depth` levels and widths in [1, max_width].
inline BratteliPrefix random_prefix(std::mt19937& rng, std::size_t depth, std::size_t max_width) {
  std::uniform_int_distribution<std::size_t> width(1, max_width);
  std::uniform_int_distribution<int> size(1, 3);
  BratteliPrefix p;
  std::vector<Integer> u0;
  for (std::size_t i = 0, w = width(rng); i < w; ++i) u0.emplace_back(size(rng));
  p.levels.emplace_back(u0);
  for (std::size_t n = 1; n < depth; ++n) {
    auto a = random_step(rng, width(rng), p.levels.back().size());
    p.levels.emplace_back(a.apply(p.levels.back().entries()));
    p.matrices.push_back(std::move(a));
  }
  return p;
}

/// Every family of subsets satisfying the directed and hereditary rules, by exhaustion.
inline std::set<IdealProfile> brute_force_ideals(const BratteliPrefix& p) {
  std::vector<std::size_t> widths;
  std::size_t bits = 0;
  for (std::size_t n = 0; n < p.depth(); ++n) {
    widths.push_back(p.width(n));
    bits += p.width(n);
  }
  std::set<IdealProfile> out;
  for (unsigned long mask = 0; mask < (1ul << bits); ++mask) {
    std::vector<std::vector<bool>> in(p.depth());
    std::size_t bit = 0;
    for (std::size_t n = 0; n < p.depth(); ++n)
      for (std::size_t v = 0; v < widths[n]; ++v) in[n].push_back((mask >> bit++) & 1);
    bool ok = true;
    for (std::size_t n = 0; n + 1 < p.depth() && ok; ++n) {
      const auto& a = p.matrices[n];
      for (std::size_t v = 0; v < widths[n] && ok; ++v) {
        bool all_succ_in = true;
        for (std::size_t w = 0; w < widths[n + 1]; ++w) {
          if (a(w, v) == 0) continue;
          if (in[n][v] && !in[n + 1][w]) ok = false;
          all_succ_in = all_succ_in && in[n + 1][w];
        }
        if (all_succ_in && !in[n][v]) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<std::vector<std::size_t>> sets(p.depth());
    for (std::size_t n = 0; n < p.depth(); ++n)
      for (std::size_t v = 0; v < widths[n]; ++v)
        if (in[n][v]) sets[n].push_back(v);
    out.insert(IdealProfile::from_sets(std::move(sets)));
  }
  return out;
}

struct DotGraph {
  std::map<std::string, std::string> node_label;
  std::multiset<std::tuple<std::string, std::string, std::string>> edges;
};

inline DotGraph parse_dot(const std::string& text) {
  DotGraph g;
  static const std::regex node(R"re("(\d+:\d+)"\s*\[label="([^"]*)"\])re");
  static const std::regex edge(R"re("(\d+:\d+)"\s*->\s*"(\d+:\d+)"\s*\[label="([^"]*)"\])re");
  for (std::sregex_iterator it(text.begin(), text.end(), edge), end; it != end; ++it) {
    g.edges.emplace((*it)[1], (*it)[2], (*it)[3]);
  }
  for (std::sregex_iterator it(text.begin(), text.end(), node), end; it != end; ++it) {
    g.node_label[(*it)[1]] = (*it)[2];
  }
  return g;
}

/// Isomorphism of leveled labelled graphs by trying every per-level relabelling.
inline bool dot_isomorphic(const DotGraph& a, const DotGraph& b) {
  if (a.node_label.size() != b.node_label.size() || a.edges.size() != b.edges.size()) return false;
  auto levels = [](const DotGraph& g) {
    std::map<std::size_t, std::size_t> w;
    for (const auto& [name, _] : g.node_label) ++w[std::stoul(name.substr(0, name.find(':')))];
    return w;
  };
  const auto wa = levels(a);
  if (wa != levels(b)) return false;
  std::vector<std::size_t> lv;
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& [l, w] : wa) {
    lv.push_back(l);
    std::vector<std::size_t> id(w);
    std::iota(id.begin(), id.end(), 0);
    perms.push_back(id);
  }
  auto key = [](std::size_t l, std::size_t v) { return std::to_string(l) + ":" + std::to_string(v); };
  for (;;) {
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < lv.size(); ++i)
      for (std::size_t v = 0; v < perms[i].size(); ++v) rename[key(lv[i], v)] = key(lv[i], perms[i][v]);
    bool same = true;
    for (const auto& [n, label] : a.node_label) same = same && b.node_label.at(rename[n]) == label;
    if (same) {
      std::multiset<std::tuple<std::string, std::string, std::string>> mapped;
      for (const auto& [s, t, l] : a.edges) mapped.emplace(rename[s], rename[t], l);
      if (mapped == b.edges) return true;
    }
    std::size_t i = 0;
    while (i < perms.size() && !std::next_permutation(perms[i].begin(), perms[i].end())) ++i;
    if (i == perms.size()) return false;
  }
}

inline SimplexPoint random_point(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<int> w(0, 9);
  std::vector<Rational> weights(dim);
  Rational total = 0;
  for (auto& x : weights) {
    x = w(rng);
    total += x;
  }
  if (total == 0) weights[0] = 1;
  return SimplexPoint::normalized(weights);
}

inline StochasticAffineMap random_stochastic(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::vector<SimplexPoint> columns;
  for (std::size_t j = 0; j < cols; ++j) columns.push_back(random_point(rng, rows));
  return StochasticAffineMap::from_columns(columns);
}

inline StationarySpec random_stationary(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2), len(1, 4), num(0, 5), den(2, 7);
  std::vector<Rational> head;
  for (int i = 0, n = len(rng); i < n; ++i) head.emplace_back(num(rng) + 1, den(rng));
  for (auto& h : head) h.canonicalize();
  switch (kind(rng)) {
    case 0: return StationarySpec::atoms(head);
    case 1: {
      Rational r(num(rng) + 1, 8);
      r.canonicalize();
      return StationarySpec::geometric(head, r);
    }
    default: return StationarySpec::equal_to_k(head);
  }
}

}  // namespace oracle
