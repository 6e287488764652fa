#pragma once

// Brute-force reference computations used only by the tests. None of these
// call the library routines they are compared against.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "qkdist/qkdist.hpp"

namespace qkdist::oracle {

/// Elements of W reachable as subwords of the canonical reduced word of v.
inline std::set<std::vector<int>> subword_products(const WeylElement& v) {
  Word word = v.reduced_word();
  std::set<std::vector<int>> out;
  const std::size_t n = word.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    WeylElement x = WeylElement::identity(v.system());
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) x = x.times_simple(word[k]);
    out.insert(x.raw_images());
  }
  return out;
}

/// Subword criterion: u <= v iff some subword of a reduced word of v is a word for u.
inline bool subword_leq(const WeylElement& u, const WeylElement& v) {
  return subword_products(v).count(u.raw_images()) != 0;
}

/// Enumerates W by closing {e} under right multiplication by every s_i,
/// descents included.
inline std::vector<WeylElement> closure(const std::shared_ptr<const RootSystem>& sys) {
  std::set<std::vector<int>> seen;
  std::vector<WeylElement> out{WeylElement::identity(sys)};
  seen.insert(out.front().raw_images());
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t i = 0; i < sys->rank(); ++i) {
      WeylElement x = out[k].times_simple(i);
      if (seen.insert(x.raw_images()).second) out.push_back(x);
    }
  return out;
}

/// Coset representative found by minimizing length over the whole coset w W_P.
inline WeylElement shortest_in_coset(const WeylElement& w, const ParabolicSubset& p,
                                     const std::vector<WeylElement>& all) {
  std::vector<WeylElement> sub;
  for (const auto& x : all) {
    Word word = x.reduced_word();
    if (std::all_of(word.begin(), word.end(), [&](std::size_t i) { return p.contains(i); })) sub.push_back(x);
  }
  WeylElement best = w;
  for (const auto& x : sub) {
    WeylElement y = w * x;
    if (y.length() < best.length()) best = y;
  }
  return best;
}

struct Edge {
  std::size_t a, b;
  Degree degree;
};

/// Curve graph built from every w in W (not just coset representatives) and
/// every alpha in Phi+ \ Phi_P, with curve class read off directly from the coroot.
struct BruteGraph {
  std::vector<WeylElement> vertices;
  std::vector<Edge> edges;
};

inline BruteGraph brute_curve_graph(const std::shared_ptr<const RootSystem>& sys, const ParabolicSubset& p) {
  auto all = closure(sys);
  BruteGraph g;
  for (const auto& w : all) {
    WeylElement c = shortest_in_coset(w, p, all);
    if (c == w) g.vertices.push_back(w);
  }
  auto index = [&](const WeylElement& w) {
    WeylElement c = shortest_in_coset(w, p, all);
    return static_cast<std::size_t>(std::find(g.vertices.begin(), g.vertices.end(), c) - g.vertices.begin());
  };
  std::set<std::tuple<std::size_t, std::size_t, std::vector<std::int64_t>>> seen;
  auto keys = p.complement(sys->rank());
  for (const auto& w : all) {
    for (const Root& a : sys->positive_roots()) {
      if (in_parabolic_span(a, p)) continue;
      Coroot c = sys->coroot(a);
      std::vector<std::int64_t> vals;
      for (auto b : keys) vals.push_back(c.coeffs[b]);
      std::size_t i = index(w);
      std::size_t j = index(w * reflection(sys, a));
      if (i == j) continue;
      if (seen.insert({std::min(i, j), std::max(i, j), vals}).second)
        g.edges.push_back(Edge{std::min(i, j), std::max(i, j), Degree(keys, vals)});
    }
  }
  return g;
}

/// Minimal degrees over every vertex-simple chain from {w >= u} to {w <= v},
/// by exhaustive depth-first enumeration.
inline std::vector<Degree> exhaustive_min_degrees(const BruteGraph& g, const WeylElement& u, const WeylElement& v,
                                                  const std::vector<std::size_t>& keys) {
  const std::size_t m = g.vertices.size();
  std::vector<char> target(m), used(m);
  for (std::size_t w = 0; w < m; ++w) target[w] = subword_leq(g.vertices[w], v);
  std::set<Degree> degrees;
  std::function<void(std::size_t, Degree)> dfs = [&](std::size_t w, Degree d) {
    if (target[w]) degrees.insert(d);
    used[w] = 1;
    for (const auto& e : g.edges) {
      std::size_t nxt = e.a == w ? e.b : e.b == w ? e.a : m;
      if (nxt < m && !used[nxt]) dfs(nxt, d + e.degree);
    }
    used[w] = 0;
  };
  for (std::size_t w = 0; w < m; ++w)
    if (subword_leq(u, g.vertices[w])) dfs(w, Degree::zero(keys));
  std::vector<Degree> out;
  for (const auto& d : degrees)
    if (std::none_of(degrees.begin(), degrees.end(), [&](const Degree& o) { return !(o == d) && o.leq(d); }))
      out.push_back(d);
  return out;
}

}  // namespace qkdist::oracle
