#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "qkdist/degree.hpp"
#include "qkdist/error.hpp"
#include "qkdist/rootsys.hpp"
#include "qkdist/weyl.hpp"

namespace qkdist {

/// Class of the T-invariant curve X(alpha) in H_2(G/P): the coefficients of
/// alpha^vee at the simple coroots outside Delta_P.
inline Degree curve_class(const RootSystem& sys, const Root& alpha, const ParabolicSubset& parabolic) {
  if (!sys.positive_index(alpha)) throw Error("curve_class: not a positive root");
  if (in_parabolic_span(alpha, parabolic)) throw Error("curve_class: root lies in the parabolic span");
  Coroot c = sys.coroot(alpha);
  auto keys = parabolic.complement(sys.rank());
  std::vector<std::int64_t> values;
  for (std::size_t b : keys) values.push_back(c.coeffs[b]);
  return Degree(std::move(keys), std::move(values));
}

struct CurveEdge {
  std::size_t a;  // a < b
  std::size_t b;
  Degree degree;

  bool operator<(const CurveEdge& o) const { return std::tie(a, b, degree) < std::tie(o.a, o.b, o.degree); }
  bool operator==(const CurveEdge& o) const { return a == o.a && b == o.b && degree == o.degree; }
};

/// T-fixed points of G/P (as W^P) joined by the irreducible T-invariant curves.
struct CurveGraph {
  std::vector<WeylElement> vertices;
  std::vector<CurveEdge> edges;
  /// (neighbour, edge index) per vertex.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency;
};

namespace detail {

inline std::unordered_map<WeylElement, std::size_t, WeylElementHash> index_map(const std::vector<WeylElement>& xs) {
  std::unordered_map<WeylElement, std::size_t, WeylElementHash> m;
  m.reserve(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) m.emplace(xs[k], k);
  return m;
}

}  // namespace detail

/// Curves w.X(alpha) with alpha in Phi+ \ Phi_P. Every w in a coset c W_P gives
/// the same curves as c itself (W_P permutes Phi+ \ Phi_P and fixes curve
/// classes), so iterating over minimal representatives is exhaustive.
inline CurveGraph build_curve_graph(const WeylGroup& group, const ParabolicSubset& parabolic) {
  const auto& sys = group.system();
  CurveGraph g;
  g.vertices = group.enumerate_WP(parabolic);
  auto index = detail::index_map(g.vertices);

  std::vector<std::pair<WeylElement, Degree>> reflections;
  for (const Root& a : sys->positive_roots())
    if (!in_parabolic_span(a, parabolic)) reflections.emplace_back(reflection(sys, a), curve_class(*sys, a, parabolic));

  std::set<CurveEdge> edges;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (const auto& [s, degree] : reflections) {
      std::size_t j = index.at(min_rep(g.vertices[i] * s, parabolic));
      if (i == j) continue;
      edges.insert(CurveEdge{std::min(i, j), std::max(i, j), degree});
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  g.adjacency.resize(g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    g.adjacency[g.edges[e].a].emplace_back(g.edges[e].b, e);
    g.adjacency[g.edges[e].b].emplace_back(g.edges[e].a, e);
  }
  return g;
}

/// dist_beta tables for every simple root beta, each computed on the curve
/// graph of the maximal flag variety G/P_beta. Immutable once built.
class RankOneDistances {
 public:
  explicit RankOneDistances(std::shared_ptr<const WeylGroup> group) : group_(std::move(group)) {
    const std::size_t n = group_->system()->rank();
    for (std::size_t beta = 0; beta < n; ++beta) tables_.push_back(build_table(beta));
  }

  const std::shared_ptr<const WeylGroup>& group() const { return group_; }

  /// Smallest degree of a curve in G/P_beta from (Z_beta)^u to (Z_beta)_v; u, v arbitrary in W.
  std::int64_t dist_beta(const WeylElement& u, const WeylElement& v, std::size_t beta) const {
    if (beta >= tables_.size()) throw Error("dist_beta: simple root index out of range");
    const Table& t = tables_[beta];
    std::size_t i = t.index.at(min_rep(u, t.parabolic));
    std::size_t j = t.index.at(min_rep(v, t.parabolic));
    return t.dist[i * t.labels.size() + j];
  }

  /// Graph of G/P_beta used for the table; exposed for inspection.
  const std::vector<WeylElement>& labels(std::size_t beta) const { return tables_.at(beta).labels; }

 private:
  struct Table {
    ParabolicSubset parabolic;
    std::vector<WeylElement> labels;
    std::unordered_map<WeylElement, std::size_t, WeylElementHash> index;
    std::vector<std::int64_t> dist;  // row-major |labels|^2
  };

  Table build_table(std::size_t beta) const {
    const std::size_t n = group_->system()->rank();
    Table t;
    t.parabolic = ParabolicSubset::maximal(n, beta);
    CurveGraph g = build_curve_graph(*group_, t.parabolic);
    t.labels = g.vertices;
    t.index = detail::index_map(t.labels);
    const std::size_t m = t.labels.size();

    std::vector<char> leq(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) leq[a * m + b] = bruhat_leq(t.labels[a], t.labels[b]);

    constexpr auto inf = std::numeric_limits<std::int64_t>::max();
    t.dist.assign(m * m, inf);
    for (std::size_t u = 0; u < m; ++u) {
      // Multi-source Dijkstra: every fixed point of (Z_beta)^u starts at 0.
      std::vector<std::int64_t> d(m, inf);
      using Item = std::pair<std::int64_t, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      for (std::size_t w = 0; w < m; ++w)
        if (leq[u * m + w]) {
          d[w] = 0;
          pq.emplace(0, w);
        }
      while (!pq.empty()) {
        auto [dw, w] = pq.top();
        pq.pop();
        if (dw != d[w]) continue;
        for (auto [x, e] : g.adjacency[w]) {
          std::int64_t nd = dw + g.edges[e].degree[0];
          if (nd < d[x]) {
            d[x] = nd;
            pq.emplace(nd, x);
          }
        }
      }
      // Virtual target: any fixed point of (Z_beta)_v.
      for (std::size_t v = 0; v < m; ++v) {
        std::int64_t best = inf;
        for (std::size_t w = 0; w < m; ++w)
          if (leq[w * m + v]) best = std::min(best, d[w]);
        if (best == inf) throw Error("curve graph of G/P_beta is disconnected");
        t.dist[u * m + v] = best;
      }
    }
    return t;
  }

  std::shared_ptr<const WeylGroup> group_;
  std::vector<Table> tables_;
};

/// A flag variety G/P, described through W^P and its T-invariant curves.
class FlagVariety {
 public:
  FlagVariety(std::shared_ptr<const WeylGroup> group, ParabolicSubset parabolic,
              std::shared_ptr<const RankOneDistances> rank_one = nullptr)
      : group_(std::move(group)), parabolic_(std::move(parabolic)), rank_one_(std::move(rank_one)) {
    parabolic_.validate(rank());
    if (!rank_one_) rank_one_ = std::make_shared<const RankOneDistances>(group_);
    if (rank_one_->group() != group_) throw Error("rank-one distances built for a different Weyl group");
    labels_ = group_->enumerate_WP(parabolic_);
    index_ = detail::index_map(labels_);
    keys_ = parabolic_.complement(rank());
    graph_ = std::make_shared<LazyGraph>();
  }

  /// Convenience: build everything from a Cartan type.
  static FlagVariety create(CartanType type, ParabolicSubset parabolic) {
    auto group = std::make_shared<const WeylGroup>(build_root_system(type));
    return FlagVariety(std::move(group), std::move(parabolic));
  }

  const std::shared_ptr<const WeylGroup>& group() const { return group_; }
  const std::shared_ptr<const RootSystem>& system() const { return group_->system(); }
  const std::shared_ptr<const RankOneDistances>& rank_one() const { return rank_one_; }
  std::size_t rank() const { return group_->system()->rank(); }
  const ParabolicSubset& parabolic() const { return parabolic_; }

  /// W^P in canonical order.
  const std::vector<WeylElement>& labels() const { return labels_; }
  const std::vector<std::size_t>& degree_keys() const { return keys_; }
  Degree zero_degree() const { return Degree::zero(keys_); }

  std::optional<std::size_t> index_of(const WeylElement& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require_label(const WeylElement& w, const char* who = "flag variety") const {
    auto i = index_of(w);
    if (!i) throw Error(std::string(who) + ": " + w.to_string() + " is not a minimal coset representative");
    return *i;
  }

  WeylElement parse_label(std::string_view word) const {
    return labels_[require_label(WeylElement::parse(system(), word), "label")];
  }

  const CurveGraph& curve_graph() const {
    std::call_once(graph_->once, [&] { graph_->graph = build_curve_graph(*group_, parabolic_); });
    return graph_->graph;
  }

  /// Eq. for the distance: component beta is dist_beta(u, v).
  Degree dist(const WeylElement& u, const WeylElement& v) const {
    require_label(u, "dist");
    require_label(v, "dist");
    Degree d = zero_degree();
    for (std::size_t k = 0; k < keys_.size(); ++k) d[k] = rank_one_->dist_beta(u, v, keys_[k]);
    return d;
  }

  bool connected_by_degree(const WeylElement& u, const WeylElement& v, const Degree& d) const {
    if (!d.is_effective()) throw Error("connected_by_degree: degree is not effective");
    return dist(u, v).leq(d);
  }

  /// Vertices of the opposite Schubert variety X^u: {w in W^P : w >= u}.
  std::vector<WeylElement> fixed_points_opposite(const WeylElement& u) const {
    require_label(u, "fixed_points_opposite");
    std::vector<WeylElement> out;
    for (const auto& w : labels_)
      if (bruhat_leq(u, w)) out.push_back(w);
    return out;
  }

  /// Vertices of the Schubert variety X_v: {w in W^P : w <= v}.
  std::vector<WeylElement> fixed_points_schubert(const WeylElement& v) const {
    require_label(v, "fixed_points_schubert");
    std::vector<WeylElement> out;
    for (const auto& w : labels_)
      if (bruhat_leq(w, v)) out.push_back(w);
    return out;
  }

 private:
  struct LazyGraph {
    std::once_flag once;
    CurveGraph graph;
  };

  std::shared_ptr<const WeylGroup> group_;
  ParabolicSubset parabolic_;
  std::shared_ptr<const RankOneDistances> rank_one_;
  std::vector<WeylElement> labels_;
  std::unordered_map<WeylElement, std::size_t, WeylElementHash> index_;
  std::vector<std::size_t> keys_;
  std::shared_ptr<LazyGraph> graph_;
};

inline std::int64_t dist_beta(const FlagVariety& x, const WeylElement& u, const WeylElement& v, std::size_t beta) {
  return x.rank_one()->dist_beta(u, v, beta);
}

/// Pareto frontier of chain degrees from X^u to X_v, by multi-objective
/// label-setting on the curve graph of X. Independent of dist(): it never
/// looks at the rank-one projections.
inline std::vector<Degree> pareto_min_degrees(const FlagVariety& x, const WeylElement& u, const WeylElement& v) {
  const CurveGraph& g = x.curve_graph();
  const std::size_t m = g.vertices.size();
  std::size_t ui = x.require_label(u, "pareto_min_degrees");
  std::size_t vi = x.require_label(v, "pareto_min_degrees");

  struct Label {
    Degree degree;
    std::size_t vertex;
    bool alive;
  };
  std::vector<Label> labels;
  std::vector<std::vector<std::size_t>> at(m);

  auto key_greater = [&](std::size_t a, std::size_t b) {
    const Degree& da = labels[a].degree;
    const Degree& db = labels[b].degree;
    if (da.total() != db.total()) return da.total() > db.total();
    return db < da;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(key_greater)> pq(key_greater);

  // Rejects labels dominated by (or equal to) a live label at the vertex and
  // retires live labels the new one dominates. Since every edge degree is
  // nonzero, a label that revisits a vertex is dominated by its earlier
  // self, so only vertex-simple chains survive.
  auto offer = [&](std::size_t vertex, Degree d) {
    for (std::size_t id : at[vertex])
      if (labels[id].alive && labels[id].degree.leq(d)) return;
    for (std::size_t id : at[vertex])
      if (labels[id].alive && d.leq(labels[id].degree)) labels[id].alive = false;
    labels.push_back(Label{std::move(d), vertex, true});
    at[vertex].push_back(labels.size() - 1);
    pq.push(labels.size() - 1);
  };

  for (std::size_t w = 0; w < m; ++w)
    if (bruhat_leq(g.vertices[ui], g.vertices[w])) offer(w, x.zero_degree());

  while (!pq.empty()) {
    std::size_t id = pq.top();
    pq.pop();
    if (!labels[id].alive) continue;
    const std::size_t w = labels[id].vertex;
    for (auto [next, e] : g.adjacency[w]) offer(next, labels[id].degree + g.edges[e].degree);
  }

  std::vector<Degree> candidates;
  for (std::size_t w = 0; w < m; ++w) {
    if (!bruhat_leq(g.vertices[w], g.vertices[vi])) continue;
    for (std::size_t id : at[w])
      if (labels[id].alive) candidates.push_back(labels[id].degree);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Degree> frontier;
  for (const auto& c : candidates) {
    bool dominated = std::any_of(candidates.begin(), candidates.end(),
                                 [&](const Degree& o) { return !(o == c) && o.leq(c); });
    if (!dominated) frontier.push_back(c);
  }
  return frontier;
}

}  // namespace qkdist
