#pragma once

// The functional graph G_q of theta over P^1(GF(2^t)): cycle/tree decomposition,
// levels, A/B trace classes and the structural checks on trees and leaves.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "theta/gf2.hpp"
#include "theta/parallel.hpp"
#include "theta/proj_point.hpp"
#include "theta/report.hpp"

namespace theta {

enum class TraceClass : std::uint8_t { A, B };

inline const char* to_string(TraceClass c) { return c == TraceClass::A ? "A" : "B"; }

/// A iff p in {0, inf} or Tr(x) = Tr(x^-1).
inline TraceClass classify_AB(const FieldSpec& f, const ProjPoint& p) {
  if (!p.is_unit()) return TraceClass::A;
  return f.trace(p.value()) == f.trace(f.inv(p.value())) ? TraceClass::A : TraceClass::B;
}

/// In-tree hanging off one cycle vertex. levels[0] = {root}; levels[k] holds the
/// non-periodic vertices at distance k from the root, sorted by encoding.
struct Tree {
  Vertex root = 0;
  std::vector<std::vector<Vertex>> levels;
  unsigned depth() const { return static_cast<unsigned>(levels.size()) - 1; }
};

struct Component {
  std::vector<Vertex> cycle;  // rotated to start at the least encoding
  std::vector<Tree> trees;    // one per cycle vertex, in cycle order
  unsigned depth = 0;
  TraceClass trace_class = TraceClass::A;
};

class ThetaGraph {
 public:
  ThetaGraph(Field field, unsigned workers = 1) : field_(std::move(field)) { build(workers); }

  const Field& field() const { return field_; }
  const FieldSpec& spec() const { return *field_; }
  std::size_t vertex_count() const { return succ_.size(); }
  Vertex infinity() const { return static_cast<Vertex>(succ_.size() - 1); }

  Vertex succ(Vertex v) const { return succ_[v]; }
  unsigned level(Vertex v) const { return level_[v]; }
  unsigned in_degree(Vertex v) const { return pred_offset_[v + 1] - pred_offset_[v]; }
  /// Predecessors of v, ascending.
  std::pair<const Vertex*, const Vertex*> preds(Vertex v) const {
    return {pred_.data() + pred_offset_[v], pred_.data() + pred_offset_[v + 1]};
  }
  bool is_periodic(Vertex v) const { return level_[v] == 0; }
  std::size_t component_of(Vertex v) const { return component_[v]; }
  const std::vector<Component>& components() const { return components_; }

  ProjPoint point(Vertex v) const { return ProjPoint::from_vertex(v, field_->degree()); }
  Vertex vertex(const ProjPoint& p) const {
    if (p.is_unit() && !field_->contains(p.value())) throw field_mismatch();
    return p.vertex(field_->degree());
  }
  TraceClass trace_class(Vertex v) const { return classify_AB(*field_, point(v)); }

 private:
  void build(unsigned workers) {
    const FieldSpec& f = *field_;
    const std::size_t n = f.size() + 1;
    succ_.resize(n);
    parallel_for(workers, n, [&](std::size_t b, std::size_t e) {
      for (std::size_t v = b; v < e; ++v) succ_[v] = theta_vertex(f, static_cast<Vertex>(v));
    });

    // predecessor lists (CSR, ascending within each list)
    pred_offset_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) ++pred_offset_[succ_[v] + 1];
    std::partial_sum(pred_offset_.begin(), pred_offset_.end(), pred_offset_.begin());
    pred_.resize(n);
    {
      std::vector<std::uint32_t> fill(pred_offset_.begin(), pred_offset_.end() - 1);
      for (std::size_t v = 0; v < n; ++v) pred_[fill[succ_[v]]++] = static_cast<Vertex>(v);
    }

    // three-colour walk: 0 = unseen, 1 = on current path, 2 = done
    std::vector<std::uint8_t> colour(n, 0);
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Vertex> path;
    constexpr std::uint32_t kUnset = UINT32_MAX;
    level_.assign(n, kUnset);
    for (std::size_t start = 0; start < n; ++start) {
      if (colour[start]) continue;
      path.clear();
      Vertex v = static_cast<Vertex>(start);
      while (colour[v] == 0) {
        colour[v] = 1;
        path.push_back(v);
        v = succ_[v];
      }
      if (colour[v] == 1) {
        std::vector<Vertex> cyc;
        Vertex c = v;
        do {
          cyc.push_back(c);
          level_[c] = 0;
          c = succ_[c];
        } while (c != v);
        cycles.push_back(std::move(cyc));
      }
      for (Vertex p : path) colour[p] = 2;
    }

    // canonical cycle rotation and component order
    for (auto& cyc : cycles) std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

    // reverse BFS from cycle vertices; root_of records the tree each vertex hangs from
    std::vector<Vertex> root_of(n, 0);
    std::vector<Vertex> frontier, next;
    component_.assign(n, 0);
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
      for (Vertex c : cycles[ci]) {
        root_of[c] = c;
        component_[c] = static_cast<std::uint32_t>(ci);
        frontier.push_back(c);
      }
    }
    for (std::uint32_t lvl = 1; !frontier.empty(); ++lvl) {
      next.clear();
      for (Vertex u : frontier) {
        auto [b, e] = preds(u);
        for (auto it = b; it != e; ++it) {
          if (level_[*it] != kUnset) continue;
          level_[*it] = lvl;
          root_of[*it] = root_of[u];
          component_[*it] = component_[u];
          next.push_back(*it);
        }
      }
      std::swap(frontier, next);
    }

    components_.resize(cycles.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tree_slot(n);  // root -> (component, index)
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
      auto& comp = components_[ci];
      comp.cycle = std::move(cycles[ci]);
      comp.trees.resize(comp.cycle.size());
      for (std::size_t k = 0; k < comp.cycle.size(); ++k) {
        comp.trees[k].root = comp.cycle[k];
        comp.trees[k].levels = {{comp.cycle[k]}};
        tree_slot[comp.cycle[k]] = {static_cast<std::uint32_t>(ci), static_cast<std::uint32_t>(k)};
      }
      comp.trace_class = classify_AB(f, point(comp.cycle.front()));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (level_[v] == 0) continue;
      auto [ci, k] = tree_slot[root_of[v]];
      auto& levels = components_[ci].trees[k].levels;
      if (levels.size() <= level_[v]) levels.resize(level_[v] + 1);
      levels[level_[v]].push_back(static_cast<Vertex>(v));
    }
    for (auto& comp : components_) {
      comp.depth = 0;
      for (const auto& tr : comp.trees) comp.depth = std::max(comp.depth, tr.depth());
    }
  }

  Field field_;
  std::vector<Vertex> succ_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> pred_offset_;
  std::vector<Vertex> pred_;
  std::vector<std::uint32_t> component_;
  std::vector<Component> components_;
};

inline ThetaGraph build_graph(Field field, unsigned workers = 1) { return ThetaGraph(std::move(field), workers); }

inline bool is_periodic(const ThetaGraph& g, const ProjPoint& p) { return g.is_periodic(g.vertex(p)); }

/// Vertices of in-degree 0, ascending.
inline std::vector<Vertex> leaves(const ThetaGraph& g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.in_degree(v) == 0) out.push_back(v);
  return out;
}

struct OmegaSets {
  std::vector<Word> omega;      // Tr(x^-1) = 0
  std::vector<Word> omega_bar;  // Tr(x^-1) = 1
};

inline OmegaSets omega_sets(const FieldSpec& f) {
  OmegaSets out;
  for (std::uint64_t x = 1; x < f.size(); ++x) {
    const Word w = static_cast<Word>(x);
    (f.trace(f.inv(w)) ? out.omega_bar : out.omega).push_back(w);
  }
  return out;
}

inline std::string vertex_name(const ThetaGraph& g, Vertex v) { return g.point(v).to_string(); }

/// Tree depth and level-size laws, trace laws on leaves and the leaf degree law.
inline CheckReport verify_structure(const ThetaGraph& g) {
  const FieldSpec& f = g.spec();
  const unsigned r = f.two_adic();
  const unsigned d = r + 2;
  CheckReport report;
  auto name = [&](Vertex v) { return vertex_name(g, v); };

  CheckTally invariance("class-invariance");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const Vertex w = g.succ(v);
    invariance.expect(g.trace_class(v) == g.trace_class(w),
                      [&] { return name(v) + " -> " + name(w) + " changes trace class"; });
  }
  for (const auto& comp : g.components()) {
    for (const auto& tr : comp.trees)
      for (const auto& lvl : tr.levels)
        for (Vertex v : lvl)
          invariance.expect(g.trace_class(v) == comp.trace_class,
                            [&] { return name(v) + " differs from its component's class"; });
  }
  report << invariance;

  auto children = [&](Vertex v) {
    unsigned c = 0;
    auto [b, e] = g.preds(v);
    for (auto it = b; it != e; ++it)
      if (!g.is_periodic(*it)) ++c;
    return c;
  };

  CheckTally a_trees("a-tree-shape");
  CheckTally b_trees("b-tree-depth");
  CheckTally inf_tree("infinity-tree-shape");
  for (const auto& comp : g.components()) {
    for (const auto& tr : comp.trees) {
      const std::string root = name(tr.root);
      if (tr.root == g.infinity()) {
        bool ok = tr.depth() == d;
        for (unsigned k = 1; ok && k <= d; ++k) {
          const std::size_t want = k == 1 ? 1 : (std::size_t{1} << (k - 2));
          ok = tr.levels[k].size() == want;
        }
        ok = ok && children(tr.root) == 1;
        for (unsigned k = 1; ok && k < d; ++k)
          for (Vertex v : tr.levels[k]) ok = ok && children(v) == (k == 1 ? 1u : 2u);
        inf_tree.expect(ok, [&] { return "tree at inf: depth " + std::to_string(tr.depth()); });
      } else if (comp.trace_class == TraceClass::A) {
        bool ok = tr.depth() == d;
        for (unsigned k = 1; ok && k <= d; ++k) ok = tr.levels[k].size() == (std::size_t{1} << (k - 1));
        ok = ok && children(tr.root) == 1;
        for (unsigned k = 1; ok && k < d; ++k)
          for (Vertex v : tr.levels[k]) ok = ok && children(v) == 2;
        a_trees.expect(ok, [&] { return "tree at " + root + ": depth " + std::to_string(tr.depth()); });
      } else {
        b_trees.expect(tr.depth() == 1, [&] { return "tree at " + root + ": depth " + std::to_string(tr.depth()); });
      }
    }
  }
  report << a_trees << b_trees << inf_tree;

  CheckTally leaf_traces("leaf-trace-law");
  CheckTally leaf_degree("leaf-degree-law");
  for (Vertex v : leaves(g)) {
    if (!g.point(v).is_unit()) {
      leaf_traces.expect(false, [&] { return name(v) + " is a leaf"; });
      continue;
    }
    const unsigned tx = f.trace(v), tinv = f.trace(f.inv(v));
    const bool ok = g.trace_class(v) == TraceClass::A ? (tx == 1 && tinv == 1) : (tx == 0 && tinv == 1);
    leaf_traces.expect(ok, [&] {
      return name(v) + " (class " + to_string(g.trace_class(v)) + ") has traces " + std::to_string(tx) + "," +
             std::to_string(tinv);
    });
    const unsigned deg = f.degree_of(v);
    const unsigned odd = deg >> r;
    const bool dok = (deg % (1u << r) == 0) && (odd % 2 == 1) && (f.odd_part() % odd == 0);
    leaf_degree.expect(dok, [&] { return name(v) + " has degree " + std::to_string(deg); });
  }
  report << leaf_traces << leaf_degree;
  return report;
}

}  // namespace theta
