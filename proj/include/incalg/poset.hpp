#pragma once

// Finite connected posets given by their cover relations, together with the
// combinatorics consumed elsewhere: intervals and their lengths, maximal
// chains, walks in the Hasse diagram, fundamental cycles.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incalg/error.hpp"

namespace incalg {

using Vertex = std::size_t;

/// An ordered pair (lo, hi) of element indices; used for x <= y pairs.
struct Pair {
  Vertex lo = 0;
  Vertex hi = 0;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// A sequence of elements in which consecutive entries form a cover in one
/// direction or the other.
struct Walk {
  std::vector<Vertex> vertices;

  bool closed() const { return !vertices.empty() && vertices.front() == vertices.back(); }
  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  friend bool operator==(const Walk&, const Walk&) = default;
};

class Poset {
 public:
  struct LabelSpec {
    std::string text;
    bool numeric = false;  ///< label was given as an integer
  };

  /// Builds a poset from labels and cover pairs (a, b), meaning b covers a.
  /// Internal element order is the order of `labels`.
  static Poset from_cover_relations(const std::vector<LabelSpec>& labels,
                                    const std::vector<std::pair<std::string, std::string>>& covers) {
    std::map<std::string, Vertex> index;
    for (Vertex i = 0; i < labels.size(); ++i) {
      const auto& text = labels[i].text;
      if (text.empty() || text.find(',') != std::string::npos)
        throw Error(ErrorKind::InvalidLabel, "label '" + text + "' must be nonempty and free of commas");
      if (!index.emplace(text, i).second) throw Error(ErrorKind::DuplicateLabel, "label '" + text + "' repeated");
    }
    std::vector<std::pair<Vertex, Vertex>> idx;
    for (const auto& [a, b] : covers) {
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end()) throw Error(ErrorKind::UnknownLabel, "cover mentions unknown label '" + a + "'");
      if (ib == index.end()) throw Error(ErrorKind::UnknownLabel, "cover mentions unknown label '" + b + "'");
      idx.emplace_back(ia->second, ib->second);
    }
    return Poset(labels, idx);
  }

  /// Convenience overload with integer labels 1..n given by position.
  static Poset from_covers(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& covers) {
    std::vector<LabelSpec> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back({std::to_string(i + 1), true});
    return Poset(labels, covers);
  }

  /// Integer-labelled poset; covers refer to labels (as in `{1,2}` for 1 < 2).
  static Poset from_labelled_covers(const std::vector<int>& labels, const std::vector<std::pair<int, int>>& covers) {
    std::vector<LabelSpec> specs;
    for (int l : labels) specs.push_back({std::to_string(l), true});
    std::vector<std::pair<std::string, std::string>> c;
    for (auto [a, b] : covers) c.emplace_back(std::to_string(a), std::to_string(b));
    return from_cover_relations(specs, c);
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Vertex v) const { return labels_[v].text; }
  bool label_is_numeric(Vertex v) const { return labels_[v].numeric; }
  const std::vector<LabelSpec>& labels() const { return labels_; }

  std::optional<Vertex> find(const std::string& label) const {
    for (Vertex i = 0; i < size(); ++i)
      if (labels_[i].text == label) return i;
    return std::nullopt;
  }
  Vertex index_of(const std::string& label) const {
    if (auto v = find(label)) return *v;
    throw Error(ErrorKind::UnknownLabel, "unknown element '" + label + "'");
  }

  bool leq(Vertex a, Vertex b) const { return leq_[a * size() + b]; }
  bool less(Vertex a, Vertex b) const { return a != b && leq(a, b); }
  bool comparable(Vertex a, Vertex b) const { return leq(a, b) || leq(b, a); }
  /// True iff b covers a.
  bool is_cover(Vertex a, Vertex b) const { return less(a, b) && length(a, b) == 1; }

  /// l(a, b): the length of the longest chain in the interval [a, b]; requires a <= b.
  std::size_t length(Vertex a, Vertex b) const { return length_[a * size() + b]; }

  /// Cover pairs (a, b), sorted lexicographically by index.
  const std::vector<Pair>& covers() const { return covers_; }
  /// All pairs a < b, sorted lexicographically by index.
  const std::vector<Pair>& strict_pairs() const { return strict_; }
  /// Neighbours in the Hasse diagram, in element order.
  const std::vector<Vertex>& hasse_neighbors(Vertex v) const { return neighbors_[v]; }

  std::vector<Vertex> minimal_elements() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
      if (std::none_of(strict_.begin(), strict_.end(), [v](const Pair& p) { return p.hi == v; })) out.push_back(v);
    return out;
  }
  std::vector<Vertex> maximal_elements() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
      if (std::none_of(strict_.begin(), strict_.end(), [v](const Pair& p) { return p.lo == v; })) out.push_back(v);
    return out;
  }
  bool is_minimal(Vertex v) const {
    for (Vertex u = 0; u < size(); ++u)
      if (less(u, v)) return false;
    return true;
  }
  bool is_maximal(Vertex v) const {
    for (Vertex u = 0; u < size(); ++u)
      if (less(v, u)) return false;
    return true;
  }

  /// Every maximal chain exactly once, as an increasing sequence. Chains are
  /// the Hasse paths from a minimal to a maximal element, listed in DFS order
  /// over element indices.
  const std::vector<std::vector<Vertex>>& maximal_chains() const { return chains_; }

  /// True iff `chain` (increasing) is a maximal chain.
  bool is_maximal_chain(const std::vector<Vertex>& chain) const {
    if (chain.empty() || !is_minimal(chain.front()) || !is_maximal(chain.back())) return false;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (!is_cover(chain[i], chain[i + 1])) return false;
    return true;
  }

  /// Shortest walk from u to v in the Hasse diagram (BFS from u, neighbours
  /// visited in element order, first discovery wins).
  Walk find_walk(Vertex u, Vertex v) const {
    auto parent = bfs_tree(u);
    Walk w;
    for (Vertex x = v;; x = parent[x]) {
      w.vertices.push_back(x);
      if (x == u) break;
    }
    std::reverse(w.vertices.begin(), w.vertices.end());
    return w;
  }

  /// BFS spanning tree of the Hasse diagram rooted at `root`; parent[root] == root.
  std::vector<Vertex> bfs_tree(Vertex root) const {
    constexpr Vertex kUnseen = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> parent(size(), kUnseen);
    parent[root] = root;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : neighbors_[x])
        if (parent[y] == kUnseen) {
          parent[y] = x;
          queue.push_back(y);
        }
    }
    return parent;
  }

  /// Walk from u to v along the tree given by `parent` (as from bfs_tree).
  Walk tree_walk(const std::vector<Vertex>& parent, Vertex u, Vertex v) const {
    auto to_root = [&](Vertex x) {
      std::vector<Vertex> path{x};
      while (parent[x] != x) {
        x = parent[x];
        path.push_back(x);
      }
      return path;
    };
    auto pu = to_root(u), pv = to_root(v);
    // strip the common tail (shared ancestors) but keep the lowest one
    while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
      pu.pop_back();
      pv.pop_back();
    }
    Walk w{pu};
    for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it) w.vertices.push_back(*it);
    return w;
  }

  /// Fundamental cycles of the Hasse graph with respect to the BFS spanning
  /// tree rooted at the first element. Each cycle starts and ends at the
  /// lowest common tree ancestor of the non-tree edge (a, b), runs down the
  /// tree to a, crosses to b, and returns up the tree.
  std::vector<Walk> fundamental_cycles() const {
    auto parent = bfs_tree(0);
    std::vector<Walk> cycles;
    for (const auto& c : covers_) {
      if (parent[c.lo] == c.hi || parent[c.hi] == c.lo) continue;
      Walk to_a = tree_walk(parent, lca(parent, c.lo, c.hi), c.lo);
      Walk b_up = tree_walk(parent, c.hi, to_a.vertices.front());
      Walk cycle = to_a;
      cycle.vertices.insert(cycle.vertices.end(), b_up.vertices.begin(), b_up.vertices.end());
      cycles.push_back(std::move(cycle));
    }
    return cycles;
  }

  /// True iff every consecutive pair of `w` is a cover in some direction.
  bool is_walk(const Walk& w) const {
    if (w.vertices.empty()) return false;
    for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) {
      auto a = w.vertices[i], b = w.vertices[i + 1];
      if (a >= size() || b >= size() || !(is_cover(a, b) || is_cover(b, a))) return false;
    }
    return w.vertices.back() < size();
  }

  friend bool operator==(const Poset& a, const Poset& b) {
    if (a.size() != b.size() || a.covers_ != b.covers_) return false;
    for (Vertex i = 0; i < a.size(); ++i)
      if (a.labels_[i].text != b.labels_[i].text) return false;
    return true;
  }

 private:
  Poset(std::vector<LabelSpec> labels, const std::vector<std::pair<Vertex, Vertex>>& covers)
      : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (n <= 1) throw Error(ErrorKind::TrivialPoset, "a poset needs at least two elements");
    leq_.assign(n * n, false);
    for (Vertex i = 0; i < n; ++i) leq_[i * n + i] = true;
    std::vector<std::pair<Vertex, Vertex>> unique = covers;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto [a, b] : unique) {
      if (a >= n || b >= n) throw Error(ErrorKind::UnknownLabel, "cover index out of range");
      if (a == b) throw Error(ErrorKind::CycleDetected, "element '" + label(a) + "' covers itself");
      leq_[a * n + b] = true;
    }
    // Warshall closure
    for (Vertex k = 0; k < n; ++k)
      for (Vertex i = 0; i < n; ++i)
        if (leq_[i * n + k])
          for (Vertex j = 0; j < n; ++j)
            if (leq_[k * n + j]) leq_[i * n + j] = true;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if (leq_[i * n + j] && leq_[j * n + i])
          throw Error(ErrorKind::CycleDetected, "'" + label(i) + "' and '" + label(j) + "' lie on a cycle");
    for (auto [a, b] : unique)
      for (Vertex c = 0; c < n; ++c)
        if (c != a && c != b && leq_[a * n + c] && leq_[c * n + b])
          throw Error(ErrorKind::RedundantCover, "cover (" + label(a) + "," + label(b) + ") is implied via '" +
                                                     label(c) + "'");
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        if (i != j && leq_[i * n + j]) strict_.push_back({i, j});
    for (auto [a, b] : unique) covers_.push_back({a, b});
    neighbors_.assign(n, {});
    for (const auto& c : covers_) {
      neighbors_[c.lo].push_back(c.hi);
      neighbors_[c.hi].push_back(c.lo);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
    auto parent = bfs_tree(0);
    for (Vertex v = 0; v < n; ++v)
      if (parent[v] == std::numeric_limits<Vertex>::max())
        throw Error(ErrorKind::NotConnected, "'" + label(v) + "' is not connected to '" + label(0) + "'");
    compute_lengths();
    compute_chains();
  }

  void compute_lengths() {
    const std::size_t n = size();
    // longest-path DP along covers in a linear extension (order by down-set size)
    std::vector<Vertex> order(n);
    for (Vertex i = 0; i < n; ++i) order[i] = i;
    auto down = [&](Vertex v) {
      std::size_t c = 0;
      for (Vertex u = 0; u < n; ++u) c += leq(u, v);
      return c;
    };
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return down(a) < down(b); });
    length_.assign(n * n, 0);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b : order) {
        if (!less(a, b)) continue;
        std::size_t best = 0;
        for (const auto& c : covers_)
          if (c.hi == b && leq(a, c.lo)) best = std::max(best, length_[a * n + c.lo] + 1);
        length_[a * n + b] = best;
      }
  }

  void compute_chains() {
    std::vector<Vertex> path;
    auto dfs = [&](auto&& self, Vertex v) -> void {
      path.push_back(v);
      bool extended = false;
      for (const auto& c : covers_)
        if (c.lo == v) {
          extended = true;
          self(self, c.hi);
        }
      if (!extended) chains_.push_back(path);
      path.pop_back();
    };
    for (Vertex v : minimal_elements()) dfs(dfs, v);
  }

  static Vertex lca(const std::vector<Vertex>& parent, Vertex a, Vertex b) {
    std::vector<Vertex> anc;
    for (Vertex x = a;; x = parent[x]) {
      anc.push_back(x);
      if (parent[x] == x) break;
    }
    for (Vertex x = b;; x = parent[x]) {
      if (std::find(anc.begin(), anc.end(), x) != anc.end()) return x;
      if (parent[x] == x) break;
    }
    return anc.back();
  }

  std::vector<LabelSpec> labels_;
  std::vector<bool> leq_;
  std::vector<std::size_t> length_;
  std::vector<Pair> covers_;
  std::vector<Pair> strict_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::vector<Vertex>> chains_;
};

}  // namespace incalg
