#pragma once

// Exhaustive 4-coloring ground truth for small embeddings.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "planar.hpp"

namespace fscheme {

using Coloring = std::vector<Color>;  // indexed by VertexId

enum class Normalization {
  TwoColor,      // f(E1)=1, f(E2)=2
  BaseTriangle,  // additionally the apex of the base triangle gets 3
};

inline int default_oracle_guard() {
  if (const char* s = std::getenv("BOUNDARY_CENSUS_MAX_V")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0 && v <= kDefaultMaxVertices) return static_cast<int>(v);
  }
  return 20;
}

struct OracleOptions {
  Normalization norm = Normalization::TwoColor;
  int max_vertices = default_oracle_guard();
};

struct LowerBoundReport {
  bool ok = false;
  int gamma = 0;
  std::uint64_t census = 0;
  std::uint64_t bound = 0;
};

namespace detail {

class Backtracker {
 public:
  explicit Backtracker(const Embedding& g) : n_(g.size()), adj_(g.size(), 0) {
    if (n_ > 64) throw SizeGuardExceeded("oracle supports at most 64 vertices, graph has " + std::to_string(n_));
    for (VertexId v = 0; v < n_; ++v)
      for (VertexId w : g.rot[v]) adj_[v] |= std::uint64_t{1} << w;
  }

  // Color `order[i..]` given `col`; calls `leaf` on every completion until it returns false.
  bool run(const std::vector<VertexId>& order, size_t i, Coloring& col,
           const std::function<bool(const Coloring&)>& leaf) const {
    if (i == order.size()) return leaf(col);
    const VertexId v = order[i];
    if (col[v]) {
      if (!consistent(v, col)) return true;
      return run(order, i + 1, col, leaf);
    }
    for (Color c = 1; c <= 4; ++c) {
      col[v] = c;
      if (consistent(v, col) && !run(order, i + 1, col, leaf)) {
        col[v] = 0;
        return false;
      }
    }
    col[v] = 0;
    return true;
  }

  bool consistent(VertexId v, const Coloring& col) const {
    std::uint64_t m = adj_[v];
    while (m) {
      int w = __builtin_ctzll(m);
      m &= m - 1;
      if (col[w] == col[v]) return false;
    }
    return true;
  }

  bool any_completion(const std::vector<VertexId>& order, Coloring& col) const {
    bool found = false;
    run(order, 0, col, [&](const Coloring&) {
      found = true;
      return false;
    });
    return found;
  }

 private:
  int n_;
  std::vector<std::uint64_t> adj_;
};

// Interior vertices in BFS order from the boundary.
inline std::vector<VertexId> interior_order(const Embedding& g, const FaceWalk& boundary) {
  std::vector<char> seen(g.size(), 0);
  std::vector<VertexId> q(boundary.begin(), boundary.end());
  for (VertexId v : boundary) seen[v] = 1;
  std::vector<VertexId> out;
  for (size_t h = 0; h < q.size(); ++h)
    for (VertexId w : g.rot[q[h]])
      if (!seen[w]) {
        seen[w] = 1;
        q.push_back(w);
        out.push_back(w);
      }
  return out;
}

inline void check_guard(const Embedding& g, const OracleOptions& opt) {
  if (g.size() > opt.max_vertices)
    throw SizeGuardExceeded("graph has " + std::to_string(g.size()) + " vertices, oracle limit is " +
                            std::to_string(opt.max_vertices) + " (set BOUNDARY_CENSUS_MAX_V to raise it)");
}

inline Coloring seeded(const Embedding& g, Normalization norm) {
  Coloring col(g.size(), 0);
  col[g.e1] = 1;
  col[g.e2] = 2;
  if (norm == Normalization::BaseTriangle) col[base_apex(g)] = 3;
  return col;
}

inline Word project(const Coloring& col, const FaceWalk& b) {
  Word w;
  for (VertexId v : b) w += color_char(col[v]);
  return w;
}

}  // namespace detail

// All proper colorings under the chosen normalization, in backtracking order.
inline std::vector<Coloring> enumerate_colorings(const Embedding& g, const OracleOptions& opt = {}) {
  detail::check_guard(g, opt);
  auto b = boundary_walk(g);
  auto order = b;
  auto in = detail::interior_order(g, b);
  order.insert(order.end(), in.begin(), in.end());
  detail::Backtracker bt(g);
  auto col = detail::seeded(g, opt.norm);
  std::vector<Coloring> out;
  bt.run(order, 0, col, [&](const Coloring& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

// Distinct boundary words over the vertex sequence `verts` (any order, no repeats).
inline std::set<Word> census_over(const Embedding& g, const std::vector<VertexId>& verts, const OracleOptions& opt = {}) {
  detail::check_guard(g, opt);
  auto in = detail::interior_order(g, verts);
  detail::Backtracker bt(g);
  auto col = detail::seeded(g, opt.norm);
  std::set<Word> out;
  bt.run(verts, 0, col, [&](const Coloring& c) {
    Coloring scratch = c;
    if (bt.any_completion(in, scratch)) out.insert(detail::project(c, verts));
    return true;
  });
  return out;
}

inline std::set<Word> boundary_census(const Embedding& g, const OracleOptions& opt = {}) {
  return census_over(g, boundary_walk(g), opt);
}

// Whether the boundary word `w` has a proper continuation to the interior.
inline bool extends(const Embedding& g, const Word& w) {
  auto b = boundary_walk(g);
  if (w.size() != b.size())
    throw InvalidParameter("word length " + std::to_string(w.size()) + " != gamma " + std::to_string(b.size()));
  Coloring col(g.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) {
    if (w[i] < '1' || w[i] > '4') throw InvalidParameter("bad color in word " + w);
    col[b[i]] = char_color(w[i]);
  }
  detail::Backtracker bt(g);
  for (VertexId v : b)
    if (!bt.consistent(v, col)) return false;
  return bt.any_completion(detail::interior_order(g, b), col);
}

inline LowerBoundReport check_lower_bound(const Embedding& g, const OracleOptions& opt = {}) {
  LowerBoundReport r;
  r.gamma = gamma(g);
  r.census = boundary_census(g, opt).size();
  r.bound = pow2(r.gamma - 3);
  r.ok = r.census >= r.bound;
  return r;
}

}  // namespace fscheme
