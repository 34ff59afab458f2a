#pragma once

// Fast-maximal planar graphs as rotation systems.
//
// Face rule: the face to the left of the dart u->v continues with v->w where
// w follows u in the rotation of v. The outer face is the face containing the
// dart E1->E2, so at every boundary vertex the boundary successor directly
// follows the boundary predecessor in its rotation.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace fscheme {

inline constexpr int kDefaultMaxVertices = 64;

struct Embedding {
  std::vector<std::vector<VertexId>> rot;
  VertexId e1 = 0;
  VertexId e2 = 1;

  int size() const { return static_cast<int>(rot.size()); }
  int degree(VertexId v) const { return static_cast<int>(rot[v].size()); }
  int edge_count() const {
    int d = 0;
    for (const auto& r : rot) d += static_cast<int>(r.size());
    return d / 2;
  }
  bool adjacent(VertexId u, VertexId v) const {
    return std::find(rot[u].begin(), rot[u].end(), v) != rot[u].end();
  }
  // Neighbour following `u` in the rotation of `v`.
  VertexId succ(VertexId v, VertexId u) const {
    const auto& r = rot[v];
    auto it = std::find(r.begin(), r.end(), u);
    if (it == r.end()) throw ValidationError(label(u) + " is not a neighbour of " + label(v));
    ++it;
    return it == r.end() ? r.front() : *it;
  }
  bool operator==(const Embedding&) const = default;
};

using FaceWalk = std::vector<VertexId>;

struct FastMaximalReport {
  bool ok = false;
  std::string reason;
  FaceWalk outer;  // starts E1, E2
  int gamma = 0;
  int faces = 0;
};

// ---------------------------------------------------------------- builders

// Wheel with `rim` boundary vertices. Vertex ids:
// rim E1, E2, then hub E3, then the remaining rim vertices E4, E5, ...
inline Embedding build_wheel(int rim) {
  if (rim < 3) throw InvalidParameter("wheel rim must be >= 3, got " + std::to_string(rim));
  Embedding g;
  g.rot.resize(rim + 1);
  const VertexId hub = 2;
  std::vector<VertexId> r;
  r.push_back(0);
  r.push_back(1);
  for (int i = 3; i <= rim; ++i) r.push_back(i);
  for (int i = 0; i < rim; ++i) {
    VertexId prev = r[(i + rim - 1) % rim], next = r[(i + 1) % rim];
    g.rot[r[i]] = {prev, next, hub};
  }
  g.rot[hub] = r;
  g.e1 = 0;
  g.e2 = 1;
  return g;
}

inline Embedding build_triangle() {
  Embedding g;
  g.rot = {{2, 1}, {0, 2}, {1, 0}};
  return g;
}

// --------------------------------------------------------------- faces

inline std::vector<FaceWalk> faces(const Embedding& g) {
  std::vector<FaceWalk> out;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (VertexId u = 0; u < g.size(); ++u) {
    for (VertexId v : g.rot[u]) {
      if (seen.count({u, v})) continue;
      FaceWalk f;
      VertexId a = u, b = v;
      while (!seen.count({a, b})) {
        seen.insert({a, b});
        f.push_back(a);
        VertexId c = g.succ(b, a);
        a = b;
        b = c;
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

// Face containing the dart u->v.
inline FaceWalk face_of(const Embedding& g, VertexId u, VertexId v) {
  FaceWalk f;
  VertexId a = u, b = v;
  do {
    f.push_back(a);
    VertexId c = g.succ(b, a);
    a = b;
    b = c;
  } while (!(a == u && b == v));
  return f;
}

inline bool is_connected(const Embedding& g) {
  if (g.size() == 0) return false;
  std::vector<char> vis(g.size(), 0);
  std::vector<VertexId> st{0};
  vis[0] = 1;
  int cnt = 1;
  while (!st.empty()) {
    VertexId v = st.back();
    st.pop_back();
    for (VertexId w : g.rot[v])
      if (!vis[w]) {
        vis[w] = 1;
        ++cnt;
        st.push_back(w);
      }
  }
  return cnt == g.size();
}

inline std::string check_simple(const Embedding& g) {
  for (VertexId v = 0; v < g.size(); ++v) {
    std::set<VertexId> s;
    for (VertexId w : g.rot[v]) {
      if (w < 0 || w >= g.size()) return "neighbour id out of range at " + label(v);
      if (w == v) return "loop at " + label(v);
      if (!s.insert(w).second) return "duplicate neighbour " + label(w) + " at " + label(v);
      if (!g.adjacent(w, v)) return "asymmetric edge " + label(v) + "-" + label(w);
    }
  }
  return {};
}

inline FastMaximalReport validate_fast_maximal(const Embedding& g) {
  FastMaximalReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.reason = std::move(why);
    return rep;
  };
  if (g.size() < 3) return fail("fewer than 3 vertices");
  if (auto s = check_simple(g); !s.empty()) return fail("not simple: " + s);
  if (!is_connected(g)) return fail("not connected");
  if (!g.adjacent(g.e1, g.e2)) return fail("base side is not an edge");
  auto fs = faces(g);
  rep.faces = static_cast<int>(fs.size());
  if (g.size() - g.edge_count() + rep.faces != 2) return fail("Euler check failed (not a planar rotation system)");
  FaceWalk outer = face_of(g, g.e1, g.e2);
  // the outer face is the one traversing E1 -> E2; a cycle's inner face has
  // the same vertices in the other direction
  auto is_outer = [&](const FaceWalk& f) {
    for (size_t i = 0; i < f.size(); ++i)
      if (f[i] == g.e1 && f[(i + 1) % f.size()] == g.e2) return true;
    return false;
  };
  for (const auto& f : fs) {
    if (f.size() == 3 || is_outer(f)) continue;
    return fail("not-fast-maximal: more than one non-triangular face");
  }
  std::set<VertexId> distinct(outer.begin(), outer.end());
  if (distinct.size() != outer.size())
    return fail("not-fast-maximal: outer walk revisits a vertex (cut vertex)");
  rep.ok = true;
  rep.outer = outer;
  rep.gamma = static_cast<int>(outer.size());
  return rep;
}

inline FaceWalk boundary_walk(const Embedding& g) {
  auto rep = validate_fast_maximal(g);
  if (!rep.ok) throw ValidationError(rep.reason);
  return rep.outer;
}

inline int gamma(const Embedding& g) { return static_cast<int>(boundary_walk(g).size()); }

// Third vertex of the inner triangle on the base side.
inline VertexId base_apex(const Embedding& g) { return g.succ(g.e1, g.e2); }

inline bool is_i_graph(const Embedding& g) {
  auto b = boundary_walk(g);
  std::vector<char> on(g.size(), 0);
  for (VertexId v : b) on[v] = 1;
  std::vector<VertexId> inner;
  for (VertexId v = 0; v < g.size(); ++v)
    if (!on[v]) inner.push_back(v);
  if (inner.empty()) return false;
  std::vector<char> vis(g.size(), 0);
  std::vector<VertexId> st{inner[0]};
  vis[inner[0]] = 1;
  size_t cnt = 1;
  while (!st.empty()) {
    VertexId v = st.back();
    st.pop_back();
    for (VertexId w : g.rot[v])
      if (!on[w] && !vis[w]) {
        vis[w] = 1;
        ++cnt;
        st.push_back(w);
      }
  }
  return cnt == inner.size();
}

// --------------------------------------------------------------- splices

namespace detail {
inline void insert_after(std::vector<VertexId>& r, VertexId anchor, VertexId x) {
  auto it = std::find(r.begin(), r.end(), anchor);
  if (it == r.end()) throw ConstructionError("splice anchor missing");
  r.insert(it + 1, x);
}
}  // namespace detail

// Adds a vertex adjacent to the consecutive boundary run `run` (>= 2 vertices,
// given in boundary order). Inner run vertices leave the boundary.
inline VertexId attach_star(Embedding& g, const std::vector<VertexId>& run) {
  if (run.size() < 2) throw InvalidAttachment("star needs at least two boundary vertices");
  auto b = boundary_walk(g);
  const int n = static_cast<int>(b.size());
  auto pos = [&](VertexId v) {
    auto it = std::find(b.begin(), b.end(), v);
    if (it == b.end()) throw InvalidAttachment(label(v) + " is not on the boundary");
    return static_cast<int>(it - b.begin());
  };
  int p0 = pos(run[0]);
  for (size_t i = 1; i < run.size(); ++i)
    if (b[(p0 + i) % n] != run[i]) throw InvalidAttachment("glued vertices are not consecutive on the boundary");
  if (static_cast<int>(run.size()) > n) throw InvalidAttachment("run longer than the boundary");
  const VertexId x = g.size();
  const size_t t = run.size() - 1;
  VertexId prev0 = b[(p0 + n - 1) % n];
  g.rot.emplace_back();
  detail::insert_after(g.rot[run[0]], prev0, x);
  for (size_t i = 1; i < t; ++i) detail::insert_after(g.rot[run[i]], run[i - 1], x);
  detail::insert_after(g.rot[run[t]], run[t - 1], x);
  std::vector<VertexId>& rx = g.rot[x];
  rx.push_back(run[0]);
  for (size_t i = t; i >= 1; --i) rx.push_back(run[i]);
  return x;
}

// Adds the chord a-c over the boundary path a, b, c; b leaves the boundary.
inline void attach_chord(Embedding& g, VertexId a, VertexId b, VertexId c) {
  auto w = boundary_walk(g);
  const int n = static_cast<int>(w.size());
  auto it = std::find(w.begin(), w.end(), a);
  if (it == w.end()) throw InvalidAttachment(label(a) + " is not on the boundary");
  int p = static_cast<int>(it - w.begin());
  if (w[(p + 1) % n] != b || w[(p + 2) % n] != c) throw InvalidAttachment("chord endpoints are not at boundary distance 2");
  if (n < 4 || g.adjacent(a, c)) throw InvalidAttachment("chord " + label(a) + "-" + label(c) + " already present");
  VertexId prev = w[(p + n - 1) % n];
  detail::insert_after(g.rot[a], prev, c);
  detail::insert_after(g.rot[c], b, a);
}

// Adds the chord u-v inside the face `f` (a face walk containing both).
inline void split_face(Embedding& g, const FaceWalk& f, VertexId u, VertexId v) {
  const int n = static_cast<int>(f.size());
  auto at = [&](VertexId x) {
    auto it = std::find(f.begin(), f.end(), x);
    if (it == f.end()) throw ConstructionError("vertex not on face");
    return static_cast<int>(it - f.begin());
  };
  int pu = at(u), pv = at(v);
  detail::insert_after(g.rot[u], f[(pu + n - 1) % n], v);
  detail::insert_after(g.rot[v], f[(pv + n - 1) % n], u);
}

// Places `b` next to `a` (ids shifted by a.size()); base side stays a's.
inline Embedding disjoint_union(const Embedding& a, const Embedding& b) {
  Embedding g = a;
  const int off = a.size();
  for (const auto& r : b.rot) {
    std::vector<VertexId> nr;
    for (VertexId w : r) nr.push_back(w + off);
    g.rot.push_back(std::move(nr));
  }
  return g;
}

// Removes vertex `drop` after all its darts were redirected, keeping ids dense.
inline void erase_vertex(Embedding& g, VertexId drop) {
  g.rot.erase(g.rot.begin() + drop);
  for (auto& r : g.rot)
    for (auto& w : r)
      if (w > drop) --w;
  if (g.e1 > drop) --g.e1;
  if (g.e2 > drop) --g.e2;
}

inline void rename_vertex(Embedding& g, VertexId from, VertexId to) {
  for (auto& r : g.rot)
    for (auto& w : r)
      if (w == from) w = to;
}

inline std::vector<VertexId> rotate_to(const std::vector<VertexId>& r, VertexId first) {
  auto it = std::find(r.begin(), r.end(), first);
  if (it == r.end()) throw ConstructionError("rotate_to: missing neighbour");
  std::vector<VertexId> out(it, r.end());
  out.insert(out.end(), r.begin(), it);
  return out;
}

// --------------------------------------------------------------- dump format

inline std::string dump(const Embedding& g) {
  std::ostringstream os;
  os << "base: " << g.e1 << ' ' << g.e2 << '\n';
  auto rep = validate_fast_maximal(g);
  os << "gamma: " << (rep.ok ? rep.gamma : 0) << '\n';
  for (VertexId v = 0; v < g.size(); ++v) {
    os << v << ':';
    for (VertexId w : g.rot[v]) os << ' ' << w;
    os << '\n';
  }
  return os.str();
}

inline Embedding parse_dump(const std::string& text) {
  Embedding g;
  std::istringstream is(text);
  std::string line;
  std::map<int, std::vector<VertexId>> rows;
  bool have_base = false;
  int declared_gamma = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InvalidParameter("graph dump: missing ':' in line '" + line + "'");
    std::string key = line.substr(0, colon);
    std::istringstream rest(line.substr(colon + 1));
    if (key == "base") {
      if (!(rest >> g.e1 >> g.e2)) throw InvalidParameter("graph dump: bad base line");
      have_base = true;
    } else if (key == "gamma") {
      rest >> declared_gamma;
    } else {
      int v = std::stoi(key);
      std::vector<VertexId> r;
      VertexId w;
      while (rest >> w) r.push_back(w);
      rows[v] = std::move(r);
    }
  }
  if (!have_base) throw InvalidParameter("graph dump: missing base line");
  for (auto& [v, r] : rows) {
    if (v != g.size()) throw InvalidParameter("graph dump: vertex ids must be dense");
    g.rot.push_back(r);
  }
  if (declared_gamma >= 0) {
    auto rep = validate_fast_maximal(g);
    int actual = rep.ok ? rep.gamma : 0;
    if (actual != declared_gamma)
      throw InvalidParameter("graph dump: gamma " + std::to_string(declared_gamma) + " does not match boundary (" +
                             std::to_string(actual) + ")");
  }
  return g;
}

}  // namespace fscheme
