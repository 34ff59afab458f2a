#pragma once

// Attachment engine: grows an embedding and its scheme together.
//
// Every attachment is a sequence of boundary splices. The new scheme is
// derived from the old one: each old word is extended over the new vertices
// in every proper way, projected onto the new boundary, and a complete
// binary sub-trie is selected from the resulting words (preferring words over
// {1,2,4}). Old interior vertices never touch new ones, so every selected
// word still extends to the whole graph.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "blocks.hpp"
#include "core.hpp"
#include "oracle.hpp"
#include "planar.hpp"
#include "scheme.hpp"

namespace fscheme {

// ---------------------------------------------------------------- operations

struct WheelOp {
  int n = 0, k = 0, at = 0;
  int m() const { return n - k + 2; }
};
struct EdgeOp {
  int at = 0;
};
struct VertexOp {
  int k = 0, at = 0;
};
struct BogenOp {
  int len = 0, at = 0;
};

using AttachmentOp = std::variant<WheelOp, EdgeOp, VertexOp, BogenOp>;

inline std::string to_string(const AttachmentOp& op) {
  struct V {
    std::string operator()(const WheelOp& o) const {
      return "attach wheel n=" + std::to_string(o.n) + " k=" + std::to_string(o.k) + " at=" + std::to_string(o.at);
    }
    std::string operator()(const EdgeOp& o) const { return "attach edge at=" + std::to_string(o.at); }
    std::string operator()(const VertexOp& o) const {
      return "attach vertex k=" + std::to_string(o.k) + " at=" + std::to_string(o.at);
    }
    std::string operator()(const BogenOp& o) const {
      return "attach bogen len=" + std::to_string(o.len) + " at=" + std::to_string(o.at);
    }
  };
  return std::visit(V{}, op);
}

// Boundary length change predicted by the operation.
inline int gamma_delta(const AttachmentOp& op) {
  struct V {
    int operator()(const WheelOp& o) const { return o.m() - o.k; }
    int operator()(const EdgeOp&) const { return -1; }
    int operator()(const VertexOp& o) const { return 3 - o.k; }
    int operator()(const BogenOp& o) const { return o.len - 1; }
  };
  return std::visit(V{}, op);
}

inline bool is_local_op(const AttachmentOp& op) {
  return std::holds_alternative<VertexOp>(op) || std::holds_alternative<BogenOp>(op);
}

// ---------------------------------------------------------------- state

struct Built {
  Embedding g;
  Scheme s;
  std::vector<char> pinned;  // vertices that must stay on the boundary
  // Sound boundary words carried forward while the scheme is local; empty
  // means the scheme's own words.
  std::set<Word> pool;
};

inline Built seed_wheel(int n) {
  Built b{build_wheel(n), scheme_for_wheel(n), {}, {}};
  b.pinned.assign(b.g.size(), 0);
  return b;
}

inline Built seed_triangle() {
  Built b{build_triangle(), scheme_for_triangle(), {}, {}};
  b.pinned.assign(b.g.size(), 0);
  return b;
}

// ---------------------------------------------------------------- graph splices

namespace detail {

inline VertexId boundary_at(const FaceWalk& b, int pos) {
  const int n = static_cast<int>(b.size());
  return b[static_cast<size_t>(((pos - 1) % n + n) % n)];
}

inline std::vector<VertexId> boundary_run(const FaceWalk& b, int at, int len) {
  if (at < 1 || at > static_cast<int>(b.size()))
    throw InvalidAttachment("at=" + std::to_string(at) + " outside 1.." + std::to_string(b.size()));
  if (len > static_cast<int>(b.size()))
    throw InvalidAttachment("needs " + std::to_string(len) + " boundary vertices, boundary has " + std::to_string(b.size()));
  std::vector<VertexId> r;
  for (int i = 0; i < len; ++i) r.push_back(boundary_at(b, at + i));
  return r;
}

inline void check_coverable(const Embedding& g, const std::vector<char>& pinned, VertexId v) {
  if (v == g.e1 || v == g.e2) throw InvalidAttachment("would cover base vertex " + label(v));
  if (v < static_cast<VertexId>(pinned.size()) && pinned[v])
    throw InvalidAttachment("would cover " + label(v) + ", which must stay on the boundary");
}

}  // namespace detail

// Applies the graph part of `op`; returns the new vertices in creation order.
inline std::vector<VertexId> splice(Embedding& g, std::vector<char>& pinned, const AttachmentOp& op) {
  const FaceWalk b = boundary_walk(g);
  const int gam = static_cast<int>(b.size());
  std::vector<VertexId> fresh;
  auto cover_inner = [&](const std::vector<VertexId>& run) {
    for (size_t i = 1; i + 1 < run.size(); ++i) detail::check_coverable(g, pinned, run[i]);
  };
  if (auto* w = std::get_if<WheelOp>(&op)) {
    if (w->k < 3) throw InvalidParameter("wheel attachment needs k >= 3");
    if (w->n < w->k) throw InvalidParameter("wheel attachment needs k <= n");
    auto run = detail::boundary_run(b, w->at, w->k);
    cover_inner(run);
    const VertexId first = run.front(), last = run.back();
    if (w->m() == 2 && g.adjacent(first, last))
      throw InvalidAttachment(label(first) + "-" + label(last) + " already adjacent");
    VertexId hub = attach_star(g, run);
    fresh.push_back(hub);
    if (w->m() == 2) {
      attach_chord(g, first, hub, last);
    } else {
      VertexId prev = first;
      for (int i = 1; i <= w->m() - 2; ++i) {
        std::vector<VertexId> r{prev, hub};
        if (i == w->m() - 2) r.push_back(last);
        prev = attach_star(g, r);
        fresh.push_back(prev);
      }
    }
  } else if (auto* e = std::get_if<EdgeOp>(&op)) {
    if (gam < 4) throw InvalidAttachment("edge needs gamma >= 4");
    if (e->at < 2 || e->at > gam - 1)
      throw InvalidAttachment("edge at=" + std::to_string(e->at) + " outside 2.." + std::to_string(gam - 1));
    auto run = detail::boundary_run(b, e->at, 3);
    cover_inner(run);
    if (g.adjacent(run[0], run[2])) throw InvalidAttachment(label(run[0]) + "-" + label(run[2]) + " already adjacent");
    attach_chord(g, run[0], run[1], run[2]);
  } else if (auto* v = std::get_if<VertexOp>(&op)) {
    if (v->k < 3) throw InvalidParameter("vertex attachment needs k >= 3 (k = 2 starts an arc)");
    auto run = detail::boundary_run(b, v->at, v->k);
    cover_inner(run);
    fresh.push_back(attach_star(g, run));
  } else if (auto* a = std::get_if<BogenOp>(&op)) {
    if (a->len < 2) throw InvalidParameter("arc needs len >= 2");
    auto run = detail::boundary_run(b, a->at, 3);
    cover_inner(run);
    VertexId prev = attach_star(g, {run[0], run[1]});
    fresh.push_back(prev);
    for (int j = 2; j <= a->len; ++j) {
      std::vector<VertexId> r{prev, run[1]};
      if (j == a->len) r.push_back(run[2]);
      prev = attach_star(g, r);
      fresh.push_back(prev);
    }
  }
  pinned.resize(g.size(), 0);
  if (is_local_op(op))
    for (VertexId x : fresh) pinned[x] = 1;
  auto rep = validate_fast_maximal(g);
  if (!rep.ok) throw ConstructionError("result is not fast-maximal: " + rep.reason);
  return fresh;
}

// ---------------------------------------------------------------- scheme selection

namespace detail {

// Prefix trie of boundary words; nodes at depth gamma-2 carry the set of
// admissible final colors.
struct WordTrie {
  struct Node {
    std::map<Color, int> kids;
    ColorSet last;
  };
  std::vector<Node> nodes{Node{}};
  int gamma = 0;

  explicit WordTrie(const std::set<Word>& words, int g) : gamma(g) {
    for (const Word& w : words) {
      int at = 0;
      for (int j = 1; j < gamma - 1; ++j) {
        Color c = char_color(w[j]);
        auto it = nodes[at].kids.find(c);
        if (it == nodes[at].kids.end()) {
          nodes.push_back(Node{});
          it = nodes[at].kids.emplace(c, static_cast<int>(nodes.size()) - 1).first;
        }
        at = it->second;
      }
      nodes[at].last.insert(char_color(w[gamma - 1]));
    }
  }
};

class Selector {
 public:
  Selector(const WordTrie& t) : t_(t), memo_(t.nodes.size() * 2, -1) {}

  // Complete-trie feasibility: one child at depth 0, two children below,
  // a nonempty final cell at depth gamma-2.
  bool feasible(int node, int depth, bool palette_only) {
    int& m = memo_[static_cast<size_t>(node) * 2 + (palette_only ? 1 : 0)];
    if (m >= 0) return m;
    bool ok;
    if (depth == t_.gamma - 2) {
      ok = !(palette_only ? t_.nodes[node].last & kPalette : t_.nodes[node].last).empty();
    } else {
      int need = depth == 0 ? 1 : 2, have = 0;
      for (auto [c, kid] : t_.nodes[node].kids)
        if ((!palette_only || kPalette.contains(c)) && feasible(kid, depth + 1, palette_only)) ++have;
      ok = have >= need;
    }
    m = ok;
    return ok;
  }

  void select(int node, int depth, Row& prefix, std::vector<Row>& out) {
    const auto& nd = t_.nodes[node];
    if (depth == t_.gamma - 2) {
      prefix.push_back(pick_cell(nd.last));
      out.push_back(prefix);
      prefix.pop_back();
      return;
    }
    std::vector<std::pair<int, Color>> cand;
    for (auto [c, kid] : nd.kids)
      if (feasible(kid, depth + 1, false))
        cand.emplace_back((kPalette.contains(c) && feasible(kid, depth + 1, true)) ? 0 : 1, c);
    std::sort(cand.begin(), cand.end());
    const size_t need = depth == 0 ? 1 : 2;
    for (size_t i = 0; i < need && i < cand.size(); ++i) {
      Color c = cand[i].second;
      prefix.push_back(ColorSet::of(c));
      select(nd.kids.at(c), depth + 1, prefix, out);
      prefix.pop_back();
    }
  }

  // Final cell: the admissible colors from {1,2,4}; color 3 only when nothing else fits.
  static ColorSet pick_cell(ColorSet last) {
    ColorSet p = last & kPalette;
    return p.empty() ? last : p;
  }

 private:
  const WordTrie& t_;
  std::vector<int> memo_;
};

}  // namespace detail

struct Selection {
  Scheme scheme;
  bool relaxed = false;
};

// Chooses a scheme with exactly 2^(gamma-3) rows from `words` (all starting 1 2).
inline Selection select_scheme(const std::vector<VertexId>& boundary, const std::set<Word>& words, bool allow_relaxed) {
  const int gam = static_cast<int>(boundary.size());
  const std::uint64_t target = pow2(gam - 3);
  detail::WordTrie trie(words, gam);
  detail::Selector sel(trie);
  if (!words.empty() && sel.feasible(0, 0, false)) {
    std::vector<Row> rows;
    Row prefix{ColorSet::of(1)};
    sel.select(0, 0, prefix, rows);
    return {Scheme::from_rows(boundary, rows), false};
  }
  if (!allow_relaxed)
    throw ConstructionError("no complete scheme: " + std::to_string(words.size()) + " boundary words for gamma " +
                            std::to_string(gam));
  // Relaxed: every prefix with its final cell, trimmed to the target count.
  std::vector<Row> rows;
  auto walk = [&](auto&& self, int node, Row& prefix) -> void {
    if (static_cast<int>(prefix.size()) == gam - 1) {
      prefix.push_back(detail::Selector::pick_cell(trie.nodes[node].last));
      rows.push_back(prefix);
      prefix.pop_back();
      return;
    }
    for (auto [c, kid] : trie.nodes[node].kids) {
      prefix.push_back(ColorSet::of(c));
      self(self, kid, prefix);
      prefix.pop_back();
    }
  };
  Row prefix{ColorSet::of(1)};
  if (!words.empty()) walk(walk, 0, prefix);
  if (rows.size() < target)
    throw ConstructionError("only " + std::to_string(rows.size()) + " distinguishable boundary colorings, need " +
                            std::to_string(target));
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    auto has3 = [](const Row& r) {
      for (auto c : r)
        if (c.contains(3)) return true;
      return false;
    };
    if (has3(a) != has3(b)) return !has3(a);
    return detail::row_less(a, b);
  });
  rows.resize(target);
  return {Scheme::from_rows(boundary, rows, true), true};
}

// Boundary words of `g` reachable from the words of `old` by coloring `fresh`.
inline std::set<Word> propagate_words(const Embedding& g, const std::vector<VertexId>& oldb, const std::set<Word>& old,
                                     const std::vector<VertexId>& fresh) {
  const auto newb = boundary_walk(g);
  std::set<Word> out;
  Coloring col(g.size(), 0);
  auto ok = [&](VertexId v) {
    for (VertexId w : g.rot[v])
      if (col[w] == col[v]) return false;
    return true;
  };
  auto dfs = [&](auto&& self, size_t i) -> void {
    if (i == fresh.size()) {
      Word w;
      for (VertexId v : newb) w += color_char(col[v]);
      out.insert(std::move(w));
      return;
    }
    for (Color c = 1; c <= 4; ++c) {
      col[fresh[i]] = c;
      if (ok(fresh[i])) self(self, i + 1);
    }
    col[fresh[i]] = 0;
  };
  for (const Word& w : old) {
    std::fill(col.begin(), col.end(), 0);
    for (size_t j = 0; j < oldb.size(); ++j) col[oldb[j]] = char_color(w[j]);
    bool proper = true;
    for (VertexId v : oldb)
      if (!ok(v)) proper = false;  // a new chord joins two equal colors
    if (proper) dfs(dfs, 0);
  }
  return out;
}

// ---------------------------------------------------------------- attachments

inline Built attach(const Built& in, const AttachmentOp& op) {
  Built out = in;
  auto fresh = splice(out.g, out.pinned, op);
  auto words = propagate_words(out.g, in.s.vertices(), in.pool.empty() ? enumerate_all(in.s) : in.pool, fresh);
  // Pinned vertices stay on the boundary for good, so once a vertex or arc
  // attachment happened the scheme is a local one from then on.
  bool pinned_any = std::find(out.pinned.begin(), out.pinned.end(), 1) != out.pinned.end();
  out.s = select_scheme(boundary_walk(out.g), words, pinned_any).scheme;
  out.s.local = out.s.local || pinned_any;
  out.pool = out.s.local ? std::move(words) : std::set<Word>{};
  return out;
}

inline Built attach_wheel(const Built& in, const WheelOp& op) { return attach(in, op); }
inline Built attach_edge(const Built& in, const EdgeOp& op) { return attach(in, op); }
inline Built attach_vertex(const Built& in, const VertexOp& op) { return attach(in, op); }
inline Built attach_bogen(const Built& in, const BogenOp& op) { return attach(in, op); }

// ---------------------------------------------------------------- scripts

enum class CompositionShape { CutVertex = 1, SharedEdge = 2, BridgeTriangle = 3, BridgeTwoTriangles = 4 };

struct ScriptSeed {
  bool triangle = false;
  int n = 0;
};

struct CompositionSpec {
  CompositionShape shape = CompositionShape::CutVertex;
  std::string left, right;  // script paths
};

struct ConstructionScript {
  ScriptSeed seed;
  std::vector<AttachmentOp> ops;
  std::optional<CompositionSpec> compose;
  std::filesystem::path base_dir;
};

struct ScriptError : Error {
  int step;  // 0 = seed, i = i-th op (1-based)
  ScriptError(int s, const std::string& what) : Error("step " + std::to_string(s) + ": " + what), step(s) {}
};

inline std::string to_text(const ConstructionScript& sc) {
  std::ostringstream os;
  if (sc.compose) {
    const auto& c = *sc.compose;
    switch (c.shape) {
      case CompositionShape::CutVertex: os << "compose cut shared=1"; break;
      case CompositionShape::SharedEdge: os << "compose cut shared=2"; break;
      case CompositionShape::BridgeTriangle: os << "compose bridge triangles=1"; break;
      case CompositionShape::BridgeTwoTriangles: os << "compose bridge triangles=2"; break;
    }
    os << " left=" << c.left << " right=" << c.right << '\n';
    return os.str();
  }
  os << (sc.seed.triangle ? std::string("seed triangle") : "seed wheel " + std::to_string(sc.seed.n)) << '\n';
  for (const auto& op : sc.ops) os << to_string(op) << '\n';
  return os.str();
}

inline ConstructionScript parse_script(const std::string& text, const std::filesystem::path& base_dir = {}) {
  ConstructionScript sc;
  sc.base_dir = base_dir;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool have_seed = false;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = raw.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      return InvalidParameter("line " + std::to_string(lineno) + ": " + why + ": '" + line + "'");
    };
    std::map<std::string, std::string> kv;
    for (size_t i = 2; tok[0] != "seed" && i < tok.size(); ++i) {
      auto eq = tok[i].find('=');
      if (eq == std::string::npos) throw fail("expected key=value");
      kv[tok[i].substr(0, eq)] = tok[i].substr(eq + 1);
    }
    auto num = [&](const std::string& key) {
      auto it = kv.find(key);
      if (it == kv.end()) throw fail("missing " + key + "=");
      try {
        size_t used = 0;
        int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing");
        return v;
      } catch (const std::logic_error&) {
        throw fail("bad number for " + key);
      }
    };
    auto expect_keys = [&](std::initializer_list<const char*> keys) {
      if (kv.size() != keys.size()) throw fail("unexpected parameters");
      for (const char* k : keys)
        if (!kv.count(k)) throw fail(std::string("missing ") + k + "=");
    };
    if (tok[0] == "seed") {
      if (have_seed) throw fail("second seed");
      have_seed = true;
      if (tok.size() == 2 && tok[1] == "triangle") {
        sc.seed.triangle = true;
      } else if (tok.size() == 3 && tok[1] == "wheel") {
        try {
          sc.seed.n = std::stoi(tok[2]);
        } catch (const std::logic_error&) {
          throw fail("bad wheel size");
        }
        if (sc.seed.n < 4) throw fail("seed wheel needs n >= 4");
      } else {
        throw fail("expected 'seed wheel <n>' or 'seed triangle'");
      }
    } else if (tok[0] == "attach" && tok.size() >= 2) {
      if (!have_seed) throw fail("attach before seed");
      if (tok[1] == "wheel") {
        expect_keys({"n", "k", "at"});
        sc.ops.push_back(WheelOp{num("n"), num("k"), num("at")});
      } else if (tok[1] == "edge") {
        expect_keys({"at"});
        sc.ops.push_back(EdgeOp{num("at")});
      } else if (tok[1] == "vertex") {
        expect_keys({"k", "at"});
        sc.ops.push_back(VertexOp{num("k"), num("at")});
      } else if (tok[1] == "bogen") {
        expect_keys({"len", "at"});
        sc.ops.push_back(BogenOp{num("len"), num("at")});
      } else {
        throw fail("unknown attachment");
      }
    } else if (tok[0] == "compose" && tok.size() >= 2) {
      CompositionSpec c;
      if (tok[1] == "cut") {
        expect_keys({"shared", "left", "right"});
        int sh = num("shared");
        if (sh != 1 && sh != 2) throw fail("shared must be 1 or 2 (more shared vertices are unsupported)");
        c.shape = sh == 1 ? CompositionShape::CutVertex : CompositionShape::SharedEdge;
      } else if (tok[1] == "bridge") {
        expect_keys({"triangles", "left", "right"});
        int tr = num("triangles");
        if (tr != 1 && tr != 2) throw fail("triangles must be 1 or 2");
        c.shape = tr == 1 ? CompositionShape::BridgeTriangle : CompositionShape::BridgeTwoTriangles;
      } else {
        throw fail("unknown composition");
      }
      c.left = kv["left"];
      c.right = kv["right"];
      sc.compose = c;
    } else {
      throw fail("unknown directive");
    }
  }
  if (sc.compose && have_seed) throw InvalidParameter("a compose script cannot also seed a graph");
  if (!sc.compose && !have_seed) throw InvalidParameter("script has no seed");
  return sc;
}

inline ConstructionScript load_script(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidParameter("cannot read script " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str(), file.parent_path());
}

// Graph-only dry run: gluing, coverage and permanence errors surface before
// any scheme work.
inline void validate_script(const ConstructionScript& sc) {
  if (sc.compose) return;
  Embedding g;
  try {
    g = sc.seed.triangle ? build_triangle() : build_wheel(sc.seed.n);
  } catch (const Error& e) {
    throw ScriptError(0, e.what());
  }
  std::vector<char> pinned(g.size(), 0);
  for (size_t i = 0; i < sc.ops.size(); ++i) {
    try {
      splice(g, pinned, sc.ops[i]);
    } catch (const Error& e) {
      throw ScriptError(static_cast<int>(i) + 1, to_string(sc.ops[i]) + ": " + e.what());
    }
  }
}

struct StepLog {
  int step = 0;
  std::string op;
  int gamma = 0;
  std::uint64_t count = 0;
  std::size_t words = 0;
  bool local = false;
  bool oracle_checked = false;
};

struct RunOptions {
  bool verify = true;  // structure, arithmetic and (within the guard) soundness per step
  OracleOptions oracle{};
};

struct RunResult {
  Built built;
  std::vector<StepLog> log;
};

namespace detail {
inline void verify_step(const Built& b, int step, int expected_gamma, const RunOptions& opt, StepLog& log) {
  auto fm = validate_fast_maximal(b.g);
  if (!fm.ok) throw ScriptError(step, "not fast-maximal: " + fm.reason);
  if (fm.gamma != expected_gamma)
    throw ScriptError(step, "gamma " + std::to_string(fm.gamma) + ", expected " + std::to_string(expected_gamma));
  if (b.s.vertices() != fm.outer) throw ScriptError(step, "scheme columns differ from the boundary");
  auto rep = validate_structure(b.s);
  if (!rep.ok) throw ScriptError(step, rep.clause + " violated at column " + std::to_string(rep.column) + ": " + rep.reason);
  if (b.g.size() <= opt.oracle.max_vertices) {
    for (const Word& w : enumerate_all(b.s))
      if (!extends(b.g, w)) throw ScriptError(step, "scheme word " + w + " does not extend to the interior");
    log.oracle_checked = true;
  }
}
}  // namespace detail

inline RunResult run_script(const ConstructionScript& sc, const RunOptions& opt = {}) {
  if (sc.compose) throw InvalidParameter("composition scripts are evaluated with compose_at_cut");
  validate_script(sc);
  RunResult res;
  res.built = sc.seed.triangle ? seed_triangle() : seed_wheel(sc.seed.n);
  auto record = [&](int step, const std::string& what, int expected_gamma) {
    StepLog l;
    l.step = step;
    l.op = what;
    l.gamma = res.built.s.gamma();
    l.count = count_guaranteed(res.built.s);
    l.words = enumerate_all(res.built.s).size();
    l.local = res.built.s.local;
    if (opt.verify) detail::verify_step(res.built, step, expected_gamma, opt, l);
    res.log.push_back(l);
  };
  record(0, sc.seed.triangle ? "seed triangle" : "seed wheel " + std::to_string(sc.seed.n),
         sc.seed.triangle ? 3 : sc.seed.n);
  for (size_t i = 0; i < sc.ops.size(); ++i) {
    const int step = static_cast<int>(i) + 1;
    const int before = res.built.s.gamma();
    try {
      res.built = attach(res.built, sc.ops[i]);
    } catch (const ScriptError&) {
      throw;
    } catch (const Error& e) {
      throw ScriptError(step, to_string(sc.ops[i]) + ": " + e.what());
    }
    record(step, to_string(sc.ops[i]), before + gamma_delta(sc.ops[i]));
  }
  return res;
}

// ---------------------------------------------------------------- compositions

struct CompositionReport {
  CompositionShape shape = CompositionShape::CutVertex;
  int gamma_left = 0, gamma_right = 0, gamma = 0;
  std::uint64_t count_left = 0, count_right = 0, factor = 0, bound = 0, floor = 0;
  bool bound_ok = false;  // bound >= 2^(gamma-3)
  bool i_graph = false;
  Embedding g;
  std::vector<VertexId> boundary;  // distinct outer vertices in walk order
};

inline std::uint64_t composition_factor(CompositionShape s) {
  switch (s) {
    case CompositionShape::CutVertex: return 6;
    case CompositionShape::SharedEdge: return 2;
    case CompositionShape::BridgeTriangle: return 12;
    case CompositionShape::BridgeTwoTriangles: return 8;
  }
  return 0;
}

namespace detail {

inline VertexId walk_prev(const FaceWalk& b, VertexId v) {
  auto it = std::find(b.begin(), b.end(), v);
  return it == b.begin() ? b.back() : *(it - 1);
}
inline VertexId walk_next(const FaceWalk& b, VertexId v) {
  auto it = std::find(b.begin(), b.end(), v);
  return it + 1 == b.end() ? b.front() : *(it + 1);
}

// Glues `right` onto `left`; left keeps its base side. Returns the embedding.
inline Embedding glue(const Embedding& left, const Embedding& right, CompositionShape shape) {
  const FaceWalk bl = boundary_walk(left);
  FaceWalk br = boundary_walk(right);
  const int off = left.size();
  for (auto& v : br) v += off;
  Embedding g = disjoint_union(left, right);
  const VertexId l2 = bl[2 % bl.size()], l3 = bl[3 % bl.size()];
  switch (shape) {
    case CompositionShape::CutVertex: {
      const VertexId a = l2, x = br[0];
      auto ra = rotate_to(g.rot[a], walk_next(bl, a));
      auto rx = rotate_to(g.rot[x], walk_next(br, x));
      ra.insert(ra.end(), rx.begin(), rx.end());
      g.rot[a] = ra;
      g.rot[x].clear();
      rename_vertex(g, x, a);
      erase_vertex(g, x);
      break;
    }
    case CompositionShape::SharedEdge: {
      const VertexId a = l2, b = l3, x = br[0], y = br[1];
      auto ra = rotate_to(g.rot[a], b);
      auto ry = rotate_to(g.rot[y], walk_next(br, y));
      ry.pop_back();  // x, the twin of b
      ra.insert(ra.end(), ry.begin(), ry.end());
      auto rb = rotate_to(g.rot[b], walk_next(bl, b));
      auto rx = rotate_to(g.rot[x], y);
      rb.insert(rb.end(), rx.begin() + 1, rx.end());
      g.rot[a] = ra;
      g.rot[b] = rb;
      g.rot[x].clear();
      g.rot[y].clear();
      rename_vertex(g, x, b);
      rename_vertex(g, y, a);
      erase_vertex(g, std::max(x, y));
      erase_vertex(g, std::min(x, y));
      break;
    }
    case CompositionShape::BridgeTriangle: {
      const VertexId ra = br[0];
      const VertexId pr = walk_prev(br, ra);
      detail::insert_after(g.rot[l2], walk_prev(bl, l2), ra);
      detail::insert_after(g.rot[ra], pr, l3);
      detail::insert_after(g.rot[ra], l3, l2);
      detail::insert_after(g.rot[l3], l2, ra);
      break;
    }
    case CompositionShape::BridgeTwoTriangles: {
      const VertexId rb = br[0], ra = br[1];
      detail::insert_after(g.rot[l2], walk_prev(bl, l2), ra);
      detail::insert_after(g.rot[ra], rb, l2);
      detail::insert_after(g.rot[rb], walk_prev(br, rb), l3);
      detail::insert_after(g.rot[l3], l2, rb);
      split_face(g, face_of(g, l3, rb), l3, ra);
      break;
    }
  }
  return g;
}

inline std::vector<VertexId> distinct_walk(const FaceWalk& w) {
  std::vector<VertexId> out;
  for (VertexId v : w)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

inline bool interior_connected(const Embedding& g, const std::vector<VertexId>& boundary) {
  std::vector<char> on(g.size(), 0);
  for (VertexId v : boundary) on[v] = 1;
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

}  // namespace detail

// Counting bound for two scheme-carrying graphs joined without a common scheme.
inline CompositionReport compose_at_cut(const Built& left, const Built& right, CompositionShape shape) {
  CompositionReport r;
  r.shape = shape;
  r.gamma_left = left.s.gamma();
  r.gamma_right = right.s.gamma();
  r.count_left = count_guaranteed(left.s);
  r.count_right = count_guaranteed(right.s);
  r.factor = composition_factor(shape);
  r.bound = r.count_left * r.count_right * r.factor;
  r.g = detail::glue(left.g, right.g, shape);
  if (r.g.size() - r.g.edge_count() + static_cast<int>(faces(r.g).size()) != 2)
    throw ConstructionError("composition is not a planar rotation system");
  r.boundary = detail::distinct_walk(face_of(r.g, r.g.e1, r.g.e2));
  r.gamma = static_cast<int>(r.boundary.size());
  r.floor = pow2(r.gamma - 3);
  r.bound_ok = r.bound >= r.floor;
  r.i_graph = detail::interior_connected(r.g, r.boundary);
  return r;
}

// ---------------------------------------------------------------- random scripts

struct GeneratorConfig {
  int max_vertices = 14;
  int max_ops = 6;
  int weight_wheel = 5;
  int weight_edge = 3;
  int weight_vertex = 1;
  int weight_bogen = 1;
};

// Uniform choices among applicable operations; parameters bounded so the
// vertex count never exceeds max_vertices. Same seed, same script.
inline ConstructionScript random_script(std::mt19937_64& rng, const GeneratorConfig& cfg = {}) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  ConstructionScript sc;
  const int max_seed = std::min(8, cfg.max_vertices - 1);
  if (max_seed < 4 || uni(0, 6) == 0) {
    sc.seed.triangle = true;
  } else {
    sc.seed.n = uni(4, max_seed);
  }
  Embedding g = sc.seed.triangle ? build_triangle() : build_wheel(sc.seed.n);
  std::vector<char> pinned(g.size(), 0);
  const int nops = uni(0, cfg.max_ops);
  const int total = cfg.weight_wheel + cfg.weight_edge + cfg.weight_vertex + cfg.weight_bogen;
  for (int step = 0; step < nops; ++step) {
    for (int attempt = 0; attempt < 24; ++attempt) {
      const int gam = static_cast<int>(boundary_walk(g).size());
      const int room = cfg.max_vertices - g.size();
      int pick = uni(1, total);
      AttachmentOp op;
      int added = 0;
      if ((pick -= cfg.weight_wheel) <= 0) {
        int k = uni(3, std::max(3, std::min(gam, 6)));
        int n = uni(k, k + 3);
        op = WheelOp{n, k, uni(1, gam)};
        added = n - k + 1;
      } else if ((pick -= cfg.weight_edge) <= 0) {
        if (gam < 4) continue;
        op = EdgeOp{uni(2, gam - 1)};
      } else if ((pick -= cfg.weight_vertex) <= 0) {
        op = VertexOp{uni(3, std::max(3, std::min(gam, 5))), uni(1, gam)};
        added = 1;
      } else {
        int len = uni(2, 3);
        op = BogenOp{len, uni(1, gam)};
        added = len;
      }
      if (added > room) continue;
      Embedding trial = g;
      std::vector<char> tp = pinned;
      try {
        splice(trial, tp, op);
      } catch (const Error&) {
        continue;
      }
      g = std::move(trial);
      pinned = std::move(tp);
      sc.ops.push_back(op);
      break;
    }
  }
  return sc;
}

}  // namespace fscheme
