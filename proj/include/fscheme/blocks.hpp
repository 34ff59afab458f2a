#pragma once

// Four-column blocks of a scheme and the tables gluing them together.
//
// A block is identified with its word set over {1,2,4}:
//   A_r       every proper word of length 4 starting with r (normal blocks)
//   B(r,p,q)  A_r without the words ending in p (coupled end)
//   C_r       A_r without the words ending in r (coupled end)
// Kind names map r = 1, 2, 4 onto indices 1..3 for A and 1, 3, 5 for C.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "scheme.hpp"

namespace fscheme {

enum class BlockKind { A1, A2, A3, B1, B2, B3, B4, B5, B6, C1, C3, C5 };

inline constexpr std::array<BlockKind, 12> kAllKinds{BlockKind::A1, BlockKind::A2, BlockKind::A3, BlockKind::B1,
                                                     BlockKind::B2, BlockKind::B3, BlockKind::B4, BlockKind::B5,
                                                     BlockKind::B6, BlockKind::C1, BlockKind::C3, BlockKind::C5};

inline std::string kind_name(BlockKind k) {
  static const char* names[] = {"A1", "A2", "A3", "B1", "B2", "B3", "B4", "B5", "B6", "C1", "C3", "C5"};
  return names[static_cast<int>(k)];
}

inline BlockKind parse_kind(const std::string& s) {
  for (BlockKind k : kAllKinds)
    if (kind_name(k) == s) return k;
  throw InvalidParameter("unknown block kind '" + s + "'");
}

inline bool is_normal(BlockKind k) { return k <= BlockKind::A3; }

// First color of every word in the block.
inline Color kind_root(BlockKind k) {
  switch (k) {
    case BlockKind::A1: case BlockKind::B1: case BlockKind::B2: case BlockKind::C1: return 1;
    case BlockKind::A2: case BlockKind::B3: case BlockKind::B4: case BlockKind::C3: return 2;
    default: return 4;
  }
}

// Color the last column must avoid (0 for normal blocks).
inline Color kind_forbidden(BlockKind k) {
  switch (k) {
    case BlockKind::B1: return 2;
    case BlockKind::B2: return 4;
    case BlockKind::B3: return 1;
    case BlockKind::B4: return 4;
    case BlockKind::B5: return 1;
    case BlockKind::B6: return 2;
    case BlockKind::C1: return 1;
    case BlockKind::C3: return 2;
    case BlockKind::C5: return 4;
    default: return 0;
  }
}

inline BlockKind normal_kind(Color r) {
  switch (r) {
    case 1: return BlockKind::A1;
    case 2: return BlockKind::A2;
    case 4: return BlockKind::A3;
  }
  throw InvalidParameter("normal blocks start with 1, 2 or 4");
}

// End block rooted at `r` whose last column avoids `f`.
inline BlockKind end_kind(Color r, Color f) {
  for (BlockKind k : kAllKinds)
    if (!is_normal(k) && kind_root(k) == r && kind_forbidden(k) == f) return k;
  throw InvalidParameter("no end block rooted at " + std::to_string(r) + " avoiding " + std::to_string(f));
}

inline const std::set<Word>& kind_words(BlockKind k) {
  static const auto table = [] {
    std::map<BlockKind, std::set<Word>> m;
    for (BlockKind kind : kAllKinds) {
      std::set<Word> ws;
      Color r = kind_root(kind), f = kind_forbidden(kind);
      for (Color a : kPalette.colors())
        for (Color b : kPalette.colors())
          for (Color c : kPalette.colors()) {
            if (a == r || b == a || c == b || c == f) continue;
            ws.insert(Word{color_char(r), color_char(a), color_char(b), color_char(c)});
          }
      m[kind] = ws;
    }
    return m;
  }();
  return table.at(k);
}

struct Classification {
  BlockKind kind;
  Perm perm;  // maps the kind's words onto the window's words
};

// Permutation witnessing that `words` is the block `k` with colors renamed.
inline std::optional<Perm> match_kind(const std::set<Word>& words, BlockKind k) {
  const auto& base = kind_words(k);
  if (base.size() != words.size()) return std::nullopt;
  for (const Perm& p : all_permutations()) {
    bool ok = true;
    for (const Word& w : base)
      if (!words.count(apply(p, w))) {
        ok = false;
        break;
      }
    if (ok) return p;
  }
  return std::nullopt;
}

// Exact kind first, otherwise the first kind matching up to a color permutation.
inline std::optional<Classification> classify(const std::set<Word>& words) {
  for (BlockKind k : kAllKinds)
    if (kind_words(k) == words) return Classification{k, kIdentity};
  for (BlockKind k : kAllKinds)
    if (auto p = match_kind(words, k)) return Classification{k, *p};
  return std::nullopt;
}

// Minimal sorted word list over all color permutations. Row order is
// irrelevant because a block is a word set.
inline std::vector<Word> normalize(const std::set<Word>& words) {
  std::vector<Word> best;
  for (const Perm& p : all_permutations()) {
    std::vector<Word> v;
    for (const Word& w : words) v.push_back(apply(p, w));
    std::sort(v.begin(), v.end());
    if (best.empty() || v < best) best = v;
  }
  return best;
}

// ---------------------------------------------------------------- successors

// Pairs of end blocks that can follow a normal block: the two children x, y
// of the root must end in blocks avoiding the same final color.
inline std::vector<std::pair<BlockKind, BlockKind>> successors(BlockKind k) {
  if (!is_normal(k)) throw InvalidParameter(kind_name(k) + " is an end block and has no successors");
  Color r = kind_root(k);
  auto kids = (kPalette - ColorSet::of(r)).colors();
  auto at = [](Color x, Color f) { return end_kind(x, f); };
  std::vector<std::pair<BlockKind, BlockKind>> out;
  for (Color f : kPalette.colors()) out.emplace_back(at(kids[0], f), at(kids[1], f));
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
    if (kind_root(a.first) != kind_root(b.first)) return kind_root(a.first) < kind_root(b.first);
    return a.first < b.first;
  });
  return out;
}

// Normal blocks that can follow a normal block one column later.
inline std::vector<BlockKind> normal_successors(BlockKind k) {
  if (!is_normal(k)) throw InvalidParameter(kind_name(k) + " is an end block and has no successors");
  std::vector<BlockKind> out;
  for (Color c : (kPalette - ColorSet::of(kind_root(k))).colors()) out.push_back(normal_kind(c));
  return out;
}

// ---------------------------------------------------------------- tables

inline std::set<Word> compatible_colorings(BlockKind x, BlockKind y, int overlap) {
  if (overlap < 2 || overlap > 4) throw InvalidParameter("overlap must be 2, 3 or 4");
  std::set<Word> sx, sy;
  for (const Word& w : kind_words(x)) sx.insert(w.substr(4 - overlap));
  for (const Word& w : kind_words(y)) sy.insert(reversed(w.substr(4 - overlap)));
  std::set<Word> out;
  std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::inserter(out, out.end()));
  return out;
}

// Printed cell: smallest shared word, "-" when there is none.
inline std::string table_cell(BlockKind x, BlockKind y, int overlap) {
  auto s = compatible_colorings(x, y, overlap);
  return s.empty() ? "-" : *s.begin();
}

struct Table {
  int overlap = 4;
  std::map<std::pair<BlockKind, BlockKind>, std::string> cells;  // absent = not printed
};

inline Table regenerate_table(int overlap) {
  Table t;
  t.overlap = overlap;
  for (BlockKind x : kAllKinds)
    for (BlockKind y : kAllKinds) t.cells[{x, y}] = table_cell(x, y, overlap);
  return t;
}

inline std::string dump_table(const Table& t) {
  std::ostringstream os;
  const int w = t.overlap + 2;
  auto pad = [&](const std::string& s) { return s + std::string(static_cast<size_t>(std::max(1, w - static_cast<int>(s.size()))), ' '); };
  std::string head = pad("");
  for (BlockKind y : kAllKinds) head += pad(kind_name(y));
  while (head.back() == ' ') head.pop_back();
  os << "overlap " << t.overlap << '\n' << head << '\n';
  for (BlockKind x : kAllKinds) {
    std::string line = pad(kind_name(x));
    for (BlockKind y : kAllKinds) {
      auto it = t.cells.find({x, y});
      line += pad(it == t.cells.end() ? "." : it->second);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

// Reads the grid written by dump_table ("." marks cells that are not printed).
inline Table parse_table(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line;
  std::vector<BlockKind> cols;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "overlap") {
      ls >> t.overlap;
      std::getline(is, line);
      std::istringstream hs(line);
      std::string k;
      while (hs >> k) cols.push_back(parse_kind(k));
      continue;
    }
    BlockKind x = parse_kind(head);
    std::string cell;
    for (BlockKind y : cols) {
      if (!(ls >> cell)) break;
      if (cell != ".") t.cells[{x, y}] = cell;
    }
  }
  return t;
}

struct CellDiff {
  BlockKind row, col;
  std::string printed, derived;
};

// A printed cell agrees when it is "-" and nothing is shared, or when the
// printed word (in either reading direction) is one of the shared words.
inline bool cell_agrees(const std::string& printed, const std::set<Word>& derived) {
  if (printed == "-") return derived.empty();
  return derived.count(printed) || derived.count(reversed(printed));
}

inline std::vector<CellDiff> diff_table(const Table& printed) {
  std::vector<CellDiff> out;
  for (const auto& [key, cell] : printed.cells) {
    auto derived = compatible_colorings(key.first, key.second, printed.overlap);
    if (!cell_agrees(cell, derived))
      out.push_back({key.first, key.second, cell, derived.empty() ? "-" : *derived.begin()});
  }
  return out;
}

// ---------------------------------------------------------------- scheme windows

struct Window {
  int column = 0;  // root column
  int entry = 0;   // root entry index
  std::set<Word> words;
  std::optional<Classification> kind;
};

// Four-column windows rooted at every entry of columns 1 .. gamma-4.
inline std::vector<Window> windows(const Scheme& s) {
  std::vector<Window> out;
  for (int j = 1; j + 3 < s.gamma(); ++j)
    for (int i = 0; i < s.length(j); ++i) {
      Window w{j, i, window_words(s, j, i, 4), std::nullopt};
      w.kind = classify(w.words);
      out.push_back(std::move(w));
    }
  return out;
}

// Full structural check: shape (FS1, FS3, properness, distinctness) plus FS2,
// every window is a known block, end blocks exactly at the coupled end.
inline SchemeReport validate_structure(const Scheme& s) {
  auto rep = validate_shape(s);
  if (!rep.ok || s.local) return rep;
  for (const auto& w : windows(s)) {
    if (!w.kind) return detail::scheme_fail("FS2", w.column, "window at entry " + std::to_string(w.entry) + " is no block");
    bool at_end = w.column + 3 == s.gamma() - 1;
    if (is_normal(w.kind->kind) == at_end)
      return detail::scheme_fail("FS2", w.column, kind_name(w.kind->kind) + (at_end ? " inside the coupled end" : " away from the end"));
  }
  return rep;
}

// Block sequence of the windows rooted in column `col`, in entry order.
inline std::vector<BlockKind> column_blocks(const Scheme& s, int col) {
  std::vector<BlockKind> out;
  for (int i = 0; i < s.length(col); ++i) {
    auto c = classify(window_words(s, col, i, 4));
    if (!c) throw ValidationError("window at column " + std::to_string(col) + " is no block");
    out.push_back(c->kind);
  }
  return out;
}

}  // namespace fscheme
