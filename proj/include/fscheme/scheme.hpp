#pragma once

// Coloring schemes: branching tables over the boundary columns.
//
// Column j holds entries (color set + parent index into column j-1). Every
// entry of the last column is a leaf, so a scheme is determined by its rows
// (root-to-leaf paths). Cells with two colors only appear in the last column.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "json.hpp"

namespace fscheme {

struct Entry {
  ColorSet colors;
  int parent = -1;
  bool operator==(const Entry&) const = default;
};

struct Column {
  VertexId vertex = 0;
  std::vector<Entry> entries;
  bool operator==(const Column&) const = default;
};

using Row = std::vector<ColorSet>;

namespace detail {
inline bool row_less(const Row& a, const Row& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].min() != b[i].min()) return a[i].min() < b[i].min();
    if (a[i].bits() != b[i].bits()) return a[i].bits() < b[i].bits();
  }
  return a.size() < b.size();
}
}  // namespace detail

class Scheme {
 public:
  std::vector<Column> columns;
  // Set for schemes produced after vertex/arc attachments, where doubling and
  // block shape are not required.
  bool local = false;

  int gamma() const { return static_cast<int>(columns.size()); }
  int length(int col) const { return static_cast<int>(columns.at(col).entries.size()); }
  std::vector<VertexId> vertices() const {
    std::vector<VertexId> v;
    for (const auto& c : columns) v.push_back(c.vertex);
    return v;
  }

  // Builds the trie of `rows`; siblings end up ordered by smallest color.
  static Scheme from_rows(const std::vector<VertexId>& boundary, std::vector<Row> rows, bool local = false) {
    Scheme s;
    s.local = local;
    for (VertexId v : boundary) s.columns.push_back(Column{v, {}});
    for (const auto& r : rows)
      if (r.size() != boundary.size()) throw InvalidParameter("scheme row length differs from column count");
    std::sort(rows.begin(), rows.end(), detail::row_less);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    const size_t n = boundary.size();
    std::vector<std::map<std::pair<int, unsigned>, int>> index(n);
    for (const auto& r : rows) {
      int parent = -1;
      for (size_t j = 0; j < n; ++j) {
        auto key = std::make_pair(parent, r[j].bits());
        auto& idx = index[j];
        auto it = idx.find(key);
        if (it == idx.end() || j + 1 == n) {
          s.columns[j].entries.push_back(Entry{r[j], parent});
          int id = static_cast<int>(s.columns[j].entries.size()) - 1;
          idx[key] = id;
          parent = id;
        } else {
          parent = it->second;
        }
      }
    }
    return s;
  }

  std::vector<Row> rows() const {
    std::vector<Row> out;
    if (columns.empty()) return out;
    const int n = gamma();
    for (int leaf = 0; leaf < length(n - 1); ++leaf) {
      Row r(n);
      int idx = leaf;
      for (int j = n - 1; j >= 0; --j) {
        const Entry& e = columns[j].entries.at(idx);
        r[j] = e.colors;
        idx = e.parent;
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  bool operator==(const Scheme&) const = default;
};

// Expands a row into words (two-color cells give two words).
inline std::vector<Word> expand(const Row& r) {
  std::vector<Word> out{Word{}};
  for (const ColorSet& cell : r) {
    std::vector<Word> next;
    for (const Word& w : out)
      for (Color c : cell.colors()) next.push_back(w + color_char(c));
    out = std::move(next);
  }
  return out;
}

inline std::set<Word> enumerate_all(const Scheme& s) {
  std::set<Word> out;
  for (const auto& r : s.rows())
    for (auto& w : expand(r)) out.insert(std::move(w));
  return out;
}

// Number of words counted with multiplicity; equals enumerate_all().size() iff distinct.
inline std::size_t expanded_size(const Scheme& s) {
  std::size_t n = 0;
  for (const auto& r : s.rows()) n += expand(r).size();
  return n;
}

inline std::uint64_t count_guaranteed(const Scheme& s) {
  return s.columns.empty() ? 0 : static_cast<std::uint64_t>(s.length(s.gamma() - 1));
}

// Rows of a wheel scheme: every proper coloring of the rim over {1,2,4}
// with E1=1, E2=2; the last cell collects the admissible final colors.
inline Scheme scheme_for_wheel(int n, const std::vector<VertexId>& boundary = {}) {
  if (n < 4) throw InvalidParameter("scheme_for_wheel needs n >= 4, got " + std::to_string(n));
  std::vector<VertexId> cols = boundary;
  if (cols.empty()) {
    cols = {0, 1};
    for (int i = 3; i <= n; ++i) cols.push_back(i);
  }
  if (static_cast<int>(cols.size()) != n) throw InvalidParameter("boundary size differs from wheel rim");
  std::vector<Row> rows;
  Row cur{ColorSet::of(1), ColorSet::of(2)};
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n - 1) {
      ColorSet last = kPalette - cur.back() - ColorSet::of(1);
      cur.push_back(last);
      rows.push_back(cur);
      cur.pop_back();
      return;
    }
    for (Color c : (kPalette - cur.back()).colors()) {
      cur.push_back(ColorSet::of(c));
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return Scheme::from_rows(cols, rows);
}

// Degenerate scheme of a triangle: one row 1, 2, {3,4}.
inline Scheme scheme_for_triangle(const std::vector<VertexId>& boundary = {0, 1, 2}) {
  return Scheme::from_rows(boundary, {Row{ColorSet::of(1), ColorSet::of(2), ColorSet(0b1100)}});
}

// Sub-table hanging off entry `idx` of column `col`.
inline Scheme subscheme(const Scheme& s, int col, int idx) {
  if (col < 0 || col >= s.gamma() || idx < 0 || idx >= s.length(col))
    throw InvalidParameter("subscheme: no entry " + std::to_string(idx) + " in column " + std::to_string(col));
  const int n = s.gamma();
  const auto all = s.rows();
  std::vector<Row> rows;
  for (int leaf = 0; leaf < s.length(n - 1); ++leaf) {
    int at = leaf;
    for (int j = n - 1; j > col; --j) at = s.columns[j].entries[at].parent;
    if (at != idx) continue;
    rows.emplace_back(all[leaf].begin() + col, all[leaf].end());
  }
  std::vector<VertexId> verts;
  for (int j = col; j < n; ++j) verts.push_back(s.columns[j].vertex);
  return Scheme::from_rows(verts, rows, s.local);
}

// Words of the `width` columns starting at entry `idx` of column `col`.
inline std::set<Word> window_words(const Scheme& s, int col, int idx, int width) {
  Scheme sub = subscheme(s, col, idx);
  std::set<Word> out;
  for (const Word& w : enumerate_all(sub)) out.insert(w.substr(0, width));
  return out;
}

inline std::vector<Row> permuted_rows(const Scheme& s, const Perm& p) {
  auto rows = s.rows();
  for (auto& r : rows)
    for (auto& c : r) c = apply(p, c);
  std::sort(rows.begin(), rows.end(), detail::row_less);
  return rows;
}

inline std::optional<Perm> equal_under(const Scheme& a, const Scheme& b, const std::vector<Perm>& perms) {
  if (a.gamma() != b.gamma()) return std::nullopt;
  auto target = permuted_rows(b, kIdentity);
  for (const Perm& p : perms)
    if (permuted_rows(a, p) == target) return p;
  return std::nullopt;
}

// Equality after a permutation fixing colors 1 and 2, ignoring sibling order.
inline bool canonical_equal(const Scheme& a, const Scheme& b) {
  return equal_under(a, b, base_fixing_permutations()).has_value();
}

// Full 4-color permutation equivalence; returns the witness applied to `a`.
inline std::optional<Perm> equal_up_to_permutation(const Scheme& a, const Scheme& b) {
  return equal_under(a, b, all_permutations());
}

// ---------------------------------------------------------------- shape

struct SchemeReport {
  bool ok = true;
  std::string clause;  // FS1 / FS2 / FS3 / proper / distinct
  int column = -1;
  std::string reason;
};

namespace detail {
inline SchemeReport scheme_fail(std::string clause, int col, std::string why) {
  return SchemeReport{false, std::move(clause), col, std::move(why)};
}
}  // namespace detail

// Column lengths, coupling, properness along the boundary cycle, FS3
// extraction and distinctness. Block shape is checked in blocks.hpp.
inline SchemeReport validate_shape(const Scheme& s) {
  const int n = s.gamma();
  if (n < 3) return detail::scheme_fail("FS1", -1, "fewer than 3 columns");
  for (int j = 0; j < n; ++j) {
    if (s.columns[j].entries.empty()) return detail::scheme_fail("FS1", j, "empty column");
    for (const Entry& e : s.columns[j].entries) {
      if (e.colors.empty() || e.colors.size() > 2) return detail::scheme_fail("FS1", j, "cell with 0 or >2 colors");
      if (e.colors.size() == 2 && j != n - 1) return detail::scheme_fail("FS1", j, "two-color cell outside the coupled column");
      if (j == 0 ? e.parent != -1 : (e.parent < 0 || e.parent >= s.length(j - 1)))
        return detail::scheme_fail("FS3", j, "dangling parent index");
      if (j > 0 && !(e.colors & s.columns[j - 1].entries[e.parent].colors).empty())
        return detail::scheme_fail("proper", j, "entry shares a color with its parent");
    }
  }
  for (int j = 0; j + 1 < n; ++j) {
    std::vector<int> kids(s.length(j), 0);
    for (const Entry& e : s.columns[j + 1].entries) ++kids[e.parent];
    for (int k : kids)
      if (k == 0) return detail::scheme_fail("FS3", j, "entry without continuation");
  }
  if (s.columns[0].entries.size() != 1 || s.columns[0].entries[0].colors != ColorSet::of(1))
    return detail::scheme_fail("FS1", 0, "base column must be the single entry 1");
  if (s.columns[1].entries.size() != 1 || s.columns[1].entries[0].colors != ColorSet::of(2))
    return detail::scheme_fail("FS1", 1, "base column must be the single entry 2");
  for (const Entry& e : s.columns[n - 1].entries)
    if (e.colors.contains(1)) return detail::scheme_fail("proper", n - 1, "last column meets E1's color");
  if (!s.local) {
    if (n == 3) {
      if (s.length(2) != 1) return detail::scheme_fail("FS1", 2, "third column must have length 1");
    } else {
      for (int j = 2; j <= n - 2; ++j)
        if (s.length(j) != static_cast<int>(pow2(j - 1)))
          return detail::scheme_fail("FS1", j, "length " + std::to_string(s.length(j)) + ", expected " +
                                                   std::to_string(pow2(j - 1)));
      if (s.length(n - 1) != s.length(n - 2))
        return detail::scheme_fail("FS1", n - 1, "coupled columns differ in length");
    }
  }
  if (expanded_size(s) != enumerate_all(s).size()) return detail::scheme_fail("distinct", n - 1, "duplicate words");
  if (count_guaranteed(s) != pow2(n - 3))
    return detail::scheme_fail("FS1", n - 1, "count " + std::to_string(count_guaranteed(s)) + " != 2^(gamma-3)");
  return {};
}

// ---------------------------------------------------------------- text formats

inline std::string cell_str(ColorSet c) { return c.str(); }

inline ColorSet parse_cell(const std::string& t) {
  ColorSet c;
  for (char ch : t) {
    if (ch == ',') continue;
    if (ch < '1' || ch > '4') throw InvalidParameter("bad color '" + std::string(1, ch) + "' in cell " + t);
    c.insert(char_color(ch));
  }
  if (c.empty()) throw InvalidParameter("empty cell");
  return c;
}

// `col E4 | 1^0 4^0` lines; the parent index follows '^'.
inline std::string dump_text(const Scheme& s) {
  std::ostringstream os;
  os << "gamma " << s.gamma() << (s.local ? " local" : "") << '\n';
  for (const auto& c : s.columns) {
    os << "col " << label(c.vertex) << " |";
    for (const auto& e : c.entries) {
      os << ' ' << cell_str(e.colors);
      if (e.parent >= 0) os << '^' << e.parent;
    }
    os << '\n';
  }
  return os.str();
}

inline Scheme parse_text(const std::string& text) {
  Scheme s;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "gamma") {
      int g;
      std::string flag;
      ls >> g >> flag;
      s.local = flag == "local";
    } else if (head == "col") {
      std::string lab, bar;
      ls >> lab >> bar;
      if (lab.size() < 2 || lab[0] != 'E' || bar != "|") throw InvalidParameter("scheme dump: bad column line: " + line);
      Column col;
      col.vertex = std::stoi(lab.substr(1)) - 1;
      std::string tok;
      while (ls >> tok) {
        auto caret = tok.find('^');
        Entry e;
        e.colors = parse_cell(tok.substr(0, caret));
        e.parent = caret == std::string::npos ? -1 : std::stoi(tok.substr(caret + 1));
        col.entries.push_back(e);
      }
      s.columns.push_back(std::move(col));
    } else {
      throw InvalidParameter("scheme dump: unexpected line: " + line);
    }
  }
  return s;
}

inline nlohmann::json to_json(const Scheme& s) {
  nlohmann::json j;
  j["gamma"] = s.gamma();
  j["local"] = s.local;
  j["count_guaranteed"] = count_guaranteed(s);
  for (const auto& c : s.columns) {
    nlohmann::json col;
    col["vertex"] = c.vertex;
    col["label"] = label(c.vertex);
    for (const auto& e : c.entries) col["entries"].push_back({{"colors", e.colors.colors()}, {"parent", e.parent}});
    j["columns"].push_back(col);
  }
  return j;
}

// Staircase layout: one line per leaf with blank separators; an entry is
// printed on the middle line of the leaves below it.
inline std::string pretty(const Scheme& s) {
  const int n = s.gamma();
  if (n == 0) return {};
  const int leaves = s.length(n - 1);
  const int lines = 2 * leaves - 1;
  const int width = 6;
  std::vector<std::string> out(lines, std::string(static_cast<size_t>(width * n), ' '));
  // leaf span of every entry
  std::vector<std::vector<std::pair<int, int>>> span(n);
  for (int j = 0; j < n; ++j) span[j].assign(s.length(j), {leaves, -1});
  for (int leaf = 0; leaf < leaves; ++leaf) {
    int idx = leaf;
    for (int j = n - 1; j >= 0; --j) {
      auto& sp = span[j][idx];
      sp.first = std::min(sp.first, leaf);
      sp.second = std::max(sp.second, leaf);
      idx = s.columns[j].entries[idx].parent;
    }
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < s.length(j); ++i) {
      int line = span[j][i].first + span[j][i].second;
      std::string t = cell_str(s.columns[j].entries[i].colors);
      out[line].replace(static_cast<size_t>(j * width), t.size(), t);
    }
  std::string head;
  for (const auto& c : s.columns) {
    std::string l = label(c.vertex);
    head += l + std::string(static_cast<size_t>(std::max(1, width - static_cast<int>(l.size()))), ' ');
  }
  std::ostringstream os;
  auto rtrim = [](std::string x) {
    while (!x.empty() && x.back() == ' ') x.pop_back();
    return x;
  };
  os << rtrim(head) << '\n';
  for (auto& l : out) os << rtrim(l) << '\n';
  return os.str();
}

}  // namespace fscheme
