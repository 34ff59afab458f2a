#pragma once

// Loader and checker for golden/wheel_attach_cases.txt, shared by the unit
// tests and the acceptance binary.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fscheme/fscheme.hpp"

namespace fixtures {

#ifndef FSCHEME_SOURCE_DIR
#define FSCHEME_SOURCE_DIR "."
#endif

inline std::string source(const std::string& rel) { return std::string(FSCHEME_SOURCE_DIR) + "/" + rel; }

inline std::string read(const std::string& rel) {
  std::ifstream in(source(rel));
  if (!in) throw fscheme::InvalidParameter("cannot read " + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct WheelCase {
  std::string id;
  std::string seed;
  fscheme::WheelOp op;
  int root = 0;
  bool same = false;
  std::map<fscheme::Color, fscheme::BlockKind> kinds;
  std::map<fscheme::Color, std::set<fscheme::Word>> words;
};

inline std::vector<WheelCase> load_wheel_cases(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fscheme::InvalidParameter("cannot read " + path);
  std::vector<WheelCase> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    WheelCase c;
    ls >> c.id >> c.seed >> c.op.n >> c.op.k >> c.op.at >> c.root;
    for (std::string t; ls >> t;) {
      if (t == "same") {
        c.same = true;
      } else if (t.size() > 2 && t[1] == ':') {
        c.kinds[fscheme::char_color(t[0])] = fscheme::parse_kind(t.substr(2));
      } else if (t.size() > 2 && t[1] == '=') {
        std::istringstream ws(t.substr(2));
        for (std::string w; std::getline(ws, w, ',');) c.words[fscheme::char_color(t[0])].insert(w);
      } else {
        throw fscheme::InvalidParameter(c.id + ": bad expectation '" + t + "'");
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline fscheme::Built seed_of(const std::string& s) {
  if (s == "T") return fscheme::seed_triangle();
  return fscheme::seed_wheel(std::stoi(s.substr(1)));
}

// Empty string when the case holds, otherwise what went wrong.
inline std::string check(const WheelCase& c) {
  using namespace fscheme;
  const Built before = seed_of(c.seed);
  const Built after = attach_wheel(before, c.op);
  if (c.same) return canonical_equal(after.s, before.s) ? "" : "scheme changed";
  const int col = c.root - 1;
  const int width = std::min(4, after.s.gamma() - col);
  int seen = 0;
  for (int i = 0; i < after.s.length(col); ++i) {
    const ColorSet cell = after.s.columns[col].entries[i].colors;
    if (cell.size() != 1) return "root cell " + cell.str() + " is not a single color";
    const Color r = cell.colors().front();
    auto words = window_words(after.s, col, i, width);
    if (auto k = c.kinds.find(r); k != c.kinds.end()) {
      ++seen;
      if (width != 4) return "window at root " + std::to_string(c.root) + " is only " + std::to_string(width) + " wide";
      auto cl = classify(words);
      if (!cl || cl->kind != k->second || cl->perm != kIdentity)
        return "root color " + std::to_string(r) + ": expected " + kind_name(k->second) + ", got " +
               (cl ? kind_name(cl->kind) + (cl->perm == kIdentity ? "" : " renamed") : "no block");
    } else if (auto w = c.words.find(r); w != c.words.end()) {
      ++seen;
      if (words != w->second) return "root color " + std::to_string(r) + ": window words differ";
    }
  }
  return seen ? "" : "no expected root color occurs";
}

}  // namespace fixtures
