// Command-line front end: build, print and verify schemes, regenerate the
// block tables and run the randomized census.
//
// Exit codes: 0 every check passed, 1 a check failed, 2 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "fscheme/fscheme.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fscheme;

namespace {

bool structured = false;

std::string yes(bool b) { return b ? "true" : "false"; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InvalidParameter("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw InvalidParameter("cannot write " + p.string());
  out << text;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Composed {
  CompositionReport rep;
  Built left, right;
};

Composed compose(const ConstructionScript& sc, const RunOptions& opt) {
  const auto& c = *sc.compose;
  Composed out;
  out.left = run_script(load_script(sc.base_dir / c.left), opt).built;
  out.right = run_script(load_script(sc.base_dir / c.right), opt).built;
  out.rep = compose_at_cut(out.left, out.right, c.shape);
  return out;
}

json composition_json(const CompositionReport& r) {
  return {{"shape", static_cast<int>(r.shape)}, {"gamma_left", r.gamma_left}, {"gamma_right", r.gamma_right},
          {"gamma", r.gamma},  {"count_left", r.count_left}, {"count_right", r.count_right},
          {"factor", r.factor}, {"bound", r.bound}, {"floor", r.floor}, {"bound_ok", r.bound_ok},
          {"i_graph", r.i_graph}};
}

void print_composition(const CompositionReport& r) {
  std::cout << "left gamma=" << r.gamma_left << " count=" << r.count_left << '\n'
            << "right gamma=" << r.gamma_right << " count=" << r.count_right << '\n'
            << "glued gamma=" << r.gamma << " i_graph=" << yes(r.i_graph) << '\n'
            << "bound=" << r.count_left << '*' << r.count_right << '*' << r.factor << '=' << r.bound
            << " floor=" << r.floor << " bound_ok=" << yes(r.bound_ok) << '\n';
}

// ---------------------------------------------------------------- build

int cmd_build(const std::string& file, const std::string& graph_out, const std::string& scheme_out) {
  auto sc = load_script(file);
  if (sc.compose) {
    auto c = compose(sc, {});
    if (!graph_out.empty()) write_file(graph_out, dump(c.rep.g));
    if (structured) {
      emit({{"composition", composition_json(c.rep)}, {"graph", dump(c.rep.g)}});
    } else {
      print_composition(c.rep);
      std::cout << "# graph\n" << dump(c.rep.g);
    }
    return c.rep.bound_ok ? 0 : 1;
  }
  auto res = run_script(sc);
  const auto& b = res.built;
  if (!graph_out.empty()) write_file(graph_out, dump(b.g));
  if (!scheme_out.empty()) write_file(scheme_out, dump_text(b.s));
  if (structured) {
    json steps = json::array();
    for (const auto& l : res.log)
      steps.push_back({{"step", l.step}, {"op", l.op}, {"gamma", l.gamma}, {"count", l.count}, {"local", l.local}});
    emit({{"gamma", b.s.gamma()},
          {"count_guaranteed", count_guaranteed(b.s)},
          {"steps", steps},
          {"graph", dump(b.g)},
          {"scheme", to_json(b.s)}});
    return 0;
  }
  for (const auto& l : res.log)
    std::cout << "step " << l.step << ": " << l.op << "  gamma=" << l.gamma << " count=" << l.count
              << (l.local ? " local" : "") << '\n';
  std::cout << "# graph\n" << dump(b.g) << "# scheme\n" << dump_text(b.s) << pretty(b.s);
  std::cout << "gamma=" << b.s.gamma() << " count_guaranteed=" << count_guaranteed(b.s) << '\n';
  return 0;
}

// ---------------------------------------------------------------- scheme

int cmd_scheme(const std::string& file, bool raw) {
  auto sc = load_script(file);
  if (sc.compose) throw InvalidParameter("a composition has no common scheme; use build or verify");
  auto b = run_script(sc).built;
  if (structured)
    emit(to_json(b.s));
  else
    std::cout << (raw ? dump_text(b.s) : pretty(b.s));
  return 0;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(const std::string& file, bool base_triangle, int max_v) {
  auto sc = load_script(file);
  Embedding g = sc.compose ? compose(sc, {.verify = false}).rep.g : run_script(sc, {.verify = false}).built.g;
  OracleOptions opt;
  if (base_triangle) opt.norm = Normalization::BaseTriangle;
  if (max_v > 0) opt.max_vertices = max_v;
  const auto walk = sc.compose ? detail::distinct_walk(boundary_walk(g)) : boundary_walk(g);
  std::map<Word, std::uint64_t> counts;
  for (const auto& col : enumerate_colorings(g, opt)) ++counts[detail::project(col, walk)];
  const int gam = static_cast<int>(walk.size());
  const auto bound = pow2(gam - 3);
  const bool ok = counts.size() >= bound;
  if (structured) {
    json words = json::array();
    for (const auto& [w, n] : counts) words.push_back({{"word", w}, {"count", n}});
    emit({{"gamma", gam}, {"census", counts.size()}, {"bound", bound}, {"ok", ok}, {"words", words}});
  } else {
    for (const auto& [w, n] : counts) std::cout << w << ' ' << n << '\n';
    std::cout << "gamma=" << gam << " census=" << counts.size() << " bound=" << bound << " ok=" << yes(ok) << '\n';
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- tables

// Errata lines: "<overlap> <row> <col>" for printed cells known to disagree.
std::set<std::tuple<int, BlockKind, BlockKind>> load_errata(const fs::path& p) {
  std::set<std::tuple<int, BlockKind, BlockKind>> out;
  if (!fs::exists(p)) return out;
  std::istringstream is(read_file(p));
  for (std::string line; std::getline(is, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int ov;
    std::string x, y;
    if (!(ls >> ov >> x >> y)) throw InvalidParameter("bad errata line: " + line);
    out.insert({ov, parse_kind(x), parse_kind(y)});
  }
  return out;
}

int cmd_tables(int overlap, const std::string& diff_dir) {
  const Table derived = regenerate_table(overlap);
  if (diff_dir.empty()) {
    if (structured) {
      json cells = json::array();
      for (const auto& [k, v] : derived.cells)
        cells.push_back({{"row", kind_name(k.first)}, {"col", kind_name(k.second)}, {"word", v},
                         {"all", compatible_colorings(k.first, k.second, overlap)}});
      emit({{"overlap", overlap}, {"cells", cells}});
    } else {
      std::cout << dump_table(derived);
    }
    return 0;
  }
  const std::string name = "table_" + std::to_string(overlap) + "_" + std::to_string(overlap) + ".txt";
  const Table printed = parse_table(read_file(fs::path(diff_dir) / name));
  if (printed.overlap != overlap) throw InvalidParameter(name + " declares overlap " + std::to_string(printed.overlap));
  std::vector<CellDiff> diffs;
  if (overlap == 2) {
    // frozen derivation, compared verbatim
    for (const auto& [k, v] : printed.cells)
      if (derived.cells.at(k) != v) diffs.push_back({k.first, k.second, v, derived.cells.at(k)});
  } else {
    diffs = diff_table(printed);
  }
  auto errata = load_errata(fs::path(diff_dir) / "tables_errata.txt");
  int unexpected = 0, known = 0;
  json jd = json::array();
  for (const auto& d : diffs) {
    bool listed = errata.erase({overlap, d.row, d.col}) > 0;
    listed ? ++known : ++unexpected;
    jd.push_back({{"row", kind_name(d.row)}, {"col", kind_name(d.col)}, {"printed", d.printed},
                  {"derived", d.derived}, {"erratum", listed}});
    if (!structured)
      std::cout << (listed ? "erratum  " : "MISMATCH ") << '(' << kind_name(d.row) << ',' << kind_name(d.col)
                << ") printed " << d.printed << " derived " << d.derived << '\n';
  }
  int stale = 0;
  for (const auto& [ov, x, y] : errata)
    if (ov == overlap) {
      ++stale;
      if (!structured) std::cout << "STALE    (" << kind_name(x) << ',' << kind_name(y) << ") listed as erratum but agrees\n";
    }
  const bool ok = unexpected == 0 && stale == 0;
  if (structured)
    emit({{"overlap", overlap}, {"cells", printed.cells.size()}, {"diffs", jd}, {"stale_errata", stale}, {"ok", ok}});
  else
    std::cout << "overlap=" << overlap << " cells=" << printed.cells.size() << " errata=" << known
              << " mismatches=" << unexpected << " ok=" << yes(ok) << '\n';
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- verify

struct VerifyOutcome {
  bool ok = true;
  std::string failure;
  int gamma = 0;
  std::uint64_t guaranteed = 0, bound = 0;
  long long census = -1;
};

VerifyOutcome verify_built(const Embedding& g, const Scheme& s, bool oracle) {
  VerifyOutcome v;
  v.gamma = s.gamma();
  v.guaranteed = count_guaranteed(s);
  v.bound = pow2(v.gamma - 3);
  auto fail = [&](const std::string& why) {
    if (v.ok) v.failure = why;
    v.ok = false;
  };
  if (s.vertices() != boundary_walk(g)) {
    fail("scheme columns do not follow the boundary");
    return v;
  }
  // soundness first so that a bad scheme is reported by its offending word
  const auto words = enumerate_all(s);
  if (oracle) {
    OracleOptions opt;
    const auto census = boundary_census(g, opt);
    v.census = static_cast<long long>(census.size());
    for (const Word& w : words)
      if (!census.count(w)) {
        fail("word " + w + " does not extend to the interior");
        break;
      }
    if (census.size() < v.bound) fail("census below 2^(gamma-3)");
  } else {
    for (const Word& w : words)
      if (!extends(g, w)) {
        fail("word " + w + " does not extend to the interior");
        break;
      }
  }
  if (words.size() != expanded_size(s)) fail("scheme words are not pairwise distinct");
  if (auto rep = validate_structure(s); !rep.ok)
    fail(rep.clause + " violated at column " + std::to_string(rep.column) + ": " + rep.reason);
  if (v.guaranteed != v.bound) fail("count_guaranteed " + std::to_string(v.guaranteed) + " != 2^(gamma-3)");
  return v;
}

int cmd_verify(const std::string& file, bool oracle, const std::string& scheme_file) {
  auto sc = load_script(file);
  if (sc.compose) {
    auto c = compose(sc, {});
    long long census = -1;
    bool ok = c.rep.bound_ok;
    if (oracle) {
      OracleOptions opt;
      census = static_cast<long long>(census_over(c.rep.g, c.rep.boundary, opt).size());
      ok = ok && static_cast<long long>(c.rep.bound) <= census;
    }
    if (structured) {
      auto j = composition_json(c.rep);
      j["census"] = census;
      j["ok"] = ok;
      emit(j);
    } else {
      print_composition(c.rep);
      std::cout << "ok=" << yes(ok) << " gamma=" << c.rep.gamma << " census=" << census << " bound=" << c.rep.bound
                << " floor=" << c.rep.floor << '\n';
    }
    return ok ? 0 : 1;
  }
  auto b = run_script(sc, {.verify = false}).built;
  Scheme s = scheme_file.empty() ? b.s : parse_text(read_file(scheme_file));
  auto v = verify_built(b.g, s, oracle);
  if (structured) {
    json j{{"ok", v.ok}, {"gamma", v.gamma}, {"guaranteed", v.guaranteed}, {"bound", v.bound}};
    if (v.census >= 0) j["census"] = v.census;
    if (!v.ok) j["failure"] = v.failure;
    emit(j);
  } else {
    if (!v.ok) std::cout << "FAIL: " << v.failure << '\n';
    std::cout << "ok=" << yes(v.ok) << " gamma=" << v.gamma;
    if (v.census >= 0) std::cout << " census=" << v.census;
    std::cout << " guaranteed=" << v.guaranteed << " bound=" << v.bound << '\n';
  }
  return v.ok ? 0 : 1;
}

// ---------------------------------------------------------------- census

int cmd_census(std::uint64_t seed, int count, int max_v, int max_ops) {
  if (count < 1) throw InvalidParameter("--count must be at least 1");
  if (max_v < 3) throw InvalidParameter("--max-v must be at least 3");
  GeneratorConfig cfg;
  cfg.max_vertices = max_v;
  cfg.max_ops = max_ops;
  std::mt19937_64 rng(seed);
  int passed = 0;
  std::map<std::string, int> ratios;  // census / guaranteed, two decimals
  json failures = json::array();
  for (int i = 0; i < count; ++i) {
    auto sc = random_script(rng, cfg);
    std::string why;
    try {
      auto b = run_script(sc).built;
      auto v = verify_built(b.g, b.s, true);
      if (v.ok) {
        ++passed;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(v.census) / static_cast<double>(v.guaranteed));
        ++ratios[buf];
      } else {
        why = v.failure;
      }
    } catch (const Error& e) {
      why = e.what();
    }
    if (!why.empty()) {
      failures.push_back({{"index", i}, {"reason", why}, {"script", to_text(sc)}});
      if (!structured) std::cout << "FAIL #" << i << ": " << why << '\n' << to_text(sc);
    }
  }
  const bool ok = passed == count;
  if (structured) {
    emit({{"seed", seed}, {"count", count}, {"max_v", max_v}, {"passed", passed}, {"ok", ok},
          {"ratios", ratios}, {"failures", failures}});
  } else {
    std::cout << "ratio census/guaranteed:\n";
    std::vector<std::pair<double, std::string>> order;
    for (const auto& [r, n] : ratios) order.push_back({std::stod(r), r});
    std::sort(order.begin(), order.end());
    for (const auto& [_, r] : order) std::cout << "  " << std::setw(7) << r << "  " << ratios[r] << '\n';
    std::cout << "seed=" << seed << " max-v=" << max_v << " pass=" << passed << '/' << count << " ok=" << yes(ok) << '\n';
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary coloring schemes of fast-maximal planar graphs"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  std::string script, graph_out, scheme_out, scheme_file, diff_dir;
  bool raw = false, base_triangle = false, oracle = false;
  int overlap = 4, max_v = 0, count = 200, census_max_v = 14, max_ops = 6;
  std::uint64_t seed = 1;

  auto* build = app.add_subcommand("build", "Replay a construction script; print graph and scheme dumps");
  build->add_option("script", script, "Construction script")->required();
  build->add_option("--graph-out", graph_out, "Write the graph dump here");
  build->add_option("--scheme-out", scheme_out, "Write the scheme dump here");

  auto* scheme = app.add_subcommand("scheme", "Print the scheme of a script");
  scheme->add_option("script", script)->required();
  scheme->add_flag("--raw", raw, "Machine-readable dump instead of the staircase layout");

  auto* orc = app.add_subcommand("oracle", "Boundary census by exhaustive coloring");
  orc->add_option("script", script)->required();
  orc->add_flag("--base-triangle", base_triangle, "Also fix the apex of the base triangle to color 3");
  orc->add_option("--max-v", max_v, "Vertex guard (default 20 or BOUNDARY_CENSUS_MAX_V)")->check(CLI::Range(1, 64));

  auto* tables = app.add_subcommand("tables", "Derive the block tables");
  tables->add_option("--overlap", overlap, "Shared columns")->check(CLI::IsMember({2, 3, 4}));
  tables->add_option("--diff", diff_dir, "Directory with transcribed tables to compare against");

  auto* census = app.add_subcommand("census", "Verify random construction scripts");
  census->add_option("--seed", seed);
  census->add_option("--count", count);
  census->add_option("--max-v", census_max_v, "Vertex bound per script");
  census->add_option("--max-ops", max_ops, "Attachments per script");

  auto* verify = app.add_subcommand("verify", "Check soundness, distinctness and the lower bound");
  verify->add_option("script", script)->required();
  verify->add_flag("--oracle", oracle, "Compare against the exhaustive census");
  verify->add_option("--scheme-file", scheme_file, "Verify this scheme dump instead of the built one");

  CLI11_PARSE(app, argc, argv);
  structured = format == "structured";
  try {
    if (*build) return cmd_build(script, graph_out, scheme_out);
    if (*scheme) return cmd_scheme(script, raw);
    if (*orc) return cmd_oracle(script, base_triangle, max_v);
    if (*tables) return cmd_tables(overlap, diff_dir);
    if (*census) return cmd_census(seed, count, census_max_v, max_ops);
    if (*verify) return cmd_verify(script, oracle, scheme_file);
  } catch (const ScriptError& e) {
    std::cerr << "error: " << script << ": " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
