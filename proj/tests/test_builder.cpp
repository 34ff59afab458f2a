#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace fscheme;

TEST_CASE("script parsing") {
  auto sc = parse_script("# comment\nseed wheel 6\nattach wheel n=5 k=3 at=2  # trailing\nattach edge at=3\n"
                         "attach vertex k=3 at=4\nattach bogen len=2 at=2\n");
  CHECK(sc.seed.n == 6);
  REQUIRE(sc.ops.size() == 4);
  CHECK(std::get<WheelOp>(sc.ops[0]).m() == 4);
  CHECK(parse_script(to_text(sc)).ops.size() == 4);
  CHECK(parse_script("seed triangle\n").seed.triangle);

  CHECK_THROWS_AS(parse_script(""), InvalidParameter);
  CHECK_THROWS_AS(parse_script("attach edge at=2\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("seed wheel 5\nseed wheel 6\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("seed wheel 3\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("seed wheel 5\nattach edge\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("seed wheel 5\nattach edge at=x\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("seed wheel 5\nattach edge at=2 k=3\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("seed wheel 5\nattach spiral at=2\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("seed wheel 5\ncompose cut shared=1 left=a right=b\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_script("compose cut shared=3 left=a right=b\n"), InvalidParameter);
}

TEST_CASE("script text round-trips") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto sc = random_script(rng);
    CHECK(to_text(parse_script(to_text(sc))) == to_text(sc));
  }
}

TEST_CASE("replay errors carry the step index") {
  auto check_step = [](const std::string& text, int step) {
    try {
      run_script(parse_script(text));
      FAIL("no error for " << text);
    } catch (const ScriptError& e) {
      CHECK(e.step == step);
    }
  };
  check_step("seed wheel 5\nattach edge at=3\nattach wheel n=5 k=4 at=1\n", 2);   // covers E2
  check_step("seed wheel 5\nattach edge at=1\n", 1);                              // covers E2
  check_step("seed wheel 5\nattach vertex k=3 at=3\nattach edge at=3\n", 2);      // covers a pinned vertex
  check_step("seed wheel 4\nattach wheel n=3 k=5 at=2\n", 1);                      // k > gamma
}

TEST_CASE("a wheel and two chords close to a single row") {
  auto res = run_script(load_script(fixtures::source("scripts/closing/wheel_and_chords.script")));
  std::vector<int> gammas;
  for (const auto& l : res.log) gammas.push_back(l.gamma);
  CHECK(gammas == std::vector<int>{5, 5, 4, 3});
  const auto& s = res.built.s;
  CHECK(enumerate_all(s) == std::set<Word>{"124"});
  CHECK(s.vertices() == std::vector<VertexId>{0, 1, 7});
}

TEST_CASE("chords collapse wheel schemes") {
  auto r6 = seed_wheel(6);
  CHECK(canonical_equal(attach_edge(r6, {3}).s, scheme_for_wheel(5)));
  CHECK(canonical_equal(attach_edge(attach_edge(r6, {4}), {2}).s, scheme_for_wheel(4)));
  auto r5 = seed_wheel(5);
  auto closed = attach_edge(attach_edge(r5, {3}), {2}).s;
  CHECK(closed.gamma() == 3);
  CHECK(enumerate_all(closed).size() == 1);
}

TEST_CASE("wheel attachment cases") {
  for (const auto& c : fixtures::load_wheel_cases(fixtures::source("golden/wheel_attach_cases.txt"))) {
    CAPTURE(c.id);
    CHECK(fixtures::check(c) == "");
  }
}

TEST_CASE("wheel attachments keep all proper rim colorings") {
  // a wheel-only construction keeps every {1,2,4} coloring of the new boundary
  auto b = attach_wheel(seed_wheel(6), {5, 3, 3});
  CHECK(b.s.gamma() == 7);
  auto all = enumerate_all(b.s);
  CHECK(all.size() == enumerate_all(scheme_for_wheel(7)).size());
  for (const Word& w : all)
    for (char ch : w) CHECK(ch != '3');
}

TEST_CASE("local attachments pin their vertices") {
  auto b = attach_vertex(seed_wheel(6), {3, 3});
  CHECK(b.s.local);
  CHECK_FALSE(b.pool.empty());
  CHECK(b.s.gamma() == 6);
  CHECK(count_guaranteed(b.s) == 8);
  CHECK(std::count(b.pinned.begin(), b.pinned.end(), 1) == 1);
  auto a = attach_bogen(seed_wheel(5), {2, 2});
  CHECK(a.s.gamma() == 6);
  CHECK(std::count(a.pinned.begin(), a.pinned.end(), 1) == 2);
  CHECK_THROWS_AS(attach_edge(b, {3}), InvalidAttachment);
}

TEST_CASE("operation arithmetic") {
  CHECK(gamma_delta(WheelOp{6, 4, 2}) == 0);
  CHECK(gamma_delta(WheelOp{5, 3, 2}) == 1);
  CHECK(gamma_delta(EdgeOp{2}) == -1);
  CHECK(gamma_delta(VertexOp{4, 2}) == -1);
  CHECK(gamma_delta(BogenOp{3, 2}) == 2);
  CHECK(is_local_op(VertexOp{3, 2}));
  CHECK_FALSE(is_local_op(WheelOp{5, 3, 2}));
}

TEST_CASE("random scripts verify step by step") {
  std::mt19937_64 rng(1);
  int locals = 0;
  for (int i = 0; i < 300; ++i) {
    auto sc = random_script(rng);
    CAPTURE(to_text(sc));
    RunResult res;
    REQUIRE_NOTHROW(res = run_script(sc));
    for (size_t j = 1; j < res.log.size(); ++j) {
      CHECK(res.log[j].gamma == res.log[j - 1].gamma + gamma_delta(sc.ops[j - 1]));
      CHECK(res.log[j].count == pow2(res.log[j].gamma - 3));
      CHECK(res.log[j].oracle_checked);
    }
    locals += res.built.s.local;
  }
  CHECK(locals > 0);
}

TEST_CASE("generator is deterministic and respects the vertex bound") {
  GeneratorConfig cfg;
  cfg.max_vertices = 10;
  std::mt19937_64 a(99), b(99);
  for (int i = 0; i < 50; ++i) {
    auto x = random_script(a, cfg), y = random_script(b, cfg);
    CHECK(to_text(x) == to_text(y));
    CHECK(run_script(x, {.verify = false}).built.g.size() <= 10);
  }
  cfg.max_vertices = 4;
  for (int i = 0; i < 20; ++i) CHECK(run_script(random_script(a, cfg), {.verify = false}).built.g.size() <= 4);
}
