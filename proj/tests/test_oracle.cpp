#include <doctest.h>

#include <cstdlib>
#include <random>

#include "fixtures.hpp"

using namespace fscheme;

TEST_CASE("R5 census") {
  auto g = build_wheel(5);
  auto c = boundary_census(g);
  CHECK(c.size() == 10);
  for (const Word& w : enumerate_all(scheme_for_wheel(5))) CHECK(c.count(w));
  CHECK(extends(g, "12124"));
  CHECK_FALSE(extends(g, "12121"));  // E6 next to E1
  CHECK_FALSE(extends(g, "12342"));  // hub sees all four colors
  CHECK(extends(build_triangle(), "124"));
}

TEST_CASE("extends checks the word length") {
  CHECK_THROWS_AS(extends(build_wheel(5), "1212"), InvalidParameter);
}

TEST_CASE("triangle has two normalized colorings") {
  CHECK(enumerate_colorings(build_triangle()).size() == 2);
  OracleOptions o;
  o.norm = Normalization::BaseTriangle;
  CHECK(enumerate_colorings(build_triangle(), o).size() == 1);
}

TEST_CASE("fixing the base triangle") {
  Embedding g = build_triangle();
  attach_star(g, {1, 2});
  attach_star(g, {3, 2});
  OracleOptions o;
  o.norm = Normalization::BaseTriangle;
  CHECK(boundary_census(g, o) == std::set<Word>{"12123", "12143", "12413", "12423"});
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(boundary_census(build_wheel(25)), SizeGuardExceeded);
  OracleOptions o;
  o.max_vertices = 8;
  CHECK_THROWS_AS(boundary_census(build_wheel(8), o), SizeGuardExceeded);
  CHECK(extends(build_wheel(25), "1212121212121212121212124"));  // extends has no guard
}

TEST_CASE("guard override from the environment") {
  setenv("BOUNDARY_CENSUS_MAX_V", "8", 1);
  OracleOptions o;
  CHECK(o.max_vertices == 8);
  setenv("BOUNDARY_CENSUS_MAX_V", "999", 1);
  CHECK(OracleOptions{}.max_vertices == 20);
  unsetenv("BOUNDARY_CENSUS_MAX_V");
}

TEST_CASE("lower bound on wheels") {
  for (int n = 4; n <= 12; ++n) {
    auto r = check_lower_bound(build_wheel(n));
    CHECK(r.ok);
    CHECK(r.bound == pow2(n - 3));
  }
}

TEST_CASE("census does not depend on the enumeration order") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    auto g = run_script(random_script(rng), {.verify = false}).built.g;
    auto b = boundary_walk(g);
    auto ref = boundary_census(g);
    std::vector<size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<VertexId> verts;
    for (size_t p : perm) verts.push_back(b[p]);
    std::set<Word> back;
    for (const Word& w : census_over(g, verts)) {
      Word u(b.size(), '0');
      for (size_t j = 0; j < perm.size(); ++j) u[perm[j]] = w[j];
      back.insert(u);
    }
    CHECK(back == ref);
  }
}

TEST_CASE("maximal graphs are self-consistent") {
  std::mt19937_64 rng(8);
  int seen = 0;
  for (int i = 0; i < 400 && seen < 20; ++i) {
    auto g = run_script(random_script(rng), {.verify = false}).built.g;
    if (gamma(g) != 3) continue;
    ++seen;
    auto c = boundary_census(g);
    CHECK(c.size() >= 1);
    for (const Word& w : c) CHECK(extends(g, w));
  }
  CHECK(seen > 0);
}

TEST_CASE("census bounds hold on random graphs") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    auto b = run_script(random_script(rng), {.verify = false}).built;
    auto c = boundary_census(b.g);
    CHECK(c.size() >= pow2(gamma(b.g) - 3));
    for (const Word& w : enumerate_all(b.s)) CHECK(c.count(w));
  }
}
