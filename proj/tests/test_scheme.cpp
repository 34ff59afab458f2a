#include <doctest.h>

#include "fixtures.hpp"

using namespace fscheme;

TEST_CASE("FS(R5) words") {
  auto s = scheme_for_wheel(5);
  CHECK(enumerate_all(s) == std::set<Word>{"12124", "12142", "12424", "12412", "12414"});
  CHECK(count_guaranteed(s) == 4);
  CHECK(validate_shape(s).ok);
}

TEST_CASE("column lengths double up to the coupled end") {
  auto lengths = [](const Scheme& s) {
    std::vector<int> v;
    for (int j = 0; j < s.gamma(); ++j) v.push_back(s.length(j));
    return v;
  };
  CHECK(lengths(scheme_for_wheel(6)) == std::vector<int>{1, 1, 2, 4, 8, 8});
  CHECK(lengths(scheme_for_wheel(7)) == std::vector<int>{1, 1, 2, 4, 8, 16, 16});
  CHECK(lengths(scheme_for_triangle()) == std::vector<int>{1, 1, 1});
}

TEST_CASE("wheel schemes satisfy the shape rules") {
  for (int n = 4; n <= 12; ++n) {
    auto s = scheme_for_wheel(n);
    auto rep = validate_shape(s);
    CHECK_MESSAGE(rep.ok, n << ": " << rep.reason);
    CHECK(count_guaranteed(s) == pow2(n - 3));
    CHECK(expanded_size(s) == enumerate_all(s).size());
  }
}

TEST_CASE("golden wheel schemes") {
  for (int n : {5, 6, 7}) {
    const std::string base = "golden/fs_r" + std::to_string(n);
    CHECK(dump_text(scheme_for_wheel(n)) == fixtures::read(base + ".scheme"));
    CHECK(pretty(scheme_for_wheel(n)) == fixtures::read(base + ".txt"));
  }
}

TEST_CASE("text dump round-trips") {
  for (int n = 4; n <= 9; ++n) {
    auto s = scheme_for_wheel(n);
    CHECK(parse_text(dump_text(s)) == s);
  }
  auto t = scheme_for_triangle();
  CHECK(parse_text(dump_text(t)) == t);
  CHECK_THROWS_AS(parse_text("gamma 3\nrow 1 2 4\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_text("col E1 | 5\n"), InvalidParameter);
}

TEST_CASE("json dump mirrors the columns") {
  auto j = to_json(scheme_for_wheel(6));
  CHECK(j["gamma"] == 6);
  CHECK(j["count_guaranteed"] == 8);
  CHECK(j["columns"].size() == 6);
  CHECK(j["columns"][5]["entries"].size() == 8);
  CHECK(j["columns"][2]["label"] == "E4");
}

TEST_CASE("staircase centers each entry over its leaves") {
  auto lines = [](const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
  };
  auto p = lines(pretty(scheme_for_wheel(5)));
  REQUIRE(p.size() == 1 + 7);
  CHECK(p[0] == "E1    E2    E4    E5    E6");
  CHECK(p[4].rfind("1     2", 0) == 0);  // base columns on the middle line
}

TEST_CASE("triangle scheme") {
  auto s = scheme_for_triangle();
  CHECK(enumerate_all(s) == std::set<Word>{"123", "124"});
  CHECK(count_guaranteed(s) == 1);
  CHECK(validate_shape(s).ok);
}

namespace {
Scheme with_rows(const Scheme& s, std::vector<Row> rows) { return Scheme::from_rows(s.vertices(), std::move(rows)); }
}  // namespace

TEST_CASE("shape violations are named") {
  auto s = scheme_for_wheel(6);
  auto rows = s.rows();

  SUBCASE("two colors before the last column") {
    auto r = rows;
    r[0][3] = ColorSet(0b1010);
    CHECK(validate_shape(with_rows(s, r)).clause == "FS1");
  }
  SUBCASE("last column touching E1") {
    auto r = rows;
    r[0][5] = ColorSet::of(1);
    CHECK(validate_shape(with_rows(s, r)).clause == "proper");
  }
  SUBCASE("base column") {
    auto r = rows;
    for (auto& row : r) row[1] = ColorSet::of(3);
    CHECK(validate_shape(with_rows(s, r)).clause == "FS1");
  }
  SUBCASE("missing row") {
    auto r = rows;
    r.pop_back();
    CHECK_FALSE(validate_shape(with_rows(s, r)).ok);
  }
  SUBCASE("dangling parent") {
    auto t = s;
    t.columns[3].entries[0].parent = 7;
    CHECK(validate_shape(t).clause == "FS3");
  }
}

TEST_CASE("sub-tables inherit the shape") {
  auto s = scheme_for_wheel(8);
  for (int col = 2; col < s.gamma() - 2; ++col)
    for (int i = 0; i < s.length(col); ++i) {
      auto sub = subscheme(s, col, i);
      CHECK(sub.gamma() == s.gamma() - col);
      CHECK(sub.length(0) == 1);
      CHECK(sub.length(sub.gamma() - 1) == static_cast<int>(pow2(sub.gamma() - 2)));
    }
  CHECK_THROWS_AS(subscheme(s, 3, 99), InvalidParameter);
}

TEST_CASE("equality up to renaming") {
  auto s = scheme_for_wheel(6);
  CHECK(canonical_equal(s, s));
  const Perm swap34{0, 1, 2, 4, 3};
  auto t = Scheme::from_rows(s.vertices(), permuted_rows(s, swap34));
  CHECK(canonical_equal(t, s));
  const Perm swap24{0, 1, 4, 3, 2};
  auto u = Scheme::from_rows(s.vertices(), permuted_rows(s, swap24));
  CHECK_FALSE(canonical_equal(u, s));
  auto w = equal_up_to_permutation(u, s);
  REQUIRE(w);
  CHECK(Scheme::from_rows(s.vertices(), permuted_rows(u, *w)) == s);
  CHECK_FALSE(canonical_equal(scheme_for_wheel(5), s));
}

TEST_CASE("scheme words start 1 2 and are proper on the rim") {
  for (int n = 4; n <= 10; ++n)
    for (const Word& w : enumerate_all(scheme_for_wheel(n))) {
      CHECK(w.substr(0, 2) == "12");
      for (size_t i = 0; i < w.size(); ++i) CHECK(w[i] != w[(i + 1) % w.size()]);
    }
}
