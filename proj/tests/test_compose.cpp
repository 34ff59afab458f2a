#include <doctest.h>

#include "fixtures.hpp"

using namespace fscheme;

namespace {
std::uint64_t census(const CompositionReport& r) { return census_over(r.g, r.boundary).size(); }
}  // namespace

TEST_CASE("factors") {
  CHECK(composition_factor(CompositionShape::CutVertex) == 6);
  CHECK(composition_factor(CompositionShape::SharedEdge) == 2);
  CHECK(composition_factor(CompositionShape::BridgeTriangle) == 12);
  CHECK(composition_factor(CompositionShape::BridgeTwoTriangles) == 8);
}

TEST_CASE("boundary arithmetic of the glued graphs") {
  for (int a = 4; a <= 6; ++a)
    for (int b = 4; b <= 6; ++b) {
      auto l = seed_wheel(a), r = seed_wheel(b);
      CHECK(compose_at_cut(l, r, CompositionShape::CutVertex).gamma == a + b - 1);
      CHECK(compose_at_cut(l, r, CompositionShape::SharedEdge).gamma == a + b - 2);
      CHECK(compose_at_cut(l, r, CompositionShape::BridgeTriangle).gamma == a + b);
      CHECK(compose_at_cut(l, r, CompositionShape::BridgeTwoTriangles).gamma == a + b);
    }
}

TEST_CASE("bounds sit between the floor and the census") {
  const CompositionShape shapes[] = {CompositionShape::CutVertex, CompositionShape::SharedEdge,
                                     CompositionShape::BridgeTriangle, CompositionShape::BridgeTwoTriangles};
  const Built parts[] = {seed_wheel(4), seed_wheel(5), seed_triangle(), attach_edge(seed_wheel(6), {3})};
  for (auto shape : shapes)
    for (const auto& l : parts)
      for (const auto& r : parts) {
        auto rep = compose_at_cut(l, r, shape);
        if (rep.g.size() > 16) continue;
        CAPTURE(static_cast<int>(shape));
        CHECK(rep.bound_ok);
        CHECK(rep.bound >= rep.floor);
        CHECK(rep.bound <= census(rep));
      }
}

TEST_CASE("composition scripts") {
  for (const char* name : {"cut_vertex", "shared_edge", "bridge_triangle", "bridge_two_triangles"}) {
    auto sc = load_script(fixtures::source(std::string("scripts/compose/") + name + ".script"));
    REQUIRE(sc.compose);
    CHECK(parse_script(to_text(sc)).compose->shape == sc.compose->shape);
    CHECK_THROWS_AS(run_script(sc), InvalidParameter);
  }
}
