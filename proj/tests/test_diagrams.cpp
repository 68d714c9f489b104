#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meu/diagrams.hpp"
#include "meu/petring.hpp"
#include "meu/rootsys.hpp"

using namespace meu;

namespace {

// All length-len compositions with the given sum.
void all_comps(int len, int sum, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        if (sum == 0) out.push_back(cur);
        return;
    }
    for (int v = 0; v <= sum; ++v) {
        cur.push_back(v);
        all_comps(len, sum - v, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> compositions(int len, int sum) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    all_comps(len, sum, cur, out);
    return out;
}

}  // namespace

TEST_CASE("setup splits a composition into support and extras") {
    auto s = diagram_setup({1, 0, 2, 3, 0, 0, 1, 1});
    CHECK(s.cols == 8);
    CHECK(s.support == std::vector<int>{1, 3, 4, 7, 8});
    CHECK(s.extras == std::vector<int>{3, 4, 4});

    CHECK_THROWS_AS(diagram_setup({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(diagram_setup({2, -1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(diagram_setup({}), std::invalid_argument);
}

TEST_CASE("the worked rank 8 example produces exactly three diagrams") {
    auto setup = diagram_setup({1, 0, 2, 3, 0, 0, 1, 1});
    auto ds = enumerate_diagrams(setup);
    REQUIRE(ds.size() == 3);

    // depth-first, left branch first
    CHECK(diagram_weight(ds[0]) == rat(16, 45));
    CHECK(diagram_weight(ds[1]) == rat(1, 9));
    CHECK(diagram_weight(ds[2]) == rat(5, 42));

    const auto& r0 = ds[0].rows;
    REQUIRE(r0.size() == 3);
    CHECK(r0[0].marked == 3);
    CHECK(r0[0].a == 3);
    CHECK(r0[0].b == 4);
    CHECK(r0[0].added == 2);
    CHECK(r0[0].left);
    CHECK_FALSE(r0[0].forced);
    CHECK(r0[0].factor == rat(2, 3));
    CHECK(r0[1].added == 5);
    CHECK_FALSE(r0[1].left);
    CHECK(r0[1].forced);
    CHECK(r0[1].factor == rat(4, 5));
    CHECK(r0[2].added == 6);
    CHECK(r0[2].forced);
    CHECK(r0[2].factor == rat(2, 3));

    CHECK(mixed_eulerian_diagrams({1, 0, 2, 3, 0, 0, 1, 1}) == Rat(23616));
}

TEST_CASE("all-ones composition plays no moves") {
    for (int n = 1; n <= 8; ++n) {
        std::vector<int> ones(n, 1);
        auto ds = enumerate_diagrams(diagram_setup(ones));
        REQUIRE(ds.size() == 1);
        CHECK(ds[0].rows.empty());
        CHECK(diagram_weight(ds[0]) == Rat(1));
        CHECK(mixed_eulerian_diagrams(ones) == Rat(factorial(n)));
    }
}

TEST_CASE("concentrated compositions give Eulerian-style golden values") {
    // n t_1^n integrates the classical Eulerian numbers; spot-check rank 2, 3.
    CHECK(mixed_eulerian_diagrams({2, 0}) == Rat(1));
    CHECK(mixed_eulerian_diagrams({0, 2}) == Rat(1));
    CHECK(mixed_eulerian_diagrams({1, 1}) == Rat(2));
    CHECK(mixed_eulerian_diagrams({3, 0, 0}) == Rat(1));
    CHECK(mixed_eulerian_diagrams({0, 3, 0}) == Rat(4));
    CHECK(mixed_eulerian_diagrams({0, 0, 3}) == Rat(1));
}

TEST_CASE("diagram game agrees with the reduction engine on type A") {
    for (int n = 1; n <= 5; ++n) {
        auto rs = build_root_system('A', n);
        for (const auto& c : compositions(n, n)) {
            CAPTURE(n);
            CAPTURE(c);
            CHECK(mixed_eulerian_diagrams(c) == mixed_eulerian(rs, c));
        }
    }
}

TEST_CASE("ascii rendering is byte-stable") {
    auto ds = enumerate_diagrams(diagram_setup({1, 0, 2, 3, 0, 0, 1, 1}));
    REQUIRE(ds.size() == 3);
    std::string expect =
        "comp 1 0 2 3 0 0 1 1\n"
        "#.##..##\n"
        "#+*#..##  L 2/3\n"
        "###*+.##  R 4/5 forced\n"
        "###*#+##  R 2/3 forced\n"
        "weight 16/45\n";
    CHECK(render_diagram(ds[0], RenderFormat::ascii) == expect);
    CHECK(render_diagram(ds[0], RenderFormat::ascii) ==
          render_diagram(ds[0], RenderFormat::ascii));
}

TEST_CASE("svg rendering carries the move labels") {
    auto ds = enumerate_diagrams(diagram_setup({1, 0, 2, 3, 0, 0, 1, 1}));
    auto svg = render_diagram(ds[2], RenderFormat::svg);
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(svg.find("R 1/3") != std::string::npos);
    CHECK(svg.find("L 5/7 forced") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg == render_diagram(ds[2], RenderFormat::svg));
}
