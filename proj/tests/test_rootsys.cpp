#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>

#include "doctest.h"
#include "meu/rootsys.hpp"

using namespace meu;

namespace {

Mask mask_of(std::initializer_list<int> vs) {
    Mask m = 0;
    for (int v : vs) m |= bit(v);
    return m;
}

Rat inner(const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

const std::vector<std::pair<char, int>> kAllTypes = {
    {'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'A', 6}, {'A', 7}, {'A', 8},
    {'B', 2}, {'B', 3}, {'B', 4}, {'B', 5}, {'B', 6}, {'B', 7}, {'B', 8},
    {'C', 2}, {'C', 3}, {'C', 4}, {'C', 5}, {'C', 6}, {'C', 7}, {'C', 8},
    {'D', 4}, {'D', 5}, {'D', 6}, {'D', 7}, {'D', 8},
    {'E', 6}, {'E', 7}, {'E', 8}, {'F', 4}, {'G', 2}};

}  // namespace

TEST_CASE("cartan matrices match the standard presentations") {
    auto a3 = build_root_system('A', 3);
    std::vector<std::vector<int>> a3_expect = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    CHECK(a3.cartan == a3_expect);

    auto g2 = build_root_system('G', 2);
    std::vector<std::vector<int>> g2_expect = {{2, -1}, {-3, 2}};
    CHECK(g2.cartan == g2_expect);

    auto a1 = build_root_system('A', 1);
    CHECK(a1.cartan == std::vector<std::vector<int>>{{2}});

    auto b3 = build_root_system('B', 3);
    CHECK(b3.cartan[1][2] == -2);  // short alpha_3: (alpha_2, alpha_3^vee) = -2
    CHECK(b3.cartan[2][1] == -1);
    auto c3 = build_root_system('C', 3);
    CHECK(c3.cartan[1][2] == -1);
    CHECK(c3.cartan[2][1] == -2);
}

TEST_CASE("cartan entries agree with the root geometry for every type") {
    for (auto [t, r] : kAllTypes) {
        auto rs = build_root_system(t, r);
        CHECK(rs.rank == r);
        for (int i = 1; i <= r; ++i) {
            CHECK(rs.cartan[i - 1][i - 1] == 2);
            for (int j = 1; j <= r; ++j) {
                if (i != j) CHECK(rs.cartan[i - 1][j - 1] <= 0);
                // alpha_i = sum_j cartan[i][j] omega_j in ambient coordinates
            }
            std::vector<Rat> lhs = rs.simple_roots[i - 1];
            for (int j = 1; j <= r; ++j)
                for (int k = 0; k < rs.ambient; ++k)
                    lhs[k] -= Rat(rs.cartan[i - 1][j - 1]) * rs.fund_weights[j - 1][k];
            for (const Rat& v : lhs) CHECK(v == 0);
        }
        // omega_i lies in the root span and pairs as delta_ij with coroots
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j) {
                Rat c = 2 * inner(rs.fund_weights[i - 1], rs.simple_roots[j - 1]) /
                        inner(rs.simple_roots[j - 1], rs.simple_roots[j - 1]);
                CHECK(c == Rat(i == j ? 1 : 0));
            }
    }
}

TEST_CASE("invalid labels are rejected") {
    CHECK_THROWS(build_root_system('A', 0));
    CHECK_THROWS(build_root_system('D', 3));
    CHECK_THROWS(build_root_system('E', 5));
    CHECK_THROWS(build_root_system('E', 9));
    CHECK_THROWS(build_root_system('F', 3));
    CHECK_THROWS(build_root_system('G', 3));
    CHECK_THROWS(build_root_system('H', 3));
    CHECK_THROWS(build_root_system("Q5"));
    CHECK_THROWS(build_root_system("E"));
    CHECK(build_root_system("e6").rank == 6);
    CHECK(build_root_system("A12").rank == 12);
}

TEST_CASE("cartan determinants") {
    std::map<std::string, long> expect = {
        {"A1", 2}, {"A2", 3}, {"A5", 6}, {"A8", 9}, {"B2", 2}, {"B6", 2},
        {"C5", 2}, {"D4", 4}, {"D8", 4}, {"E6", 3}, {"E7", 2}, {"E8", 1},
        {"F4", 1}, {"G2", 1}};
    for (const auto& [label, d] : expect)
        CHECK(cartan_det(build_root_system(label)) == d);
}

TEST_CASE("weyl group orders, enumerated vs closed form") {
    std::map<std::string, long> expect = {
        {"A1", 2},     {"A2", 6},      {"A7", 40320},  {"B2", 8},
        {"B3", 48},    {"B6", 46080},  {"C4", 384},    {"D4", 192},
        {"D6", 23040}, {"E6", 51840},  {"F4", 1152},   {"G2", 12}};
    for (const auto& [label, n] : expect) {
        auto info = weyl_order(build_root_system(label));
        CHECK(info.order == n);
        CHECK(info.enumerated);
    }
    auto e8 = weyl_order(build_root_system('E', 8));
    CHECK(e8.order == 696729600);
    CHECK_FALSE(e8.enumerated);
    auto e7 = weyl_order(build_root_system('E', 7), 3000000);
    CHECK(e7.order == 2903040);
    CHECK(e7.enumerated);
}

TEST_CASE("reflection words satisfy the Coxeter relations") {
    for (auto label : {"A3", "B3", "D4", "G2", "F4"}) {
        auto rs = build_root_system(label);
        int n = rs.rank;
        auto id = word_action_matrix(rs, {});
        for (int i = 1; i <= n; ++i) {
            CHECK(word_action_matrix(rs, {i, i}) == id);
            for (int j = i + 1; j <= n; ++j) {
                int m = 2;
                switch (rs.edge_multiplicity(i, j)) {
                    case 1: m = 3; break;
                    case 2: m = 4; break;
                    case 3: m = 6; break;
                }
                std::vector<int> w;
                for (int k = 0; k < m; ++k) { w.push_back(i); w.push_back(j); }
                CHECK(word_action_matrix(rs, w) == id);
            }
        }
    }
}

TEST_CASE("connected subsets") {
    auto a3 = build_root_system('A', 3);
    std::vector<Mask> expect = {mask_of({1}), mask_of({2}), mask_of({3}),
                                mask_of({1, 2}), mask_of({2, 3}), mask_of({1, 2, 3})};
    CHECK(connected_subsets(a3) == expect);

    auto d4 = build_root_system('D', 4);
    auto subs = connected_subsets(d4);
    CHECK(subs.size() == 11);
    CHECK(std::find(subs.begin(), subs.end(), mask_of({1, 3})) == subs.end());
    CHECK(std::find(subs.begin(), subs.end(), mask_of({1, 2, 3})) != subs.end());

    // order: by size, then by mask value
    for (std::size_t k = 1; k < subs.size(); ++k) {
        bool ordered = popcount(subs[k - 1]) < popcount(subs[k]) ||
                       (popcount(subs[k - 1]) == popcount(subs[k]) && subs[k - 1] < subs[k]);
        CHECK(ordered);
    }

    auto e6 = build_root_system('E', 6);
    // brute-force recount via components
    int count = 0;
    for (Mask m = 1; m <= full_mask(6); ++m)
        if (connected_components(e6, m).size() == 1) ++count;
    CHECK(static_cast<int>(connected_subsets(e6).size()) == count);
}

TEST_CASE("connected components ordering and membership") {
    auto a5 = build_root_system('A', 5);
    auto comps = connected_components(a5, mask_of({1, 2, 4}));
    CHECK(comps == std::vector<Mask>{mask_of({1, 2}), mask_of({4})});
    CHECK(component_of(a5, mask_of({1, 2, 4}), 2) == mask_of({1, 2}));
    CHECK_THROWS(component_of(a5, mask_of({1, 2, 4}), 3));
}

TEST_CASE("longest elements") {
    auto a2 = build_root_system('A', 2);
    CHECK(longest_element(a2, mask_of({1})).letters == std::vector<int>{1});
    CHECK(longest_element(a2, full_mask(2)).letters == std::vector<int>{1, 2, 1});

    auto b2 = build_root_system('B', 2);
    CHECK(longest_element(b2, full_mask(2)).letters.size() == 4);

    auto g2 = build_root_system('G', 2);
    CHECK(longest_element(g2, full_mask(2)).letters ==
          std::vector<int>{1, 2, 1, 2, 1, 2});

    // length of w_0(K) equals the number of positive roots supported on K
    for (auto label : {"A4", "B4", "D5", "F4", "E6"}) {
        auto rs = build_root_system(label);
        auto roots = positive_roots(rs);
        for (Mask k : connected_subsets(rs)) {
            int cnt = 0;
            for (const auto& r : roots) {
                bool inside = true;
                for (int j = 0; j < rs.rank; ++j)
                    if (r.coords[j] != 0 && !contains(k, j + 1)) { inside = false; break; }
                if (inside) ++cnt;
            }
            auto w = longest_element(rs, k);
            CHECK(static_cast<int>(w.letters.size()) == cnt);
            CHECK(is_reduced(rs, w.letters));
        }
    }

    // w_0 squares to the identity
    for (auto label : {"A3", "B3", "C4", "D4", "G2"}) {
        auto rs = build_root_system(label);
        auto w = longest_element(rs, full_mask(rs.rank)).letters;
        auto ww = w;
        ww.insert(ww.end(), w.begin(), w.end());
        CHECK(element_length(rs, ww) == 0);
    }

    // greedy yields the lexicographically smallest reduced word
    auto a3 = build_root_system('A', 3);
    auto w0 = longest_element(a3, full_mask(3));
    auto all = reduced_words(a3, w0);
    CHECK(*all.begin() == w0.letters);
}

TEST_CASE("positive root counts") {
    std::map<std::string, std::size_t> expect = {
        {"A3", 6}, {"B3", 9}, {"C3", 9}, {"D4", 12},
        {"F4", 24}, {"G2", 6}, {"E6", 36}};
    for (const auto& [label, n] : expect)
        CHECK(positive_roots(build_root_system(label)).size() == n);
}

TEST_CASE("element length agrees with word stripping on random words") {
    auto rs = build_root_system('B', 3);
    std::vector<int> w;
    std::uint64_t state = 12345;
    for (int trial = 0; trial < 200; ++trial) {
        w.clear();
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        int len = static_cast<int>(state % 9);
        for (int k = 0; k < len; ++k) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            w.push_back(static_cast<int>(state % 3) + 1);
        }
        int l = element_length(rs, w);
        CHECK(l <= len);
        CHECK((len - l) % 2 == 0);
        if (l == len) CHECK(is_reduced(rs, w));
    }
}

TEST_CASE("reduced words by braid closure") {
    auto a2 = build_root_system('A', 2);
    auto words = reduced_words(a2, {{1, 2, 1}});
    CHECK(words == std::set<std::vector<int>>{{1, 2, 1}, {2, 1, 2}});
    CHECK_THROWS(reduced_words(a2, {{1, 1}}));

    auto g2 = build_root_system('G', 2);
    auto w0 = reduced_words(g2, longest_element(g2, full_mask(2)));
    CHECK(w0.size() == 2);

    auto b2 = build_root_system('B', 2);
    CHECK(reduced_words(b2, longest_element(b2, full_mask(2))).size() == 2);

    // every braid image is reduced and represents the same element
    auto a3 = build_root_system('A', 3);
    auto words3 = reduced_words(a3, longest_element(a3, full_mask(3)));
    CHECK(words3.size() == 16);
    for (const auto& w : words3) CHECK(is_reduced(a3, w));
}

TEST_CASE("canonical coxeter words") {
    auto e6 = build_root_system('E', 6);
    CHECK(v_K(e6, mask_of({1, 3, 4, 5, 6})).letters == std::vector<int>{1, 3, 4, 5, 6});
    CHECK(v_K(e6, mask_of({1, 2, 3, 4, 5})).letters == std::vector<int>{1, 3, 4, 5, 2});
    CHECK(v_K(e6, full_mask(6)).letters == std::vector<int>{1, 3, 4, 5, 6, 2});

    auto a5 = build_root_system('A', 5);
    CHECK(v_K(a5, mask_of({1, 2, 4})).letters == std::vector<int>{1, 2, 4});

    // one letter per vertex, reduced, one word per braid class size check
    auto d5 = build_root_system('D', 5);
    auto v = v_K(d5, full_mask(5));
    CHECK(v.letters.size() == 5);
    CHECK(is_reduced(d5, v.letters));
    CHECK(reduced_words(d5, v).size() == 2);

    auto e7 = build_root_system('E', 7);
    CHECK(reduced_words(e7, v_K(e7, mask_of({1, 2, 3, 4, 5, 6}))).size() == 3);
}

TEST_CASE("inversion heights") {
    auto g2 = build_root_system('G', 2);
    auto w0 = longest_element(g2, full_mask(2));
    auto hs = inversion_heights(g2, w0.letters);
    CHECK(hs == std::vector<Int>{1, 4, 3, 5, 2, 1});

    auto a2 = build_root_system('A', 2);
    CHECK(inversion_heights(a2, {1, 2, 1}) == std::vector<Int>{1, 2, 1});
    CHECK_THROWS(inversion_heights(a2, {1, 1}));

    // multiset of inversion roots of w_0 = all positive roots
    for (auto label : {"A3", "B3", "D4", "F4"}) {
        auto rs = build_root_system(label);
        auto inv = inversion_roots(rs, longest_element(rs, full_mask(rs.rank)).letters);
        std::set<std::vector<int>> seen(inv.begin(), inv.end());
        CHECK(seen.size() == inv.size());
        CHECK(seen.size() == positive_roots(rs).size());
    }
}

TEST_CASE("word action matrices are integral and respect composition") {
    auto f4 = build_root_system('F', 4);
    auto m1 = word_action_matrix(f4, {1, 3});
    auto m2 = word_action_matrix(f4, {2, 4, 2});
    auto m12 = word_action_matrix(f4, {1, 3, 2, 4, 2});
    // compose: (m1 * m2)[r][c] = sum_k m1[r][k] m2[k][c]
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Int s = 0;
            for (int k = 0; k < 4; ++k) s += m1[r][k] * m2[k][c];
            CHECK(s == m12[r][c]);
        }
}
