#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "diffiso/core.hpp"

using namespace diffiso;

namespace {

// independent oracle: all r-subsets of [1,n] sorted colexicographically
// (compare reversed vertex lists, largest element first)
std::vector<Edge> colex_enumeration(int n, int r) {
    std::vector<Edge> all;
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
        all.push_back(idx);
        int j = r - 1;
        while (j >= 0 && idx[j] == n - (r - 1 - j)) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < r; ++l) idx[l] = idx[l - 1] + 1;
    }
    std::sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return all;
}

Perm random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    std::shuffle(img.begin(), img.end(), rng);
    return Perm(std::move(img));
}

RGraph random_graph(const EdgeSpace& s, std::mt19937_64& rng) {
    RGraph g(s);
    for (u64 i = 0; i < s.edge_count; ++i)
        if (rng() & 1) g.set(i);
    return g;
}

}  // namespace

TEST_CASE("binomial table matches Pascal recursion") {
    for (int n = 0; n <= 64; ++n) {
        CHECK(binom(n, 0) == 1);
        CHECK(binom(n, n) == 1);
    }
    CHECK(binom(4, 2) == 6);
    CHECK(binom(8, 4) == 70);
    CHECK(binom(64, 32) == 1832624140942590534ULL);
    CHECK(binom(5, 7) == 0);
    CHECK_THROWS_AS(binom(65, 2), capacity_error);
}

TEST_CASE("edge space validation") {
    EdgeSpace s(4, 2);
    CHECK(s.edge_count == 6);
    CHECK_THROWS_AS(EdgeSpace(3, 4), validation_error);
    CHECK_THROWS_AS(EdgeSpace(0, 1), validation_error);
    CHECK_THROWS_AS(EdgeSpace(65, 2), validation_error);
}

TEST_CASE("rank_edge examples") {
    EdgeSpace s(4, 2);
    CHECK(rank_edge(s, {1, 2}) == 0);
    CHECK(rank_edge(s, {2, 4}) == 4);
    CHECK(rank_edge(s, {3, 4}) == 5);
    CHECK_THROWS_AS(rank_edge(s, {2, 1}), validation_error);
    CHECK_THROWS_AS(rank_edge(s, {1, 5}), validation_error);
    CHECK_THROWS_AS(rank_edge(s, {1, 2, 3}), validation_error);
}

TEST_CASE("unrank_edge examples") {
    EdgeSpace s(4, 2);
    CHECK(unrank_edge(s, 0) == Edge{1, 2});
    CHECK(unrank_edge(s, 1) == Edge{1, 3});
    CHECK(unrank_edge(s, 5) == Edge{3, 4});
    CHECK_THROWS_AS(unrank_edge(s, 6), validation_error);
}

TEST_CASE("rank/unrank agree with colex enumeration, exhaustive n<=10 r<=4") {
    for (int n = 1; n <= 10; ++n) {
        for (int r = 1; r <= std::min(n, 4); ++r) {
            EdgeSpace s(n, r);
            auto oracle = colex_enumeration(n, r);
            REQUIRE(oracle.size() == s.edge_count);
            for (u64 i = 0; i < s.edge_count; ++i) {
                CHECK(unrank_edge(s, i) == oracle[i]);
                CHECK(rank_edge(s, oracle[i]) == i);
            }
        }
    }
}

TEST_CASE("induce_edge_perm examples") {
    EdgeSpace s(4, 2);
    auto id = induce_edge_perm(s, Perm::identity(4));
    CHECK(id.is_identity());

    auto psi = induce_edge_perm(s, Perm::from_cycles(4, {{1, 2}, {3, 4}}));
    CHECK(psi.table[1] == 4);  // {1,3} -> {2,4}
    CHECK(psi.table[4] == 1);
    CHECK(psi.table[0] == 0);  // {1,2} fixed
    CHECK(psi.table[5] == 5);  // {3,4} fixed
}

TEST_CASE("induce_edge_perm respects composition and inverses") {
    std::mt19937_64 rng(20260810);
    for (auto [n, r] : {std::pair{5, 2}, {6, 3}, {7, 2}}) {
        EdgeSpace s(n, r);
        for (int trial = 0; trial < 20; ++trial) {
            Perm p = random_perm(n, rng), q = random_perm(n, rng);
            auto ep = induce_edge_perm(s, p), eq = induce_edge_perm(s, q);
            auto composed = induce_edge_perm(s, p.compose(q));
            CHECK(composed.table == ep.compose(eq).table);
            auto inv = induce_edge_perm(s, p.inverse());
            CHECK(inv.table == ep.inverse().table);
        }
    }
}

TEST_CASE("apply_perm examples and properties") {
    EdgeSpace s(4, 2);
    auto psi = induce_edge_perm(s, Perm::from_cycles(4, {{1, 2}, {3, 4}}));

    RGraph empty(s);
    CHECK(apply_perm(empty, psi) == empty);

    RGraph g = RGraph::from_edges(s, {{1, 3}});
    CHECK(apply_perm(g, psi) == RGraph::from_edges(s, {{2, 4}}));

    RGraph full = RGraph::full(s);
    CHECK(apply_perm(full, psi) == full);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        RGraph a = random_graph(s, rng), b = random_graph(s, rng);
        auto p = induce_edge_perm(s, random_perm(4, rng));
        CHECK(apply_perm(a, p).size() == a.size());
        CHECK(apply_perm(set_union(a, b), p) == set_union(apply_perm(a, p), apply_perm(b, p)));
        CHECK(apply_perm(set_intersection(a, b), p) ==
              set_intersection(apply_perm(a, p), apply_perm(b, p)));
        CHECK(apply_perm(difference(a, b), p) == difference(apply_perm(a, p), apply_perm(b, p)));
    }
}

TEST_CASE("difference, symmetric difference, complement") {
    EdgeSpace s(4, 2);
    RGraph g1 = RGraph::from_edges(s, {{1, 3}, {1, 4}});
    RGraph g2 = RGraph::from_edges(s, {{1, 4}, {2, 3}});

    CHECK(difference(g1, g1).empty());
    CHECK(difference(g1, g2) == RGraph::from_edges(s, {{1, 3}}));
    CHECK(complement(RGraph(s)) == RGraph::full(s));
    CHECK(complement(RGraph(s)).size() == 6);
    CHECK(symmetric_difference(g1, g2) == RGraph::from_edges(s, {{1, 3}, {2, 3}}));

    CHECK(difference(g1, g2).size() + set_intersection(g1, g2).size() == g1.size());
    CHECK(complement(complement(g1)) == g1);

    EdgeSpace other(5, 2);
    CHECK_THROWS_AS(difference(g1, RGraph(other)), validation_error);
}

TEST_CASE("complement trims multi-word masks") {
    EdgeSpace s(12, 2);  // 66 bits, two words
    REQUIRE(s.mask_words() == 2);
    RGraph g(s);
    RGraph c = complement(g);
    CHECK(c.size() == 66);
    CHECK(complement(c).empty());
}

TEST_CASE("vertex_degree") {
    EdgeSpace s(4, 2);
    RGraph empty(s);
    CHECK(vertex_degree(empty, 1) == 0);
    CHECK(vertex_degree(RGraph::full(s), 2) == 3);
    RGraph g = RGraph::from_edges(s, {{1, 3}, {1, 4}});
    CHECK(vertex_degree(g, 1) == 2);
    CHECK(vertex_degree(g, 2) == 0);
    CHECK_THROWS_AS(vertex_degree(g, 5), validation_error);
}

TEST_CASE("perm basics") {
    CHECK_THROWS_AS(Perm({1, 1, 3}), validation_error);
    Perm p = Perm::from_cycles(4, {{1, 2, 3}});
    CHECK(p(1) == 2);
    CHECK(p(3) == 1);
    CHECK(p(4) == 4);
    CHECK(!p.is_involution());
    CHECK(p.compose(p.inverse()).is_identity());
    Perm inv = Perm::from_cycles(6, {{1, 2}, {3, 4}});
    CHECK(inv.is_involution());
    CHECK(inv.fixed_points() == std::vector<int>{5, 6});
    CHECK(inv.two_cycles() == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
}
