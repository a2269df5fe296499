#include "oix/trees.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace oix;

namespace {

Seq seq(std::initializer_list<long> xs) {
    Seq s;
    for (long x : xs) s.push_back(Ordinal::fromInt(x));
    return s;
}

FiniteTree fullBinary(int depth, bool rootIncluded) {
    std::vector<Seq> nodes;
    std::function<void(Seq&, int)> go = [&](Seq& cur, int d) {
        if (!cur.empty() || rootIncluded) nodes.push_back(cur);
        if (d == 0) return;
        for (long lab : {1L, 2L}) {
            cur.push_back(Ordinal::fromInt(lab));
            go(cur, d - 1);
            cur.pop_back();
        }
    };
    Seq cur;
    go(cur, depth);
    return FiniteTree::fromNodes(rootIncluded, std::move(nodes));
}

FiniteTree randomTree(std::mt19937& rng, int maxNodes) {
    std::uniform_int_distribution<int> labelD(1, 3);
    std::vector<Seq> nodes{Seq{}};
    int target = std::uniform_int_distribution<int>(1, maxNodes)(rng);
    while (static_cast<int>(nodes.size()) < target) {
        size_t i = std::uniform_int_distribution<size_t>(0, nodes.size() - 1)(rng);
        Seq child = nodes[i];
        child.push_back(Ordinal::fromInt(labelD(rng)));
        nodes.push_back(std::move(child));
    }
    return FiniteTree::closureOf(true, nodes);
}

}  // namespace

TEST_CASE("derivative removes exactly the maximal nodes", "[trees]") {
    auto chain = FiniteTree::fromNodes(true, {Seq{}, seq({1}), seq({1, 1}), seq({1, 1, 1})});
    auto d = derivative(chain);
    CHECK(d == FiniteTree::fromNodes(true, {Seq{}, seq({1}), seq({1, 1})}));

    auto root = FiniteTree::fromNodes(true, {Seq{}});
    CHECK(derivative(root).empty());

    CHECK(derivative(fullBinary(2, true)) == fullBinary(1, true));
}

TEST_CASE("rank", "[trees]") {
    CHECK(rank(FiniteTree::fromNodes(true, {Seq{}})) == 1);
    CHECK(rank(minimalTreeFinite(5)) == 5);
    for (int d = 0; d <= 4; ++d) CHECK(rank(fullBinary(d, true)) == d + 1);
    CHECK(rank(FiniteTree{}) == 0);
}

TEST_CASE("rank iteration equals recursion on random trees", "[trees]") {
    std::mt19937 rng(42);
    for (int it = 0; it < 1000; ++it) {
        FiniteTree t = randomTree(rng, 200);
        CHECK(rankIterative(t) == rankRecursive(t));
    }
}

TEST_CASE("derivative decreases and steps rank down", "[trees]") {
    std::mt19937 rng(43);
    for (int it = 0; it < 100; ++it) {
        FiniteTree t = randomTree(rng, 60);
        FiniteTree d = derivative(t);
        CHECK(d.size() < t.size());
        CHECK(rank(d) == rank(t) - 1);
    }
}

TEST_CASE("minimal tree membership", "[trees]") {
    CHECK(minimalTreeMember(Ordinal::fromInt(3), seq({3, 2})));
    CHECK_FALSE(minimalTreeMember(Ordinal::fromInt(3), seq({2, 1})));
    CHECK(minimalTreeMember(ordOmega(), seq({5, 4, 3, 2, 1})));
    CHECK_FALSE(minimalTreeMember(ordOmega(), seq({5, 3})));
    CHECK(minimalTreeMember(ordOmega(), seq({7})));
    CHECK_THROWS_AS(minimalTreeMember(Ordinal(), seq({1})), std::domain_error);
    CHECK_THROWS_AS(minimalTreeMember(Ordinal::fromInt(2), Seq{}), std::invalid_argument);

    // limit labels: members of MT_(w*2) may start with any successor <= w*2
    Ordinal w2 = ordAdd(ordOmega(), ordOmega());
    CHECK(minimalTreeMember(w2, {ordAdd(ordOmega(), ordOne())}));
    CHECK_FALSE(minimalTreeMember(w2, {ordOmega()}));  // head must be a successor
}

TEST_CASE("symbolic rank", "[trees]") {
    Ordinal w2 = omegaPow(Ordinal::fromInt(2));
    auto t1 = makeMinimalLazyTree(w2);
    CHECK_FALSE(symbolicRank(t1).illFounded);
    CHECK(symbolicRank(t1).value == w2);

    auto t2 = makeMinimalLazyTree(Ordinal::fromInt(7));
    CHECK(symbolicRank(t2).value == Ordinal::fromInt(7));

    LazyTree trunc;
    trunc.truncation = minimalTreeOmegaTruncated(4);
    CHECK(symbolicRank(trunc).value == Ordinal::fromInt(4));

    LazyTree bare;
    CHECK_THROWS_AS(symbolicRank(bare), std::invalid_argument);
}

TEST_CASE("lazy minimal tree structure", "[trees]") {
    auto t = makeMinimalLazyTree(ordOmega());
    CHECK(t.member(seq({4, 3})));
    CHECK_FALSE(t.member(seq({4, 2})));
    CHECK_FALSE(t.childLabels(Seq{}).has_value());  // limit stage branches infinitely
    auto kids = t.childLabels(seq({3}));
    REQUIRE(kids.has_value());
    CHECK(*kids == std::vector<Ordinal>{Ordinal::fromInt(2)});
}

TEST_CASE("monotone embedding search", "[trees]") {
    auto chain3 = FiniteTree::fromNodes(false, {seq({1}), seq({1, 1}), seq({1, 1, 1})});
    auto r1 = monotoneEmbeddingSearch(Ordinal::fromInt(2), chain3);
    CHECK(r1.found);
    REQUIRE(r1.witnessBranch.size() == 3);
    for (const auto& s : r1.witnessBranch) CHECK(chain3.contains(s));

    CHECK_FALSE(monotoneEmbeddingSearch(Ordinal::fromInt(3), chain3).found);

    auto bin3 = fullBinary(3, false);
    REQUIRE(rank(bin3) == 3);
    CHECK(monotoneEmbeddingSearch(Ordinal::fromInt(2), bin3).found);

    CHECK_FALSE(monotoneEmbeddingSearch(ordOmega(), bin3).found);
    CHECK_THROWS_AS(monotoneEmbeddingSearch(Ordinal::fromInt(1), bin3, 1), BudgetExhausted);
}

TEST_CASE("embedding succeeds exactly above the rank", "[trees]") {
    std::mt19937 rng(44);
    for (int it = 0; it < 200; ++it) {
        FiniteTree t = randomTree(rng, 40);
        FiniteTree b;  // B-tree view
        b.rootIncluded = false;
        for (const auto& s : t.nodes)
            if (!s.empty()) b.nodes.push_back(s);
        Int rk = rank(b);
        for (long xi = 0; xi <= 6; ++xi)
            CHECK(monotoneEmbeddingSearch(Ordinal::fromInt(xi), b).found == (rk > xi));
    }
}

TEST_CASE("derivative identities, sampled", "[trees]") {
    std::mt19937 rng(45);
    for (int it = 0; it < 60; ++it) {
        FiniteTree t = randomTree(rng, 50);
        long rk = rank(t).get_si();
        for (long z = 0; z <= rk; ++z)
            for (long x = 0; x + z <= rk; ++x)
                CHECK(derivativePower(derivativePower(t, z), x) == derivativePower(t, z + x));
        for (const auto& at : t.nodes) {
            CHECK(subtreeAt(derivativePower(t, 1), at) == derivativePower(subtreeAt(t, at), 1));
        }
    }
}

TEST_CASE("json round trip", "[trees]") {
    std::mt19937 rng(46);
    for (int it = 0; it < 20; ++it) {
        FiniteTree t = randomTree(rng, 30);
        auto j = treeToJson(t);
        CHECK(treeFromJson(j, true) == t);
    }
    auto bt = minimalTreeFinite(4);
    CHECK(treeFromJson(treeToJson(bt), false) == bt);
}

TEST_CASE("closure validation", "[trees]") {
    CHECK_THROWS_AS(FiniteTree::fromNodes(true, {seq({1, 2})}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteTree::fromNodes(false, {Seq{}, seq({1})}), std::invalid_argument);
    CHECK_NOTHROW(FiniteTree::fromNodes(false, {seq({1}), seq({1, 2})}));
}
