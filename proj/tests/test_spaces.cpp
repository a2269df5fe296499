#include "oix/spaces.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace oix;

namespace {

FinVector fv(std::initializer_list<long> xs) {
    FinVector v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

void checkExact(const Value& v, long expect) {
    CHECK(v.exact);
    CHECK(v.lo == expect);
}

FinVector randomVec(std::mt19937& rng, long dim, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> d(lo, hi);
    FinVector v(dim);
    for (auto& x : v) x = Rat(d(rng));
    return v;
}

}  // namespace

TEST_CASE("norm examples", "[spaces]") {
    checkExact(norm(descLp(Rat(2), 2), fv({3, 4})), 5);
    checkExact(norm(descSchreier(ordOne(), 4), fv({1, 1, 1, 1})), 2);
    checkExact(norm(descXXi2(ordOne(), 4), fv({0, 1, 1, 0})), 2);

    TreeNodeSet chain{{}, {1}, {1, 1}, {1, 1, 1}};
    checkExact(norm(descZpq(1, 2, chain), fv({1, 1, 1, 1})), 4);

    TreeNodeSet star{{}, {1}, {2}, {3}, {4}};
    checkExact(norm(descZpq(1, 2, star), fv({0, 1, 1, 1, 1})), 2);

    checkExact(norm(descSumming(3), fv({1, -1, 1})), 1);
    checkExact(norm(descConvexify(descLp(Rat(1), 2), Rat(2)), fv({3, 4})), 5);
    checkExact(norm(descDirectSum(descLp(Rat(2), 2), {descLp(Rat(1), 2), descLp(Rat(1), 2)}),
                    fv({1, 1, 0, 0})),
               2);
}

TEST_CASE("norm axioms on random vectors", "[spaces]") {
    std::mt19937 rng(21);
    TreeNodeSet nodes{{}, {1}, {2}, {1, 1}, {1, 2}, {2, 1}};
    std::vector<DescPtr> battery = {
        descLp(Rat(1), 6),
        descLpInf(6),
        descLp(Rat(2), 6),
        descSchreier(ordOne(), 6),
        descXXi2(ordOne(), 6),
        descZpq(1, 2, nodes),
        descSumming(6),
        descConvexify(descSchreier(ordOne(), 6), Rat(2)),
        descDirectSum(descLp(Rat(1), 2), {descLp(Rat(2), 3), descSumming(3)}),
    };
    for (const auto& d : battery) {
        long dim = d->dimension();
        for (int it = 0; it < 12; ++it) {
            FinVector x = randomVec(rng, dim), y = randomVec(rng, dim);
            Value nx = norm(d, x), ny = norm(d, y);
            // homogeneity: certified brackets must overlap after scaling,
            // and agree exactly in the exact case
            FinVector x3 = x;
            for (auto& c : x3) c *= -3;
            Value nx3 = norm(d, x3);
            CHECK(3 * nx.lo <= nx3.hi);
            CHECK(nx3.lo <= 3 * nx.hi);
            if (nx.exact && nx3.exact) CHECK(nx3.lo == 3 * nx.lo);
            // triangle inequality within the certified brackets
            FinVector s = x;
            for (size_t i = 0; i < s.size(); ++i) s[i] += y[i];
            CHECK(norm(d, s).lo <= nx.hi + ny.hi);
            // zero iff zero vector
            bool isZero = std::all_of(x.begin(), x.end(), [](const Rat& q) { return q == 0; });
            if (!isZero) CHECK(nx.lo > 0);
        }
    }
}

TEST_CASE("1-unconditionality (summing basis excepted)", "[spaces]") {
    std::mt19937 rng(22);
    TreeNodeSet nodes{{}, {1}, {2}, {1, 1}};
    std::vector<DescPtr> unconditional = {
        descLp(Rat(1), 4),    descLpInf(4),
        descLp(Rat(2), 4),    descSchreier(ordOne(), 4),
        descXXi2(ordOne(), 4), descZpq(1, 2, nodes),
        descConvexify(descLp(Rat(1), 4), Rat(2)),
    };
    std::uniform_int_distribution<int> coin(0, 1);
    for (const auto& d : unconditional) {
        for (int it = 0; it < 10; ++it) {
            FinVector x = randomVec(rng, d->dimension());
            FinVector flipped = x;
            for (auto& c : flipped)
                if (coin(rng)) c = -c;
            Value a = norm(d, x), b = norm(d, flipped);
            CHECK(a.lo == b.lo);
            CHECK(a.hi == b.hi);
        }
    }
    // the summing norm is genuinely sign-dependent
    CHECK(norm(descSumming(2), fv({1, -1})).lo < norm(descSumming(2), fv({1, 1})).lo);
}

TEST_CASE("norms sit between l_inf and l_1", "[spaces]") {
    std::mt19937 rng(23);
    TreeNodeSet nodes{{}, {1}, {2}, {1, 1}, {1, 2}};
    std::vector<DescPtr> battery = {descSchreier(ordOne(), 5), descXXi2(ordOne(), 5),
                                    descZpq(1, 2, nodes)};
    for (const auto& d : battery)
        for (int it = 0; it < 20; ++it) {
            FinVector x = randomVec(rng, d->dimension());
            Value v = norm(d, x);
            CHECK(norm(descLpInf(d->dimension()), x).lo <= v.hi);
            CHECK(v.lo <= norm(descLp(Rat(1), d->dimension()), x).hi);
        }
}

TEST_CASE("XXi2 dominates the Schreier norm", "[spaces]") {
    std::mt19937 rng(24);
    for (int it = 0; it < 20; ++it) {
        FinVector x = randomVec(rng, 6);
        CHECK(norm(descSchreier(ordOne(), 6), x).lo <= norm(descXXi2(ordOne(), 6), x).hi);
    }
}

TEST_CASE("convexification formula", "[spaces]") {
    std::mt19937 rng(25);
    auto base = descSchreier(ordOne(), 5);
    auto conv = descConvexify(base, Rat(2));
    for (int it = 0; it < 20; ++it) {
        FinVector x = randomVec(rng, 5);
        FinVector sq(5);
        for (int i = 0; i < 5; ++i) sq[i] = x[i] * x[i];
        Value lhs = norm(conv, x);
        Value rhs = valueSqrt(norm(base, sq));
        CHECK(lhs.lo == rhs.lo);
        CHECK(lhs.hi == rhs.hi);
    }
}

TEST_CASE("direct sum degenerate cases", "[spaces]") {
    std::mt19937 rng(26);
    auto inner = descSchreier(ordOne(), 4);
    auto d = descDirectSum(descLp(Rat(1), 1), {inner});
    for (int it = 0; it < 10; ++it) {
        FinVector x = randomVec(rng, 4);
        CHECK(norm(d, x).lo == norm(inner, x).lo);
    }
    CHECK_THROWS_AS(descDirectSum(descLp(Rat(1), 2), {inner}), std::invalid_argument);
}

TEST_CASE("Zpq on one branch is the l1 norm of the branch", "[spaces]") {
    TreeNodeSet nodes{{}, {1}, {2}, {1, 1}, {1, 1, 1}};
    auto d = descZpq(1, 2, nodes);
    // support on the branch {}, (1), (1,1), (1,1,1): indices under sorted order
    // sorted: {}, {1}, {1,1}, {1,1,1}, {2}
    FinVector x{Rat(2), Rat(3), Rat(1), Rat(5), Rat(0)};
    checkExact(norm(d, x), 11);
}

namespace {

// exhaustive disjoint-segment optimum, used to validate the tree DP
Rat zBruteSquared(const TreeNodeSet& nodes, const FinVector& x) {
    auto leq = [&](const TreeNode& s, const TreeNode& t) {
        return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
    };
    std::vector<std::vector<size_t>> segs;
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = 0; j < nodes.size(); ++j) {
            if (!leq(nodes[i], nodes[j])) continue;
            std::vector<size_t> cover;
            for (size_t u = 0; u < nodes.size(); ++u)
                if (leq(nodes[i], nodes[u]) && leq(nodes[u], nodes[j])) cover.push_back(u);
            segs.push_back(std::move(cover));
        }
    Rat best(0);
    std::vector<bool> used(nodes.size(), false);
    std::function<void(size_t, Rat)> rec = [&](size_t k, Rat acc) {
        best = std::max(best, acc);
        for (size_t s = k; s < segs.size(); ++s) {
            bool clash = false;
            Rat w(0);
            for (size_t u : segs[s]) {
                if (used[u]) clash = true;
                w += ratAbs(x[u]);
            }
            if (clash) continue;
            for (size_t u : segs[s]) used[u] = true;
            rec(s + 1, acc + w * w);
            for (size_t u : segs[s]) used[u] = false;
        }
    };
    rec(0, Rat(0));
    return best;
}

TreeNodeSet randomNodeSet(std::mt19937& rng, int count) {
    std::uniform_int_distribution<int> lab(1, 2);
    TreeNodeSet nodes{{}};
    while (static_cast<int>(nodes.size()) < count) {
        TreeNode parent = nodes[std::uniform_int_distribution<size_t>(0, nodes.size() - 1)(rng)];
        parent.push_back(lab(rng));
        if (std::find(nodes.begin(), nodes.end(), parent) == nodes.end())
            nodes.push_back(std::move(parent));
    }
    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

// exhaustive successive-admissible-partition optimum for the XXi2 norm
Rat xxi2BruteSquared(const Ordinal& xi, const FinVector& x) {
    long n = static_cast<long>(x.size());
    Rat best(0);
    std::function<void(long, Rat)> go = [&](long from, Rat acc) {
        best = std::max(best, acc);
        for (long a = from; a <= n; ++a)
            for (int mask = 0; mask < (1 << (n - a)); ++mask) {
                FinSet e{a};
                for (long b = a + 1; b <= n; ++b)
                    if ((mask >> (b - a - 1)) & 1) e.push_back(b);
                if (!memberSchreier(xi, e)) continue;
                Rat w(0);
                for (long i : e) w += ratAbs(x[i - 1]);
                go(e.back() + 1, acc + w * w);
            }
    };
    go(1, Rat(0));
    return best;
}

}  // namespace

TEST_CASE("segment DP validated by exhaustive search", "[spaces]") {
    std::mt19937 rng(27);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int it = 0; it < 40; ++it) {
        TreeNodeSet nodes = randomNodeSet(rng, 2 + it % 8);
        auto d = descZpq(1, 2, nodes);
        FinVector x(nodes.size());
        for (auto& q : x) q = coord(rng);
        Value nv = norm(d, x);
        Rat brute = zBruteSquared(d->zNodes, x);
        CHECK(nv.lo * nv.lo <= brute);
        CHECK(brute <= nv.hi * nv.hi);
    }
}

TEST_CASE("XXi2 DP validated by exhaustive partitions", "[spaces]") {
    std::mt19937 rng(28);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int it = 0; it < 30; ++it) {
        long dim = 2 + it % 6;
        auto d = descXXi2(ordOne(), dim);
        FinVector x(dim);
        for (auto& q : x) q = coord(rng);
        Value nv = norm(d, x);
        Rat brute = xxi2BruteSquared(ordOne(), x);
        CHECK(nv.lo * nv.lo <= brute);
        CHECK(brute <= nv.hi * nv.hi);
    }
}

TEST_CASE("operator convexification", "[spaces]") {
    auto dom = descLp(Rat(1), 2), cod = descLp(Rat(1), 2);
    auto idOp = makeOperator(identityMat(2), dom, cod);
    auto idConv = convexifyOperator(idOp, Rat(2));
    CHECK(idConv.entries[0][0].exact);
    CHECK(idConv.entries[0][0].lo == 1);
    CHECK(idConv.entries[1][0].lo == 0);
    CHECK(idConv.domain->kind == NormDescriptor::Kind::Convexify);

    RatMat diag = zeroMat(2, 2);
    diag[0][0] = 4;
    diag[1][1] = 9;
    auto dOp = convexifyOperator(makeOperator(diag, dom, cod), Rat(2));
    CHECK(dOp.entries[0][0].lo == 2);
    CHECK(dOp.entries[1][1].lo == 3);

    RatMat skew = zeroMat(3, 2);
    skew[0][0] = 2;
    skew[1][0] = 3;
    skew[2][1] = 5;
    auto sOp = convexifyOperator(makeOperator(skew, descLp(Rat(1), 2), descLp(Rat(1), 3)), Rat(2));
    CHECK(sOp.entries[1][0].contains(ratSqrt(Rat(3)).lo));
    CHECK_FALSE(sOp.entries[2][1].exact);

    RatMat overlap = zeroMat(2, 2);
    overlap[0][0] = 1;
    overlap[0][1] = 1;
    CHECK_THROWS_AS(convexifyOperator(makeOperator(overlap, dom, cod), Rat(2)),
                    std::invalid_argument);
}

TEST_CASE("tree operator", "[spaces]") {
    TreeNodeSet nodes{{}, {1}, {1, 1}, {2}};
    auto full = treeOperator(nodes, nodes);
    // image of the chain indicator has Z-norm = chain length
    FinVector chainInd{Rat(1), Rat(1), Rat(1), Rat(0)};
    auto img = full.apply(chainInd);
    std::vector<Value> bridged(img.begin(), img.end());
    CHECK(norm(full.codomain, bridged).lo == 3);

    auto rootOnly = treeOperator(nodes, TreeNodeSet{{}});
    CHECK(rankOf(rootOnly.exactEntries()) == 1);

    auto zero = treeOperator(nodes, TreeNodeSet{});
    CHECK(rankOf(zero.exactEntries()) == 0);

    CHECK_THROWS_AS(treeOperator(nodes, TreeNodeSet{{1}}), std::invalid_argument);
    CHECK_THROWS_AS(treeOperator(nodes, TreeNodeSet{{}, {3}}), std::invalid_argument);
}

TEST_CASE("W space truncations", "[spaces]") {
    CHECK(wSpaceApprox(Ordinal())->kind == NormDescriptor::Kind::Lp);
    CHECK(wSpaceApprox(Ordinal())->dimension() == 1);

    WTruncation tr;
    tr.summands = 2;
    auto w1 = wSpaceApprox(ordOne(), tr);
    REQUIRE(w1->kind == NormDescriptor::Kind::DirectSum);
    CHECK(w1->outer->p == 2);
    REQUIRE(w1->inners.size() == 2);
    CHECK(w1->inners[0]->dimension() == 1);   // W_0
    CHECK(w1->inners[1]->dimension() == 2);   // W_0 oplus_1 W_0

    auto wOmega = wSpaceApprox(ordOmega(), tr);
    REQUIRE(wOmega->kind == NormDescriptor::Kind::DirectSum);
    REQUIRE(wOmega->inners.size() == 2);
    CHECK(descToString(wOmega->inners[0]) == descToString(wSpaceApprox(ordOne(), tr)));
    CHECK(descToString(wOmega->inners[1]) == descToString(wSpaceApprox(Ordinal::fromInt(2), tr)));

    CHECK(vSpaceApprox(ordOne(), tr)->kind == NormDescriptor::Kind::Lp);
    CHECK(vSpaceApprox(ordOne(), tr)->dimension() == w1->dimension());

    WTruncation tight;
    tight.summands = 4;
    tight.maxDim = 10;
    CHECK_THROWS_WITH(wSpaceApprox(Ordinal::fromInt(3), tight), Catch::Contains("budget"));
}

TEST_CASE("descriptor grammar round trip", "[spaces]") {
    for (const char* s :
         {"lp(2,4)", "lp(inf,3)", "lp(3/2,5)", "schreier(1,6)", "xxi2(1,6)",
          "z(1,2,[[],[1],[1,1]])", "conv(lp(1,2),2)", "summing(5)",
          "dsum(lp(2,2); lp(1,2),summing(3))"}) {
        auto d = parseDescriptor(s);
        auto d2 = parseDescriptor(descToString(d));
        CHECK(descToString(d) == descToString(d2));
    }
    CHECK_THROWS_AS(parseDescriptor("lq(2,2)"), std::invalid_argument);
    CHECK_THROWS_AS(parseDescriptor("z(2,3,[[]])"), std::invalid_argument);
}

TEST_CASE("vector grammar", "[spaces]") {
    FinVector v = parseVector("[1, -2/3, 0]");
    REQUIRE(v.size() == 3);
    CHECK(v[1] == Rat(-2, 3));
    CHECK(parseVector(vectorToString(v)) == v);
    CHECK(parseVector("[]").empty());
    CHECK_THROWS_AS(parseVector("1,2"), std::invalid_argument);
}

TEST_CASE("norm budgets", "[spaces]") {
    CHECK_THROWS_WITH(norm(descSchreier(ordOne(), 30), FinVector(30, Rat(1))),
                      Catch::Contains("budget"));
}
