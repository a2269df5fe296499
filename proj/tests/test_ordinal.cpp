#include "oix/ordinal.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace oix;

namespace {

Ordinal O(const std::string& s) { return parseOrdinal(s); }

// small enumeration below w^3 with coefficients <= 3
std::vector<Ordinal> smallUniverse() {
    std::vector<Ordinal> all;
    for (int a2 = 0; a2 <= 3; ++a2)
        for (int a1 = 0; a1 <= 3; ++a1)
            for (int a0 = 0; a0 <= 3; ++a0) {
                Ordinal o;
                if (a2) o.terms.push_back({Ordinal::fromInt(2), Int(a2)});
                if (a1) o.terms.push_back({Ordinal::fromInt(1), Int(a1)});
                if (a0) o.terms.push_back({Ordinal::fromInt(0), Int(a0)});
                all.push_back(std::move(o));
            }
    return all;
}

}  // namespace

TEST_CASE("cnf addition", "[ordinal]") {
    CHECK(ordAdd(O("1"), O("w")) == O("w"));
    CHECK(ordAdd(O("w^(2)"), O("w + 1")) == O("w^(2) + w + 1"));
    CHECK(ordAdd(O("w*2 + 3"), O("w*3")) == O("w*5"));
    CHECK(ordAdd(O("0"), O("w")) == O("w"));
    CHECK(ordAdd(O("w"), O("0")) == O("w"));
}

TEST_CASE("cnf multiplication", "[ordinal]") {
    CHECK(ordMul(O("2"), O("w")) == O("w"));
    CHECK(ordMul(O("w*2"), O("w")) == O("w^(2)"));
    CHECK(ordMul(O("w + 1"), O("w + 1")) == O("w^(2) + w + 1"));
    CHECK(ordMul(O("w"), O("0")) == O("0"));
    CHECK(ordMul(O("0"), O("w^(2)")) == O("0"));
}

TEST_CASE("omega powers", "[ordinal]") {
    CHECK(omegaPow(O("0")) == O("1"));
    CHECK(omegaPow(O("1")) == O("w"));
    Ordinal p = omegaPow(O("w + 1"));
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].exp == O("w + 1"));
    CHECK(p.terms[0].coeff == 1);
}

TEST_CASE("classification", "[ordinal]") {
    auto c1 = ordClassify(O("w*2 + 5"));
    REQUIRE(c1.kind == OrdKind::Successor);
    CHECK(*c1.pred == O("w*2 + 4"));
    CHECK(ordClassify(O("w^(2)")).kind == OrdKind::Limit);
    CHECK(ordClassify(O("0")).kind == OrdKind::Zero);
    auto c2 = ordClassify(O("w + 1"));
    REQUIRE(c2.kind == OrdKind::Successor);
    CHECK(*c2.pred == O("w"));
}

TEST_CASE("fundamental sequences", "[ordinal]") {
    CHECK(fundamentalSeq(O("w"), 3) == O("3"));
    CHECK(fundamentalSeq(O("w^(2)"), 2) == O("w*2 + 1"));
    CHECK(fundamentalSeq(O("w^(w)"), 2) == O("w^(2) + 1"));
    CHECK_THROWS_AS(fundamentalSeq(O("5"), 1), std::domain_error);
    CHECK_THROWS_AS(fundamentalSeq(O("w + 1"), 1), std::domain_error);
}

TEST_CASE("fundamental sequence properties below w^3", "[ordinal]") {
    auto universe = smallUniverse();
    for (const auto& a : universe) {
        if (!ordIsLimit(a)) continue;
        Ordinal prev;
        for (long n = 1; n <= 8; ++n) {
            Ordinal fn = fundamentalSeq(a, n);
            CHECK(ordIsSuccessor(fn));
            CHECK(fn < a);
            if (n > 1) CHECK(prev < fn);
            prev = fn;
        }
        // cofinality against every enumerable b < a
        for (const auto& b : universe) {
            if (!(b < a)) continue;
            bool exceeded = false;
            for (long n = 1; n <= 40 && !exceeded; ++n)
                exceeded = b < fundamentalSeq(a, n);
            CHECK(exceeded);
        }
    }
}

TEST_CASE("multiplicative indecomposability", "[ordinal]") {
    CHECK(isMultiplicativelyIndecomposable(O("w")));
    CHECK_FALSE(isMultiplicativelyIndecomposable(O("w^(2)")));
    CHECK(isMultiplicativelyIndecomposable(O("1")));
    CHECK(isMultiplicativelyIndecomposable(O("0")));
    CHECK(isMultiplicativelyIndecomposable(O("w^(w)")));
    CHECK(isMultiplicativelyIndecomposable(O("w^(w^(2))")));
    CHECK_FALSE(isMultiplicativelyIndecomposable(O("w^(3)")));
    CHECK_FALSE(isMultiplicativelyIndecomposable(O("2")));

    // brute force over the bounded enumeration
    auto universe = smallUniverse();
    for (const auto& a : universe) {
        if (a.isZero()) continue;
        bool brute = true;
        for (const auto& x : universe) {
            if (!(x < a)) continue;
            for (const auto& y : universe) {
                if (!(y < a)) continue;
                if (!(ordMul(x, y) < a)) {
                    brute = false;
                    break;
                }
            }
            if (!brute) break;
        }
        if (a == O("2")) {
            // boundary case: 2 is closed under products of smaller ordinals
            // (1*1 < 2) but the classification used here follows the stated
            // form {0, 1, w^(w^z)} and excludes it
            CHECK(brute);
            CHECK_FALSE(isMultiplicativelyIndecomposable(a));
            continue;
        }
        CHECK(brute == isMultiplicativelyIndecomposable(a));
    }
}

TEST_CASE("absorption at multiplicatively indecomposable ordinals", "[ordinal]") {
    for (const auto& zeta : {O("0"), O("1"), O("2")}) {
        Ordinal a = omegaPow(omegaPow(zeta));
        for (const auto& alpha : smallUniverse()) {
            if (alpha.isZero() || !(alpha < a)) continue;
            CHECK(ordMul(alpha, a) == a);
        }
    }
}

TEST_CASE("ordering and monotonicity", "[ordinal]") {
    std::mt19937 rng(7);
    auto universe = smallUniverse();
    std::uniform_int_distribution<size_t> pick(0, universe.size() - 1);
    for (int it = 0; it < 500; ++it) {
        const Ordinal &a = universe[pick(rng)], &b = universe[pick(rng)], &c = universe[pick(rng)];
        // total order
        int ab = ordCmp(a, b);
        CHECK(ab == -ordCmp(b, a));
        if (ab == 0) CHECK(a == b);
        if (b < c) {
            CHECK(ordAdd(a, b) < ordAdd(a, c));
            if (!a.isZero()) CHECK(ordMul(a, b) < ordMul(a, c));
        }
        CHECK(ordAdd(ordAdd(a, b), c) == ordAdd(a, ordAdd(b, c)));
        CHECK(ordMul(a, ordAdd(b, c)) == ordAdd(ordMul(a, b), ordMul(a, c)));
    }
}

TEST_CASE("grammar round trip", "[ordinal]") {
    for (const char* s :
         {"0", "1", "w", "w + 4", "w^(2)*3 + w + 4", "w^(w)", "w^(w + 1)*2 + w^(2) + 7"}) {
        Ordinal a = O(s);
        CHECK(parseOrdinal(ordToString(a)) == a);
        CHECK(ordToString(a) == s);
    }
    // non-canonical input normalizes through the arithmetic
    CHECK(ordToString(O("1 + w")) == "w");
    CHECK_THROWS_AS(O("w^"), std::invalid_argument);
    CHECK_THROWS_AS(O("q"), std::invalid_argument);
    CHECK_THROWS_AS(O("w*0"), std::invalid_argument);
}

TEST_CASE("tower depth cap", "[ordinal]") {
    Ordinal t = O("w");
    for (int i = 0; i < 30; ++i) t = omegaPow(t);
    CHECK_THROWS_AS(omegaPow(t), std::invalid_argument);
}
