#pragma once

#include "oix/domination.hpp"
#include "oix/indices.hpp"
#include "oix/trees.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace oix {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace verify_detail {

// ---------------------------------------------------------------------------
// order-type oracle: ordinals with finite exponents realized as lists of
// lexicographic blocks. A block of order k is a copy of N^k; a list denotes
// the concatenation. Sum is list concatenation; a product expands blockwise
// (W * point = W, W * N^q-block = one block of order max(W)+q). The normal
// form is read off by counting blocks not followed by any higher block.
// ---------------------------------------------------------------------------

using PieceList = std::vector<int>;

inline PieceList piecesOf(const Ordinal& a) {
    PieceList p;
    for (const auto& t : a.terms) {
        auto e = ordFiniteValue(t.exp);
        if (!e) throw std::invalid_argument("oracle: exponent not finite");
        for (Int c = 0; c < t.coeff; ++c) p.push_back(static_cast<int>(e->get_si()));
    }
    return p;
}

inline Ordinal cnfOfPieces(const PieceList& p) {
    std::map<int, long, std::greater<int>> coeff;
    int maxAfter = -1;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        if (*it >= maxAfter) {
            coeff[*it] += 1;
            maxAfter = std::max(maxAfter, *it);
        }
    }
    Ordinal r;
    for (const auto& [k, c] : coeff)
        r.terms.push_back({Ordinal::fromInt(k), Int(c)});
    return r;
}

inline Ordinal oracleAdd(const Ordinal& a, const Ordinal& b) {
    PieceList p = piecesOf(a), q = piecesOf(b);
    p.insert(p.end(), q.begin(), q.end());
    return cnfOfPieces(p);
}

inline Ordinal oracleMul(const Ordinal& a, const Ordinal& b) {
    if (a.isZero() || b.isZero()) return Ordinal();
    PieceList pa = piecesOf(a);
    int maxA = *std::max_element(pa.begin(), pa.end());
    PieceList out;
    for (int q : piecesOf(b)) {
        if (q == 0)
            out.insert(out.end(), pa.begin(), pa.end());
        else
            out.push_back(maxA + q);
    }
    return cnfOfPieces(out);
}

// --- random generators (fixed seeds; all results deterministic) ---

inline Ordinal randomOrdinalBelowOmegaOmega(std::mt19937& rng, int maxExp = 5, int maxTerms = 3,
                                            int maxCoeff = 9) {
    std::uniform_int_distribution<int> termCount(0, maxTerms);
    std::uniform_int_distribution<int> expD(0, maxExp), coeffD(1, maxCoeff);
    int t = termCount(rng);
    std::vector<int> exps;
    while (static_cast<int>(exps.size()) < t) {
        int e = expD(rng);
        if (std::find(exps.begin(), exps.end(), e) == exps.end()) exps.push_back(e);
    }
    std::sort(exps.rbegin(), exps.rend());
    Ordinal r;
    for (int e : exps) r.terms.push_back({Ordinal::fromInt(e), Int(coeffD(rng))});
    return r;
}

inline FiniteTree randomTree(std::mt19937& rng, int maxNodes, int maxLabel = 3) {
    std::uniform_int_distribution<int> labelD(1, maxLabel);
    std::vector<Seq> nodes{Seq{}};
    std::uniform_int_distribution<size_t> pick(0, 0);
    int target = std::uniform_int_distribution<int>(1, maxNodes)(rng);
    while (static_cast<int>(nodes.size()) < target) {
        size_t i = std::uniform_int_distribution<size_t>(0, nodes.size() - 1)(rng);
        Seq child = nodes[i];
        child.push_back(Ordinal::fromInt(labelD(rng)));
        nodes.push_back(std::move(child));
    }
    return FiniteTree::closureOf(true, nodes);
}

inline RatMat randomRankRMatrix(std::mt19937& rng, size_t m, size_t r) {
    std::uniform_int_distribution<int> entry(-2, 2);
    while (true) {
        RatMat B = zeroMat(m, r), C = zeroMat(r, m);
        for (auto& row : B)
            for (auto& x : row) x = entry(rng);
        for (auto& row : C)
            for (auto& x : row) x = entry(rng);
        RatMat A = matMul(B, C);
        if (rankOf(A) == r) return A;
    }
}

inline std::string ordStr(const Ordinal& o) { return ordToString(o); }

struct Check {
    bool ok = true;
    std::ostringstream why;

    template <class A, class B>
    void eq(const A& a, const B& b, const std::string& what) {
        if (!(a == b) && ok) {
            ok = false;
            why << what;
        }
    }
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why << what;
        }
    }
};

// ---------------------------------------------------------------------------
// the thirteen criteria
// ---------------------------------------------------------------------------

inline CriterionResult c1_ordinalLaws() {
    Check ck;
    std::mt19937 rng(1001);
    for (int it = 0; it < 10000 && ck.ok; ++it) {
        Ordinal a = randomOrdinalBelowOmegaOmega(rng);
        Ordinal b = randomOrdinalBelowOmegaOmega(rng);
        Ordinal c = randomOrdinalBelowOmegaOmega(rng);
        ck.eq(ordAdd(ordAdd(a, b), c), ordAdd(a, ordAdd(b, c)),
              "add associativity failed at " + ordStr(a) + ", " + ordStr(b) + ", " + ordStr(c));
        ck.eq(ordMul(ordMul(a, b), c), ordMul(a, ordMul(b, c)),
              "mul associativity failed at " + ordStr(a) + ", " + ordStr(b) + ", " + ordStr(c));
        ck.eq(ordMul(a, ordAdd(b, c)), ordAdd(ordMul(a, b), ordMul(a, c)),
              "left distributivity failed at " + ordStr(a) + ", " + ordStr(b) + ", " + ordStr(c));
        ck.eq(ordMul(omegaPow(a), omegaPow(b)), omegaPow(ordAdd(a, b)),
              "omega power law failed at " + ordStr(a) + ", " + ordStr(b));
        if (b < c) {
            ck.require(ordAdd(a, b) < ordAdd(a, c), "add not strictly right-monotone");
            if (!a.isZero())
                ck.require(ordMul(a, b) < ordMul(a, c), "mul not strictly right-monotone");
        }
    }
    return {1, "ordinal laws (10^4 randomized CNF triples)", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c2_orderTypeOracle() {
    Check ck;
    std::vector<Ordinal> all;
    for (int a2 = 0; a2 <= 5; ++a2)
        for (int a1 = 0; a1 <= 5; ++a1)
            for (int a0 = 0; a0 <= 5; ++a0) {
                Ordinal o;
                if (a2) o.terms.push_back({Ordinal::fromInt(2), Int(a2)});
                if (a1) o.terms.push_back({Ordinal::fromInt(1), Int(a1)});
                if (a0) o.terms.push_back({Ordinal::fromInt(0), Int(a0)});
                all.push_back(std::move(o));
            }
    for (const auto& a : all) {
        for (const auto& b : all) {
            if (!ck.ok) break;
            ck.eq(ordAdd(a, b), oracleAdd(a, b),
                  "sum disagrees with order-type oracle at " + ordStr(a) + " + " + ordStr(b));
            ck.eq(ordMul(a, b), oracleMul(a, b),
                  "product disagrees with order-type oracle at " + ordStr(a) + " * " + ordStr(b));
        }
        if (!ck.ok) break;
    }
    return {2, "order-type oracle agreement below w^3", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c3_minimalTreeRanks() {
    Check ck;
    for (long xi = 0; xi <= 12; ++xi)
        ck.eq(rank(minimalTreeFinite(xi)), Int(xi),
              "rank(T_" + std::to_string(xi) + ") != " + std::to_string(xi));
    for (long n = 1; n <= 10; ++n)
        ck.eq(rank(minimalTreeOmegaTruncated(n)), Int(n),
              "truncated T_w rank mismatch at n=" + std::to_string(n));
    return {3, "minimal tree ranks", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c4_derivativeIdentities() {
    Check ck;
    std::mt19937 rng(1004);
    for (int it = 0; it < 500 && ck.ok; ++it) {
        FiniteTree t = randomTree(rng, 120);
        long rk = rank(t).get_si();
        for (long z = 0; z <= rk && ck.ok; ++z) {
            FiniteTree tz = derivativePower(t, z);
            for (long x = 0; x + z <= rk; ++x) {
                ck.eq(derivativePower(tz, x), derivativePower(t, z + x),
                      "(T^z)^x != T^(z+x) at iteration " + std::to_string(it));
                if (!ck.ok) break;
            }
        }
        // subtree identity on a few sampled nodes
        for (int s = 0; s < 3 && !t.nodes.empty() && ck.ok; ++s) {
            const Seq& at =
                t.nodes[std::uniform_int_distribution<size_t>(0, t.nodes.size() - 1)(rng)];
            for (long x = 0; x <= rk; ++x) {
                ck.eq(subtreeAt(derivativePower(t, x), at), derivativePower(subtreeAt(t, at), x),
                      "(T^x)(t) != (T(t))^x at iteration " + std::to_string(it));
                if (!ck.ok) break;
            }
        }
    }
    return {4, "derivative identities on 500 random trees", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c5_familyIndexConvergence() {
    Check ck;
    for (long k = 1; k <= 6 && ck.ok; ++k) {
        auto ak = famAk(k);
        for (long n = k; n <= std::min<long>(k + 4, 10); ++n)
            ck.eq(Int(cbIndexRestricted(restrict(ak, n))), Int(k),
                  "cb index of A_" + std::to_string(k) + " at n=" + std::to_string(n) +
                      " is not " + std::to_string(k));
    }
    auto a2a3 = famCompose(famAk(2), famAk(3));
    ck.eq(iotaSymbolic(a2a3), Ordinal::fromInt(6), "iota(A_2[A_3]) != 6 = iota(G) * iota(F)");
    for (long n = 6; n <= 10; ++n)
        ck.eq(Int(cbIndexRestricted(restrict(a2a3, n))), Int(6),
              "cb index of A_2[A_3] at n=" + std::to_string(n) + " is not 6");
    // strict growth probe for S_1: cb strictly increasing for 2 <= n <= 16.
    // The restriction plateaus every other step (cb = ceil(n/2)), so this
    // subcheck reports its counterexample rather than being weakened.
    auto s1 = famSchreier(ordOne());
    std::vector<long> cb;
    for (long n = 2; n <= 16; ++n) cb.push_back(cbIndexRestricted(restrict(s1, n)));
    bool nonDecreasing = true, overallGrowth = cb.back() > cb.front(), everyOther = true;
    std::string plateau;
    for (size_t i = 0; i + 1 < cb.size(); ++i) {
        if (cb[i + 1] < cb[i]) nonDecreasing = false;
        if (cb[i + 1] == cb[i] && plateau.empty())
            plateau = "cb(S_1," + std::to_string(i + 2) + ") = cb(S_1," + std::to_string(i + 3) +
                      ") = " + std::to_string(cb[i]);
        if (i + 2 < cb.size() && cb[i + 2] <= cb[i]) everyOther = false;
    }
    ck.require(nonDecreasing && overallGrowth && everyOther,
               "cb index of S_1 restriction not growing");
    bool strict = plateau.empty();
    if (!strict && ck.ok) {
        ck.ok = false;
        ck.why << "strict per-step increase fails: " << plateau
               << " (non-decreasing, cb(n+2) > cb(n), and overall growth all verified; "
                  "the restricted index provably plateaus at every other step)";
    }
    return {5, "family index convergence", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c6_spreadingHereditary() {
    Check ck;
    std::vector<std::pair<std::string, FamilyPtr>> battery = {
        {"S0", famS0()},
        {"S(1)", famSchreier(ordOne())},
        {"S(2)", famSchreier(Ordinal::fromInt(2))},
        {"A(1)", famAk(1)},
        {"A(2)", famAk(2)},
        {"A(3)", famAk(3)},
        {"A(4)", famAk(4)},
        {"A(2)[S(1)]", famCompose(famAk(2), famSchreier(ordOne()))},
        {"S(1)[A(2)]", famCompose(famSchreier(ordOne()), famAk(2))},
    };
    for (const auto& [name, fam] : battery) {
        if (!ck.ok) break;
        auto r = restrict(fam, 12);
        // hereditary: removing any single element keeps membership
        for (const auto& e : r.members) {
            for (size_t drop = 0; drop < e.size(); ++drop) {
                FinSet sub;
                for (size_t i = 0; i < e.size(); ++i)
                    if (i != drop) sub.push_back(e[i]);
                ck.require(std::binary_search(r.members.begin(), r.members.end(), sub),
                           name + " not hereditary");
                if (!ck.ok) break;
            }
            if (!ck.ok) break;
        }
        auto sp = isSpreadingRestricted(r);
        ck.require(sp.spreading, name + " not spreading within {1..12}");
    }
    return {6, "spreading and hereditariness on {1..12}", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c7_gasparis() {
    Check ck;
    auto r1 = gasparisPrefixSearch(famAk(3), famSchreier(ordOne()), 5, 20);
    ck.require(r1.found, "(A_3, S_1) prefix not found");
    if (r1.found) {
        ck.eq(r1.prefix, FinSet({3, 4, 5, 6, 7}), "(A_3, S_1) prefix is not (3,4,5,6,7)");
        // exhaustive revalidation straight from the definition
        auto f = famAk(3);
        auto g = famSchreier(ordOne());
        FamilyBudget fb;
        fb.maxN = 20;
        for (const auto& e : restrict(f, 20, fb).members) {
            FinSet img;
            for (long i : e) img.push_back(i <= 5 ? r1.prefix[i - 1] : r1.prefix[4] + (i - 5));
            ck.require(memberExpr(g, img), "revalidation failed");
            if (!ck.ok) break;
        }
    }
    auto r2 = gasparisPrefixSearch(famSchreier(ordOne()), famAk(2), 3, 30);
    ck.require(!r2.found, "(S_1, A_2) unexpectedly found a prefix");
    return {7, "Gasparis prefix search", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c8_normOracles() {
    Check ck;
    Rat tol(1, 1000000000);
    // Schreier(1,4), ones -> 2, against direct subset enumeration
    {
        auto d = descSchreier(ordOne(), 4);
        FinVector v(4, Rat(1));
        Value nv = norm(d, v);
        Rat best(0);
        for (int mask = 1; mask < 16; ++mask) {
            FinSet e;
            for (int i = 0; i < 4; ++i)
                if ((mask >> i) & 1) e.push_back(i + 1);
            if (!memberSchreier(ordOne(), e)) continue;
            Rat s(0);
            for (long i : e) s += v[i - 1];
            best = std::max(best, s);
        }
        ck.require(nv.exact && nv.lo == best && best == 2, "Schreier(1,4) oracle mismatch");
    }
    // XXi2(1,4), indicator of {2,3} -> 2, against exhaustive successive partitions
    {
        auto d = descXXi2(ordOne(), 4);
        FinVector v{Rat(0), Rat(1), Rat(1), Rat(0)};
        Value nv = norm(d, v);
        Rat bestSq(0);
        // enumerate all successive partitions of {1..4} into admissible sets
        std::function<void(long, Rat)> go = [&](long from, Rat acc) {
            bestSq = std::max(bestSq, acc);
            for (long a = from; a <= 4; ++a)
                for (int mask = 0; mask < (1 << (4 - a)); ++mask) {
                    FinSet e{a};
                    for (long b = a + 1; b <= 4; ++b)
                        if ((mask >> (b - a - 1)) & 1) e.push_back(b);
                    if (!memberSchreier(ordOne(), e)) continue;
                    Rat w(0);
                    for (long i : e) w += v[i - 1];
                    go(e.back() + 1, acc + w * w);
                }
        };
        go(1, Rat(0));
        ck.require(nv.contains(2) && bestSq == 4 && nv.width() <= tol,
                   "XXi2(1,4) oracle mismatch");
    }
    // Z(1,2): chain of 4 -> 4; antichain of 4 -> 2; against exhaustive
    // disjoint-segment search
    {
        TreeNodeSet chain{{}, {1}, {1, 1}, {1, 1, 1}};
        auto d = descZpq(1, 2, chain);
        FinVector v(4, Rat(1));
        Value nv = norm(d, v);
        ck.require(nv.exact && nv.lo == 4, "Z(1,2) chain norm != 4");

        TreeNodeSet star{{}, {1}, {2}, {3}, {4}};
        auto d2 = descZpq(1, 2, star);
        FinVector v2{Rat(0), Rat(1), Rat(1), Rat(1), Rat(1)};
        Value nv2 = norm(d2, v2);
        ck.require(nv2.exact && nv2.lo == 2, "Z(1,2) antichain norm != 2");

        // independent check: enumerate all disjoint segment families
        auto segCheck = [&](const TreeNodeSet& nodes, const FinVector& x, const Rat& expectSq) {
            std::vector<std::pair<size_t, size_t>> segs;  // (top, bottom) comparable pairs
            auto leq = [&](const TreeNode& s, const TreeNode& t) {
                return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
            };
            for (size_t i = 0; i < nodes.size(); ++i)
                for (size_t j = 0; j < nodes.size(); ++j)
                    if (leq(nodes[i], nodes[j])) segs.emplace_back(i, j);
            Rat best(0);
            std::function<void(size_t, std::vector<bool>&, Rat)> rec = [&](size_t k,
                                                                           std::vector<bool>& used,
                                                                           Rat acc) {
                best = std::max(best, acc);
                for (size_t s = k; s < segs.size(); ++s) {
                    std::vector<size_t> cover;
                    for (size_t u = 0; u < nodes.size(); ++u)
                        if (leq(nodes[segs[s].first], nodes[u]) && leq(nodes[u], nodes[segs[s].second]))
                            cover.push_back(u);
                    bool clash = false;
                    Rat w(0);
                    for (size_t u : cover) {
                        if (used[u]) clash = true;
                        w += ratAbs(x[u]);
                    }
                    if (clash) continue;
                    for (size_t u : cover) used[u] = true;
                    rec(s + 1, used, acc + w * w);
                    for (size_t u : cover) used[u] = false;
                }
            };
            std::vector<bool> used(nodes.size(), false);
            rec(0, used, Rat(0));
            return best == expectSq;
        };
        ck.require(segCheck(chain, v, Rat(16)), "chain segment enumeration mismatch");
        ck.require(segCheck(star, v2, Rat(4)), "antichain segment enumeration mismatch");
    }
    // summing (1,-1,1) -> 1
    {
        Value nv = norm(descSumming(3), FinVector{Rat(1), Rat(-1), Rat(1)});
        ck.require(nv.exact && nv.lo == 1, "summing norm != 1");
    }
    // conv(l1, 2) on (3,4) -> 5
    {
        Value nv = norm(descConvexify(descLp(Rat(1), 2), Rat(2)), FinVector{Rat(3), Rat(4)});
        ck.require(nv.exact && nv.lo == 5, "2-convexified l1 norm != 5");
    }
    return {8, "norm engine oracles", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c9_dominationExactness() {
    Check ck;
    // l1 -> l2 basis constant is sqrt(2) within 1e-9
    {
        auto rep = dominationConstant(descLp(Rat(1), 2), detail::standardBasis(2),
                                      descLp(Rat(2), 2), detail::standardBasis(2));
        ck.require(!rep.infinite && rep.lower * rep.lower <= 2 && 2 <= rep.upper * rep.upper &&
                       rep.upper - rep.lower <= Rat(1, 1000000000),
                   "l1 -> l2 constant not sqrt(2) within 1e-9");
    }
    // polyhedral instances against a dense grid (step 1/64 on the cube faces)
    struct Inst {
        DescPtr space;
        std::vector<FinVector> sys;
    };
    std::vector<Inst> systems;
    auto mkBasis = [&](DescPtr d) { return Inst{d, detail::standardBasis(d->dimension())}; };
    systems.push_back(mkBasis(descLp(Rat(1), 3)));
    systems.push_back(mkBasis(descLpInf(3)));
    systems.push_back(mkBasis(descSchreier(ordOne(), 3)));
    systems.push_back(mkBasis(descSumming(3)));
    {
        // one skew system per space kind
        std::vector<FinVector> skew{{Rat(1), Rat(0), Rat(0)},
                                    {Rat(1), Rat(1), Rat(0)},
                                    {Rat(0), Rat(1), Rat(1)}};
        systems.push_back({descLp(Rat(1), 3), skew});
        systems.push_back({descLpInf(3), skew});
    }
    // full-size systems at the stated bound n = 4
    systems.push_back(mkBasis(descLp(Rat(1), 4)));
    systems.push_back(mkBasis(descSchreier(ordOne(), 4)));
    // facet rows composed with the coefficient map, in doubles, so the grid
    // evaluation is a plain max of dot products
    auto composedD = [](const Inst& s) {
        auto fac = detail::facetFunctionals(s.space, 1 << 20);
        std::vector<std::vector<double>> rows;
        for (const auto& f : *fac) {
            std::vector<double> row(s.sys.size(), 0.0);
            for (size_t t = 0; t < s.sys.size(); ++t) {
                Rat acc(0);
                for (size_t i = 0; i < f.size(); ++i) acc += f[i] * s.sys[t][i];
                row[t] = ratToDouble(acc);
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    for (const auto& sx : systems) {
        auto fx = composedD(sx);
        for (const auto& sy : systems) {
            if (!ck.ok) break;
            if (sx.sys.size() != sy.sys.size()) continue;
            auto rep = dominationConstant(sx.space, sx.sys, sy.space, sy.sys);
            if (rep.infinite) continue;
            ck.require(rep.exact, "expected exact polyhedral computation");
            double K = ratToDouble(rep.lower);
            size_t n = sx.sys.size();
            auto fy = composedD(sy);
            auto evalMax = [](const std::vector<std::vector<double>>& rows,
                              const std::vector<double>& a) {
                double best = 0;
                for (const auto& row : rows) {
                    double s = 0;
                    for (size_t t = 0; t < a.size(); ++t) s += row[t] * a[t];
                    best = std::max(best, s);
                }
                return best;
            };
            // by homogeneity it suffices to sweep the faces of the unit cube
            double gridBest = 0, minDen = 1e100;
            std::vector<double> a(n, 0.0);
            for (size_t face = 0; face < n; ++face) {
                for (int sign : {1, -1}) {
                    std::function<void(size_t)> sweep = [&](size_t i) {
                        if (i == n) {
                            double den = evalMax(fy, a);
                            if (den < 1e-9) return;
                            minDen = std::min(minDen, den);
                            gridBest = std::max(gridBest, evalMax(fx, a) / den);
                            return;
                        }
                        if (i == face) {
                            a[i] = sign;
                            sweep(i + 1);
                            return;
                        }
                        for (int step = -64; step <= 64; ++step) {
                            a[i] = step / 64.0;
                            sweep(i + 1);
                        }
                    };
                    sweep(0);
                }
            }
            // Lipschitz tolerance for the 1/64 mesh on the cube faces
            double eps = (1.0 / 64.0) * static_cast<double>(n);
            double lip = 0;
            for (const auto& v : sx.sys) lip += ratToDouble(norm(sx.space, v).hi);
            double tolG = eps * (lip + K * lip) / std::max(minDen, 1e-6) + 1e-6;
            ck.require(gridBest <= K + 1e-9, "grid exceeded the exact constant");
            ck.require(K - gridBest <= tolG, "exact constant too far above the grid maximum");
        }
        if (!ck.ok) break;
    }
    return {9, "domination exactness vs dense grid", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c10_finiteRankIndex() {
    Check ck;
    std::mt19937 rng(1010);
    for (int it = 0; it < 200 && ck.ok; ++it) {
        size_t m = 3 + static_cast<size_t>(it % 3);  // ambient 3..5
        size_t r = 1 + static_cast<size_t>(it % 3);
        if (r > m) r = m;
        RatMat A = randomRankRMatrix(rng, m, r);
        auto dom = descLp(Rat(1), static_cast<long>(m));
        auto op = makeOperator(A, dom, dom);
        // calibrate K on an independent-column chain
        RatMat At = transpose(A);
        std::vector<size_t> cols;
        {
            RatMat probe;
            for (size_t j = 0; j < m && cols.size() < r; ++j) {
                probe.push_back(At[j]);
                if (rankOf(probe) == cols.size() + 1)
                    cols.push_back(j);
                else
                    probe.pop_back();
            }
        }
        std::vector<FinVector> chain;
        for (size_t j : cols) {
            FinVector e(m, Rat(0));
            e[j] = 1;
            chain.push_back(std::move(e));
        }
        auto images = detail::applyExact(op, chain);
        auto basisR = detail::standardBasis(static_cast<long>(r));
        auto calib = dominationConstant(descLp(Rat(1), static_cast<long>(r)), basisR, dom, images);
        ck.require(!calib.infinite && calib.exact, "calibration not exact");
        if (!ck.ok) break;
        ProbeConfig cfg;
        cfg.K = calib.upper;
        cfg.basis = descLp(Rat(1), 1);
        cfg.maxDepth = static_cast<long>(r);
        cfg.pool = detail::standardBasis(static_cast<long>(m));
        auto rep = npDepthProbe(op, cfg);
        ck.require(rep.witnessedDepth == static_cast<long>(r),
                   "witnessed depth != rank at iteration " + std::to_string(it));
        ck.require(rep.impossibleBeyond && *rep.impossibleBeyond == static_cast<long>(r) + 1 &&
                       rep.reason == DepthReport::Reason::RankBound,
                   "rank bound not reported at iteration " + std::to_string(it));
        ck.require(rep.finiteIndexClaim && *rep.finiteIndexClaim == static_cast<long>(r) + 1,
                   "finite index claim != 1 + rank at iteration " + std::to_string(it));
    }
    return {10, "finite-rank index theorem on 200 random matrices", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c11_perturbationStability() {
    Check ck;
    std::mt19937 rng(1011);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int it = 0; it < 100 && ck.ok; ++it) {
        size_t m = 2 + static_cast<size_t>(it % 3);
        RatMat A = zeroMat(m, m);
        for (auto& row : A)
            for (auto& x : row) x = entry(rng);
        size_t d = 1 + static_cast<size_t>(it % 2);
        // chain of standard basis vectors with independent images
        std::vector<size_t> cols;
        RatMat At = transpose(A), probe;
        for (size_t j = 0; j < m && cols.size() < d; ++j) {
            probe.push_back(At[j]);
            if (rankOf(probe) == cols.size() + 1)
                cols.push_back(j);
            else
                probe.pop_back();
        }
        if (cols.size() < d) continue;
        auto dom = descLp(Rat(1), static_cast<long>(m));
        auto op = makeOperator(A, dom, dom);
        std::vector<FinVector> chain;
        for (size_t j : cols) {
            FinVector e(m, Rat(0));
            e[j] = 1;
            chain.push_back(std::move(e));
        }
        auto images = detail::applyExact(op, chain);
        auto calib = dominationConstant(descLp(Rat(1), static_cast<long>(d)),
                                        detail::standardBasis(static_cast<long>(d)), dom, images);
        if (calib.infinite) continue;
        Rat K = std::max(calib.upper, Rat(1));
        ProbeConfig cfg;
        cfg.K = K;
        cfg.basis = descLp(Rat(1), 1);
        ck.require(npMember(op, cfg, chain), "chain not a witness for A");
        // rational perturbation with ||P|| = 1/(4K) < 1/(2K), exactly scaled
        RatMat P = zeroMat(m, m);
        for (auto& row : P)
            for (auto& x : row) x = entry(rng);
        auto pn = operatorNorm(makeOperator(P, dom, dom));
        if (pn.infinite || pn.upper == 0) continue;
        ck.require(pn.exact, "perturbation norm not exact");
        Rat scale = Rat(1) / (Rat(4) * K * pn.upper);
        RatMat B = A;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) B[i][j] += scale * P[i][j];
        auto opB = makeOperator(B, dom, dom);
        ProbeConfig cfg2 = cfg;
        cfg2.K = 2 * K;
        ck.require(npMember(opB, cfg2, chain),
                   "perturbed operator lost the witness at iteration " + std::to_string(it));
    }
    return {11, "perturbation stability of witness chains", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c12_spreadingModelCertificates() {
    Check ck;
    // Schreier basis passes the l1^1 certificate with a = b = 1 up to n = 10
    {
        auto X = descSchreier(ordOne(), 10);
        auto cert = spreadingModelCertificate(X, detail::standardBasis(10), Rat(1), false,
                                              ordOne(), Rat(1), Rat(1));
        ck.require(cert.pass, "Schreier basis failed the l1^1 certificate");
    }
    // the l_inf basis fails with witness E = {2,3}
    {
        auto X = descLpInf(8);
        auto cert = spreadingModelCertificate(X, detail::standardBasis(8), Rat(1), false,
                                              ordOne(), Rat(1), Rat(1));
        ck.require(!cert.pass, "l_inf basis unexpectedly passed");
        ck.eq(cert.failingSet, FinSet({2, 3}), "first failing set is not {2,3}");
        if (cert.witnessCoeffs.size() == 2)
            ck.require(ratAbs(cert.witnessCoeffs[0]) == ratAbs(cert.witnessCoeffs[1]) &&
                           cert.witnessCoeffs[0] != 0,
                       "witness coefficients are not the equal-weight pair");
        ck.require(cert.lowerFailed, "expected the lower estimate to fail");
    }
    // c_0 summing-basis chains pass wcMember at K = 1 up to depth 8
    {
        long dim = 8;
        auto X = descLpInf(dim);
        auto op = makeOperator(identityMat(dim), X, X);
        for (long d = 1; d <= 8 && ck.ok; ++d) {
            std::vector<FinVector> chain;
            for (long i = 1; i <= d; ++i) {
                FinVector v(dim, Rat(0));
                for (long j = i; j <= dim; ++j) v[j - 1] = 1;
                chain.push_back(std::move(v));
            }
            ck.require(wcMember(op, Rat(1), chain),
                       "summing chain rejected at depth " + std::to_string(d));
        }
    }
    return {12, "spreading-model and weak-compactness certificates", ck.ok, ck.why.str(), 0};
}

inline CriterionResult c13_wSpaceTruncation() {
    Check ck;
    WTruncation tr;
    tr.summands = 3;
    auto W = wSpaceApprox(ordOne(), tr);
    ck.eq(Int(W->dimension()), Int(6), "W_1 truncation dimension != 6");
    std::mt19937 rng(1013);
    std::uniform_int_distribution<int> num(-9, 9);
    for (int it = 0; it < 50 && ck.ok; ++it) {
        FinVector v(6);
        for (auto& x : v) {
            x = Rat(num(rng), 1 + (num(rng) + 10) % 5);
            x.canonicalize();
        }
        // nested composition by hand: sqrt(a^2 + (|b|+|c|)^2 + (|d|+|e|+|f|)^2)
        Rat b1 = ratAbs(v[0]);
        Rat b2 = ratAbs(v[1]) + ratAbs(v[2]);
        Rat b3 = ratAbs(v[3]) + ratAbs(v[4]) + ratAbs(v[5]);
        Rat sq = b1 * b1 + b2 * b2 + b3 * b3;
        Value nv = norm(W, v);
        ck.require(nv.lo * nv.lo <= sq && sq <= nv.hi * nv.hi &&
                       nv.width() <= Rat(1, 1000000000),
                   "W_1 truncation norm mismatch at iteration " + std::to_string(it));
    }
    return {13, "W space truncation sanity", ck.ok, ck.why.str(), 0};
}

}  // namespace verify_detail

/// Stated per-criterion time budgets, enforced as part of the pass.
inline double criterionTimeLimit(int id) {
    switch (id) {
        case 1: return 5;
        case 2: return 30;
        case 3: return 5;
        case 4: return 20;
        case 5: return 60;
        case 6: return 60;
        case 7: return 10;
        case 8: return 30;
        case 9: return 120;
        case 10: return 60;
        case 11: return 60;
        case 12: return 30;
        case 13: return 10;
        default: return 1e9;
    }
}

inline std::vector<CriterionResult> runAcceptance(int only = 0) {
    std::vector<CriterionResult (*)()> fns = {
        verify_detail::c1_ordinalLaws,          verify_detail::c2_orderTypeOracle,
        verify_detail::c3_minimalTreeRanks,     verify_detail::c4_derivativeIdentities,
        verify_detail::c5_familyIndexConvergence, verify_detail::c6_spreadingHereditary,
        verify_detail::c7_gasparis,             verify_detail::c8_normOracles,
        verify_detail::c9_dominationExactness,  verify_detail::c10_finiteRankIndex,
        verify_detail::c11_perturbationStability, verify_detail::c12_spreadingModelCertificates,
        verify_detail::c13_wSpaceTruncation,
    };
    std::vector<CriterionResult> out;
    for (size_t i = 0; i < fns.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (only != 0 && only != id) continue;
        auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fns[i]();
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.pass && r.seconds > criterionTimeLimit(id)) {
            r.pass = false;
            r.detail = "time budget exceeded (" + std::to_string(r.seconds) + " s)";
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace oix
