#pragma once

#include "oix/linalg.hpp"
#include "oix/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oix {

/// Least K with (xs) <=_K (ys), reported as a certified bracket. exact means
/// lower == upper. witness attains (or near-attains) the supremum; infinite
/// means some coefficient vector kills the right side but not the left.
struct DominationReport {
    bool infinite = false;
    Rat lower{0};
    Rat upper{0};
    bool exact = false;
    RatVec witness;

    Value asValue() const {
        if (infinite) throw std::domain_error("infinite domination constant");
        return Value(lower, upper);
    }
};

struct DominationBudget {
    long facetCap = 200000;
    long vertexCap = 50000;
    int ascentStarts = 64;
    int ascentIters = 160;
};

enum class Tristate { True, False, Unknown };

/// Is the least constant <= K?
inline Tristate dominatesWithin(const DominationReport& r, const Rat& K) {
    if (r.infinite) return Tristate::False;
    if (r.upper <= K) return Tristate::True;
    if (r.lower > K) return Tristate::False;
    return Tristate::Unknown;
}

namespace detail {

/// Facet functionals of a polyhedral descriptor: norm(v) = max_f <f,v>.
/// Conservative whitelist: l1, l_inf, Schreier, Summing, and l1 direct sums
/// of these. Returns nullopt for anything else.
inline std::optional<std::vector<RatVec>> facetFunctionals(const DescPtr& d, long cap) {
    long n = d->dimension();
    std::vector<RatVec> out;
    auto push = [&](RatVec f) {
        out.push_back(std::move(f));
        if (static_cast<long>(out.size()) > cap)
            throw std::runtime_error("facet budget exceeded");
    };
    switch (d->kind) {
        case NormDescriptor::Kind::Lp: {
            if (d->pInf) {
                for (long i = 0; i < n; ++i)
                    for (int s : {1, -1}) {
                        RatVec f(n, Rat(0));
                        f[i] = s;
                        push(std::move(f));
                    }
                return out;
            }
            if (d->p != 1) return std::nullopt;
            if (n > 20) throw std::runtime_error("facet budget exceeded");
            for (long mask = 0; mask < (1L << n); ++mask) {
                RatVec f(n);
                for (long i = 0; i < n; ++i) f[i] = (mask >> i) & 1 ? Rat(1) : Rat(-1);
                push(std::move(f));
            }
            return out;
        }
        case NormDescriptor::Kind::Schreier: {
            NormBudget nb;
            for (const auto& e : schreierSets(d->xi, n, nb)) {
                if (e.empty()) continue;
                long k = static_cast<long>(e.size());
                for (long mask = 0; mask < (1L << k); ++mask) {
                    RatVec f(n, Rat(0));
                    for (long i = 0; i < k; ++i) f[e[i] - 1] = (mask >> i) & 1 ? Rat(1) : Rat(-1);
                    push(std::move(f));
                }
            }
            return out;
        }
        case NormDescriptor::Kind::Summing: {
            for (long m = 1; m <= n; ++m)
                for (int s : {1, -1}) {
                    RatVec f(n, Rat(0));
                    for (long i = 0; i < m; ++i) f[i] = s;
                    push(std::move(f));
                }
            return out;
        }
        case NormDescriptor::Kind::DirectSum: {
            if (d->outer->kind != NormDescriptor::Kind::Lp || d->outer->pInf ||
                d->outer->p != 1)
                return std::nullopt;
            std::vector<std::vector<RatVec>> innerF;
            for (const auto& in : d->inners) {
                auto f = facetFunctionals(in, cap);
                if (!f) return std::nullopt;
                innerF.push_back(std::move(*f));
            }
            // l1 outer: every combination of inner facets
            std::vector<RatVec> acc{RatVec{}};
            for (const auto& fs : innerF) {
                std::vector<RatVec> next;
                for (const auto& pre : acc)
                    for (const auto& f : fs) {
                        RatVec g = pre;
                        g.insert(g.end(), f.begin(), f.end());
                        next.push_back(std::move(g));
                        if (static_cast<long>(next.size()) > cap)
                            throw std::runtime_error("facet budget exceeded");
                    }
                acc = std::move(next);
            }
            return acc;
        }
        default:
            return std::nullopt;
    }
}

inline bool isEuclidean(const DescPtr& d) {
    return d->kind == NormDescriptor::Kind::Lp && !d->pInf && d->p == 2;
}

/// Factor rho with ||v||_inf <= rho * norm(v). Everything here has rho = 1
/// except the summing norm, whose coordinates are differences of two partial
/// sums (rho = 2); sums and convexifications propagate the factor.
inline Rat infDominationFactor(const DescPtr& d) {
    switch (d->kind) {
        case NormDescriptor::Kind::Summing:
            return Rat(2);
        case NormDescriptor::Kind::Convexify:
            return infDominationFactor(d->base);
        case NormDescriptor::Kind::DirectSum: {
            Rat inner(1);
            for (const auto& in : d->inners) inner = std::max(inner, infDominationFactor(in));
            return infDominationFactor(d->outer) * inner;
        }
        default:
            return Rat(1);
    }
}

// --- double description on the homogenized polytope ---

struct Ray {
    std::vector<Int> v;               // length n+1, last coordinate homogenizes
    std::vector<int32_t> tight;       // sorted indices of tight constraints
};

inline void contentReduce(std::vector<Int>& v) {
    Int g(0);
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) x /= g;
}

inline std::vector<int32_t> sortedIntersect(const std::vector<int32_t>& a,
                                            const std::vector<int32_t>& b) {
    std::vector<int32_t> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline bool sortedContains(const std::vector<int32_t>& big, const std::vector<int32_t>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Vertices of P = {a : f.a <= 1 for all f in F}, given a bound |a_i| <= M.
/// Classic incremental double description starting from the bounding box.
inline std::vector<RatVec> enumerateVertices(const std::vector<RatVec>& F, size_t n, const Rat& M,
                                             long vertexCap) {
    if (n == 0) return {RatVec{}};
    if (n > 16) throw std::runtime_error("vertex budget exceeded: dimension too large");
    // integer constraint rows over (a, t): box first, then the facets
    std::vector<std::vector<Int>> rows;
    for (size_t i = 0; i < n; ++i)
        for (int s : {1, -1}) {
            std::vector<Int> c(n + 1, Int(0));
            c[i] = s * M.get_den();
            c[n] = -M.get_num();
            rows.push_back(std::move(c));
        }
    for (const auto& f : F) {
        Int lcm(1);
        for (const auto& q : f) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<Int> c(n + 1, Int(0));
        bool nonzero = false;
        for (size_t i = 0; i < n; ++i) {
            Rat scaled = f[i] * lcm;
            c[i] = scaled.get_num();
            if (c[i] != 0) nonzero = true;
        }
        c[n] = -lcm;
        if (nonzero) rows.push_back(std::move(c));
    }

    // initial rays: box vertices, homogenized
    std::vector<Ray> rays;
    for (long mask = 0; mask < (1L << n); ++mask) {
        Ray r;
        r.v.assign(n + 1, Int(0));
        for (size_t i = 0; i < n; ++i)
            r.v[i] = ((mask >> i) & 1 ? 1 : -1) * M.get_num();
        r.v[n] = M.get_den();
        contentReduce(r.v);
        for (size_t ci = 0; ci < 2 * n; ++ci) {
            Int s(0);
            for (size_t j = 0; j <= n; ++j) s += rows[ci][j] * r.v[j];
            if (s == 0) r.tight.push_back(static_cast<int32_t>(ci));
        }
        rays.push_back(std::move(r));
    }

    for (size_t ci = 2 * n; ci < rows.size(); ++ci) {
        const auto& c = rows[ci];
        std::vector<Int> val(rays.size());
        bool anyPos = false;
        for (size_t r = 0; r < rays.size(); ++r) {
            Int s(0);
            for (size_t j = 0; j <= n; ++j) s += c[j] * rays[r].v[j];
            val[r] = s;
            if (s > 0) anyPos = true;
        }
        if (!anyPos) {
            for (size_t r = 0; r < rays.size(); ++r)
                if (val[r] == 0) rays[r].tight.push_back(static_cast<int32_t>(ci));
            continue;
        }
        std::vector<Ray> next;
        std::vector<size_t> pos, neg;
        for (size_t r = 0; r < rays.size(); ++r) {
            if (val[r] > 0)
                pos.push_back(r);
            else if (val[r] < 0)
                neg.push_back(r);
            else {
                Ray keep = rays[r];
                keep.tight.push_back(static_cast<int32_t>(ci));
                next.push_back(std::move(keep));
            }
        }
        for (size_t r : neg) next.push_back(rays[r]);
        for (size_t p : pos)
            for (size_t q : neg) {
                auto T = sortedIntersect(rays[p].tight, rays[q].tight);
                if (T.size() + 2 < n + 1) continue;  // cannot be adjacent
                bool adjacent = true;
                for (size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (sortedContains(rays[r].tight, T)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr;
                nr.v.assign(n + 1, Int(0));
                for (size_t j = 0; j <= n; ++j)
                    nr.v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
                contentReduce(nr.v);
                nr.tight = T;
                nr.tight.push_back(static_cast<int32_t>(ci));
                std::sort(nr.tight.begin(), nr.tight.end());
                next.push_back(std::move(nr));
                if (static_cast<long>(next.size()) > vertexCap)
                    throw std::runtime_error("vertex budget exceeded");
            }
        rays = std::move(next);
    }

    std::vector<RatVec> verts;
    for (const auto& r : rays) {
        if (r.v[n] <= 0) throw std::logic_error("unbounded direction in vertex enumeration");
        RatVec a(n);
        for (size_t i = 0; i < n; ++i) {
            a[i] = Rat(r.v[i], r.v[n]);
            a[i].canonicalize();
        }
        verts.push_back(std::move(a));
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

inline RatMat columnsToMatrix(const std::vector<FinVector>& vs) {
    size_t dim = vs[0].size(), n = vs.size();
    RatMat m = zeroMat(dim, n);
    for (size_t j = 0; j < n; ++j) {
        if (vs[j].size() != dim) throw std::invalid_argument("vectors of unequal dimension");
        for (size_t i = 0; i < dim; ++i) m[i][j] = vs[j][i];
    }
    return m;
}

inline Rat maxRowAbsSum(const RatMat& m) {
    Rat best(0);
    for (const auto& row : m) {
        Rat s(0);
        for (const auto& x : row) s += ratAbs(x);
        best = std::max(best, s);
    }
    return best;
}

/// Simplest (smallest-denominator) rational in [lo, hi].
inline Rat snapRational(const Rat& lo, const Rat& hi) {
    if (lo > hi) return lo;
    if (lo <= 0 && 0 <= hi) return Rat(0);
    if (hi < 0) return -snapRational(-hi, -lo);
    // now 0 < lo <= hi
    Int ceilLo;
    mpz_cdiv_q(ceilLo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    if (Rat(ceilLo) <= hi) return Rat(ceilLo);
    Int f = floorDiv(lo.get_num(), lo.get_den());
    Rat fr(f);
    return fr + 1 / snapRational(1 / (hi - fr), 1 / (lo - fr));
}

}  // namespace detail

/// Least K with ||sum a_i x_i||_X <= K ||sum a_i y_i||_Y for all coefficient
/// vectors a. Exact vertex enumeration on the polyhedral whitelist; a closed
/// form when the denominator (or numerator) norm is Euclidean; certified
/// lower/upper bounds otherwise.
inline DominationReport dominationConstant(const DescPtr& X, const std::vector<FinVector>& xs,
                                           const DescPtr& Y, const std::vector<FinVector>& ys,
                                           const DominationBudget& budget = DominationBudget{}) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("dominationConstant: list length mismatch");
    size_t n = xs.size();
    RatMat Xc = detail::columnsToMatrix(xs);
    RatMat Yc = detail::columnsToMatrix(ys);
    if (static_cast<long>(Xc.size()) != X->dimension() ||
        static_cast<long>(Yc.size()) != Y->dimension())
        throw std::invalid_argument("dominationConstant: vector/space dimension mismatch");

    // coefficient vectors killing the denominator
    auto ker = kernelBasis(Yc);
    for (const auto& b : ker) {
        RatVec img = matVec(Xc, b);
        bool zero = std::all_of(img.begin(), img.end(), [](const Rat& q) { return q == 0; });
        if (!zero) {
            DominationReport r;
            r.infinite = true;
            r.witness = b;
            return r;
        }
    }

    // all vectors zero on both sides: the constant is 0
    if (ker.size() == n) {
        DominationReport zeroRep;
        zeroRep.exact = true;
        zeroRep.witness.assign(n, Rat(0));
        return zeroRep;
    }

    // factor the common kernel out of the coefficient space
    std::vector<size_t> freeIdx;
    if (!ker.empty()) {
        RatMat K(ker.begin(), ker.end());
        auto pivots = rref(K);
        std::vector<bool> isPivot(n, false);
        for (size_t c : pivots) isPivot[c] = true;
        for (size_t i = 0; i < n; ++i)
            if (!isPivot[i]) freeIdx.push_back(i);
    } else {
        for (size_t i = 0; i < n; ++i) freeIdx.push_back(i);
    }
    size_t r = freeIdx.size();
    auto embed = [&](const RatVec& z) {
        RatVec a(n, Rat(0));
        for (size_t t = 0; t < r; ++t) a[freeIdx[t]] = z[t];
        return a;
    };
    RatMat Xr = zeroMat(Xc.size(), r), Yr = zeroMat(Yc.size(), r);
    for (size_t t = 0; t < r; ++t) {
        for (size_t i = 0; i < Xc.size(); ++i) Xr[i][t] = Xc[i][freeIdx[t]];
        for (size_t i = 0; i < Yc.size(); ++i) Yr[i][t] = Yc[i][freeIdx[t]];
    }

    auto normX = [&](const RatVec& z) {
        FinVector v = matVec(Xr, z);
        return norm(X, v);
    };
    auto normY = [&](const RatVec& z) {
        FinVector v = matVec(Yr, z);
        return norm(Y, v);
    };

    std::optional<std::vector<RatVec>> facX, facY;
    try {
        facX = detail::facetFunctionals(X, budget.facetCap);
        facY = detail::facetFunctionals(Y, budget.facetCap);
    } catch (const std::runtime_error&) {
        facX.reset();
        facY.reset();
    }
    bool euclX = detail::isEuclidean(X), euclY = detail::isEuclidean(Y);

    DominationReport rep;

    auto finish = [&](const Value& v, RatVec zWitness, bool exactMode) {
        rep.lower = v.lo;
        rep.upper = v.hi;
        rep.exact = exactMode && v.exact;
        rep.witness = embed(zWitness);
        return rep;
    };

    // composed facet constraints on z for the denominator ball
    auto composedFacets = [&](const std::vector<RatVec>& fs, const RatMat& M) {
        std::vector<RatVec> rows;
        for (const auto& f : fs) {
            RatVec row(r, Rat(0));
            bool nonzero = false;
            for (size_t t = 0; t < r; ++t) {
                Rat s(0);
                for (size_t i = 0; i < M.size(); ++i) s += f[i] * M[i][t];
                row[t] = s;
                if (s != 0) nonzero = true;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        return rows;
    };

    try {
        if (facY) {
            Rat M = detail::infDominationFactor(Y) * detail::maxRowAbsSum(leftInverse(Yr));
            auto cons = composedFacets(*facY, Yr);
            auto verts = detail::enumerateVertices(cons, r, M, budget.vertexCap);
            if (facX || euclX) {
                Rat bestLo(0), bestHi(0);
                bool allExact = true, first = true;
                RatVec bestZ(r, Rat(0));
                for (const auto& v : verts) {
                    Value nv;
                    if (euclX) {
                        RatVec img = matVec(Xr, v);
                        nv = ratSqrt(dot(img, img));
                    } else {
                        nv = normX(v);
                    }
                    if (first || nv.lo > bestLo) {
                        bestLo = nv.lo;
                        bestZ = v;
                    }
                    bestHi = first ? nv.hi : std::max(bestHi, nv.hi);
                    allExact = allExact && nv.exact;
                    first = false;
                }
                Value best(bestLo, bestHi);
                best.exact = allExact && bestLo == bestHi ? true : best.exact;
                return finish(best, bestZ, true);
            }
        } else if (euclY) {
            RatMat Q = matMul(transpose(Yr), Yr);
            RatMat Qi = inverse(Q);
            if (facX) {
                // sup <g, Xa> / ||Ya||_2 over g: sqrt(g^T X Q^-1 X^T g)
                Rat bestLo(0), bestHi(0);
                bool allExact = true, first = true;
                RatVec bestZ(r, Rat(0));
                for (const auto& g : *facX) {
                    RatVec w(r, Rat(0));
                    for (size_t t = 0; t < r; ++t) {
                        Rat s(0);
                        for (size_t i = 0; i < Xr.size(); ++i) s += g[i] * Xr[i][t];
                        w[t] = s;
                    }
                    RatVec qw = matVec(Qi, w);
                    Value nv = ratSqrt(dot(w, qw));
                    if (first || nv.lo > bestLo) {
                        bestLo = nv.lo;
                        bestZ = qw;
                    }
                    bestHi = first ? nv.hi : std::max(bestHi, nv.hi);
                    allExact = allExact && nv.exact;
                    first = false;
                }
                Value best(bestLo, bestHi);
                return finish(best, bestZ, true);
            }
            if (euclX) {
                // largest generalized eigenvalue of (X^T X, Y^T Y) by exact
                // bisection; lam >= lam_max iff lam Q_y - Q_x is PSD
                RatMat Qx = matMul(transpose(Xr), Xr);
                auto pencilAt = [&](const Rat& lam) {
                    RatMat m = Q;
                    for (size_t i = 0; i < r; ++i)
                        for (size_t j = 0; j < r; ++j) m[i][j] = lam * Q[i][j] - Qx[i][j];
                    return m;
                };
                auto pdAt = [&](const Rat& lam) { return isPositiveDefinite(pencilAt(lam)); };
                Rat hi = detail::maxRowAbsSum(matMul(Qi, Qx)) + 1;
                Rat lo(0);
                while (!pdAt(hi)) hi *= 2;
                Rat tol(1, 1000000000);
                tol *= tol;  // bisect K^2 to ~1e-18 so sqrt lands within 1e-9
                bool snapped = false;
                Rat exactLam(0);
                int steps = 0;
                while (hi - lo > tol) {
                    Rat mid = (hi + lo) / 2;
                    (pdAt(mid) ? hi : lo) = mid;
                    // try to snap to a small-denominator rational eigenvalue:
                    // lam_max is the unique lam that is PSD but not PD
                    if (++steps % 16 == 0 || hi - lo <= tol) {
                        Rat cand = detail::snapRational(lo, hi);
                        if (lo <= cand && cand <= hi && !pdAt(cand) &&
                            isPositiveSemidefinite(pencilAt(cand))) {
                            snapped = true;
                            exactLam = cand;
                            break;
                        }
                    }
                }
                Value k2 = snapped ? Value(exactLam) : Value(lo, hi);
                Value k = valueSqrt(k2);
                // witness by double-precision power iteration on Q^-1 Qx,
                // rationalized; near-attaining only, the bounds are certified
                RatMat it = matMul(Qi, Qx);
                std::vector<double> zd(r, 1.0);
                for (int step = 0; step < 200; ++step) {
                    std::vector<double> next(r, 0.0);
                    for (size_t i = 0; i < r; ++i)
                        for (size_t j = 0; j < r; ++j)
                            next[i] += ratToDouble(it[i][j]) * zd[j];
                    double mx = 0;
                    for (double q : next) mx = std::max(mx, std::fabs(q));
                    if (mx < 1e-300) break;
                    for (double& q : next) q /= mx;
                    zd = next;
                }
                RatVec z(r);
                for (size_t t = 0; t < r; ++t) {
                    z[t] = Rat(Int(static_cast<long>(std::llround(zd[t] * (1 << 20)))),
                               Int(1 << 20));
                    z[t].canonicalize();
                }
                return finish(k, z, snapped);
            }
        }
    } catch (const std::runtime_error&) {
        // facet or vertex budget exceeded: fall through to bound mode
    }

    // bound mode: multi-start ascent for the lower bound, an exact l1/l_inf
    // sandwich through a left inverse for the upper bound
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<std::vector<double>> XrD(Xr.size(), std::vector<double>(r)),
        YrD(Yr.size(), std::vector<double>(r));
    for (size_t i = 0; i < Xr.size(); ++i)
        for (size_t t = 0; t < r; ++t) XrD[i][t] = ratToDouble(Xr[i][t]);
    for (size_t i = 0; i < Yr.size(); ++i)
        for (size_t t = 0; t < r; ++t) YrD[i][t] = ratToDouble(Yr[i][t]);
    auto ratioD = [&](const std::vector<double>& z) {
        std::vector<double> xi(Xr.size(), 0), yi(Yr.size(), 0);
        for (size_t i = 0; i < Xr.size(); ++i)
            for (size_t t = 0; t < r; ++t) xi[i] += XrD[i][t] * z[t];
        for (size_t i = 0; i < Yr.size(); ++i)
            for (size_t t = 0; t < r; ++t) yi[i] += YrD[i][t] * z[t];
        double den = normDouble(Y, yi);
        if (den < 1e-12) return -1.0;
        return normDouble(X, xi) / den;
    };
    std::vector<double> bestZ(r, 1.0);
    double bestRatio = ratioD(bestZ);
    for (int s = 0; s < budget.ascentStarts; ++s) {
        std::vector<double> z(r);
        if (s < (1 << std::min<size_t>(r, 6))) {
            for (size_t t = 0; t < r; ++t) z[t] = (s >> t) & 1 ? 1.0 : -1.0;
        } else {
            for (size_t t = 0; t < r; ++t) z[t] = uni(rng);
        }
        double step = 0.5, cur = ratioD(z);
        for (int it = 0; it < budget.ascentIters; ++it) {
            bool improved = false;
            for (size_t t = 0; t < r; ++t) {
                for (double delta : {step, -step}) {
                    auto z2 = z;
                    z2[t] += delta;
                    double v = ratioD(z2);
                    if (v > cur) {
                        cur = v;
                        z = z2;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
            if (step < 1e-10) break;
        }
        if (cur > bestRatio) {
            bestRatio = cur;
            bestZ = z;
        }
    }
    // rationalize and certify the lower bound
    RatVec zr(r);
    for (size_t t = 0; t < r; ++t) {
        zr[t] = Rat(Int(static_cast<long>(std::llround(bestZ[t] * (1 << 20)))), Int(1 << 20));
        zr[t].canonicalize();
    }
    Value den = normY(zr);
    Rat lower(0);
    if (den.lo > 0) lower = normX(zr).lo / den.hi;
    // upper bound: N(a) <= ||a||_1 max_i ||x_i|| <= r ||a||_inf max_i ||x_i||
    // and ||a||_inf <= ||L||_(inf->inf) ||Y a||_inf <= ||L|| rho_Y D(a)
    Rat maxX(0);
    for (const auto& x : xs) maxX = std::max(maxX, norm(X, x).hi);
    Rat upper = Rat(static_cast<long>(r)) * maxX * detail::infDominationFactor(Y) *
                detail::maxRowAbsSum(leftInverse(Yr));
    if (upper < lower) upper = lower;
    rep.lower = lower;
    rep.upper = upper;
    rep.exact = (lower == upper);
    rep.witness = embed(zr);
    return rep;
}

/// K-basicity of a system: every partial-sum projection is bounded by K.
/// Returns the first violating (coefficients, m, n).
struct BasicReport {
    bool basic = true;
    RatVec witness;
    size_t m = 0, n = 0;
};

inline BasicReport isKBasic(const DescPtr& X, const std::vector<FinVector>& xs, const Rat& K,
                            const DominationBudget& budget = DominationBudget{}) {
    for (size_t nn = 1; nn <= xs.size(); ++nn) {
        std::vector<FinVector> full(xs.begin(), xs.begin() + nn);
        for (size_t m = 1; m < nn; ++m) {
            std::vector<FinVector> head(xs.begin(), xs.begin() + m);
            FinVector zero(xs[0].size(), Rat(0));
            for (size_t j = m; j < nn; ++j) head.push_back(zero);
            auto rep = dominationConstant(X, head, X, full, budget);
            auto t = dominatesWithin(rep, K);
            if (t == Tristate::False) return {false, rep.witness, m, nn};
            if (t == Tristate::Unknown)
                throw std::runtime_error("isKBasic: bound mode too coarse to decide");
        }
    }
    return {true, {}, 0, 0};
}

/// y_j = sum of a_i x_i over successive disjoint ranges, each coefficient
/// block of exact l_p norm 1 (p in {1, inf}; other p checked to a tolerance).
struct CoefBlock {
    size_t from = 0, to = 0;  // inclusive, 0-based
    RatVec coeffs;
};

struct BlockResult {
    std::vector<FinVector> vectors;
    bool exactNorms = true;
};

inline BlockResult pAbsConvexBlock(const std::vector<FinVector>& xs, const Rat& p, bool pInf,
                                   const std::vector<CoefBlock>& blocks,
                                   const Rat& tol = Rat(1, 1000000000)) {
    BlockResult res;
    size_t prevEnd = 0;
    bool firstBlock = true;
    for (const auto& b : blocks) {
        if (b.from > b.to || b.to >= xs.size())
            throw std::invalid_argument("pAbsConvexBlock: bad range");
        if (!firstBlock && b.from <= prevEnd)
            throw std::invalid_argument("pAbsConvexBlock: ranges must be successive");
        if (b.coeffs.size() != b.to - b.from + 1)
            throw std::invalid_argument("pAbsConvexBlock: coefficient count mismatch");
        if (pInf) {
            Rat mx(0);
            for (const auto& c : b.coeffs) mx = std::max(mx, ratAbs(c));
            if (mx != 1) throw std::invalid_argument("pAbsConvexBlock: l_inf norm != 1");
        } else if (p == 1) {
            Rat s(0);
            for (const auto& c : b.coeffs) s += ratAbs(c);
            if (s != 1) throw std::invalid_argument("pAbsConvexBlock: l_1 norm != 1");
        } else {
            unsigned long pn, pd;
            detail::requireRatExponent(p, pn, pd);
            Value s{Rat(0)};
            for (const auto& c : b.coeffs) s = s + valueRatPow(Value(ratAbs(c)), pn, pd);
            Value nv = valueRatPow(s, pd, pn);
            if (nv.definitelyGT(1 + tol) || nv.definitelyLT(1 - tol))
                throw std::invalid_argument("pAbsConvexBlock: l_p norm not 1 within tolerance");
            res.exactNorms = res.exactNorms && nv.exact && nv.lo == 1;
        }
        FinVector y(xs[0].size(), Rat(0));
        for (size_t i = b.from; i <= b.to; ++i)
            for (size_t k = 0; k < y.size(); ++k) y[k] += b.coeffs[i - b.from] * xs[i][k];
        res.vectors.push_back(std::move(y));
        prevEnd = b.to;
        firstBlock = false;
    }
    return res;
}

/// Operator norm as a domination query: columns against the domain basis.
inline DominationReport operatorNorm(const OperatorMatrix& A,
                                     const DominationBudget& budget = DominationBudget{}) {
    RatMat m = A.exactEntries();
    std::vector<FinVector> cols, basis;
    size_t dim = A.cols();
    for (size_t j = 0; j < dim; ++j) {
        FinVector col(A.rows());
        for (size_t i = 0; i < A.rows(); ++i) col[i] = m[i][j];
        cols.push_back(std::move(col));
        FinVector e(dim, Rat(0));
        e[j] = 1;
        basis.push_back(std::move(e));
    }
    return dominationConstant(A.codomain, cols, A.domain, basis, budget);
}

}  // namespace oix
