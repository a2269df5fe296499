#pragma once

#include "oix/domination.hpp"

#include <optional>
#include <vector>

namespace oix {

/// Configuration for the bounded-depth index probes. basis names the target
/// (e_i) system as an Lp descriptor; it is truncated to each chain length.
struct ProbeConfig {
    Rat K{1};
    DescPtr basis;  // Lp kind only
    long maxDepth = 4;
    long searchBudget = 20000;
    std::vector<FinVector> pool;
    bool blockClosure = false;
    DominationBudget domBudget;
};

namespace detail {

inline DescPtr truncateBasis(const DescPtr& basis, long n) {
    if (basis->kind != NormDescriptor::Kind::Lp)
        throw std::invalid_argument("probe basis must be an lp descriptor");
    return basis->pInf ? descLpInf(n) : descLp(basis->p, n);
}

inline std::vector<FinVector> standardBasis(long dim) {
    std::vector<FinVector> vs;
    for (long i = 0; i < dim; ++i) {
        FinVector e(dim, Rat(0));
        e[i] = 1;
        vs.push_back(std::move(e));
    }
    return vs;
}

inline std::vector<FinVector> applyExact(const OperatorMatrix& A,
                                         const std::vector<FinVector>& xs) {
    RatMat m = A.exactEntries();
    std::vector<FinVector> ys;
    for (const auto& x : xs) ys.push_back(matVec(m, x));
    return ys;
}

inline bool decideOrThrow(const DominationReport& rep, const Rat& K, const char* what) {
    auto t = dominatesWithin(rep, K);
    if (t == Tristate::Unknown)
        throw std::runtime_error(std::string(what) + ": bounds too coarse to decide");
    return t == Tristate::True;
}

}  // namespace detail

/// Membership of a chain in T_(e_i)(A, X, Y, K): the chain is 1-dominated by
/// the basis and the basis is K-dominated by the images.
inline bool npMember(const OperatorMatrix& A, const ProbeConfig& cfg,
                     const std::vector<FinVector>& xs) {
    if (xs.empty()) return true;
    long n = static_cast<long>(xs.size());
    DescPtr bn = detail::truncateBasis(cfg.basis, n);
    auto basis = detail::standardBasis(n);
    auto upper = dominationConstant(A.domain, xs, bn, basis, cfg.domBudget);
    if (!detail::decideOrThrow(upper, Rat(1), "npMember upper estimate")) return false;
    auto images = detail::applyExact(A, xs);
    auto lower = dominationConstant(bn, basis, A.codomain, images, cfg.domBudget);
    return detail::decideOrThrow(lower, cfg.K, "npMember lower estimate");
}

struct DepthReport {
    long witnessedDepth = 0;
    std::vector<FinVector> witnessChain;
    std::optional<long> impossibleBeyond;
    enum class Reason { RankBound, ExhaustedSearch } reason = Reason::RankBound;
    bool searchExhausted = false;
    std::optional<long> finiteIndexClaim;  // 1 + witnessedDepth, rank-bound case only
};

/// Chain search over the candidate pool. Any chain longer than rank(A) fails
/// the lower estimate for every K (the images are linearly dependent), which
/// both prunes the search and justifies the finite index claim.
inline DepthReport npDepthProbe(const OperatorMatrix& A, const ProbeConfig& cfg) {
    DepthReport rep;
    long r = static_cast<long>(rankOf(A.exactEntries()));
    long cap = std::min(cfg.maxDepth, r);
    long budget = cfg.searchBudget;

    ProbeConfig local = cfg;
    if (cfg.blockClosure) {
        bool pInf = cfg.basis->pInf;
        size_t base = local.pool.size();
        for (size_t i = 0; i + 1 < base; ++i) {
            FinVector m(local.pool[i].size());
            for (size_t k = 0; k < m.size(); ++k)
                m[k] = pInf ? Rat(local.pool[i][k] + local.pool[i + 1][k])
                            : Rat((local.pool[i][k] + local.pool[i + 1][k]) / 2);
            local.pool.push_back(std::move(m));
        }
    }
    for (const auto& v : local.pool)
        if (norm(A.domain, v).definitelyGT(Rat(1) + Rat(1, 1000000000)))
            throw std::invalid_argument("npDepthProbe: pool vector outside the unit ball");
    const auto& pool = local.pool;

    std::vector<size_t> chainIdx;
    std::vector<FinVector> chain;
    std::function<void(void)> dfs = [&]() {
        if (static_cast<long>(chain.size()) > rep.witnessedDepth) {
            rep.witnessedDepth = static_cast<long>(chain.size());
            rep.witnessChain = chain;
        }
        if (static_cast<long>(chain.size()) >= cap || budget <= 0) return;
        for (size_t i = 0; i < pool.size(); ++i) {
            if (std::find(chainIdx.begin(), chainIdx.end(), i) != chainIdx.end()) continue;
            if (budget-- <= 0) {
                rep.searchExhausted = true;
                return;
            }
            chain.push_back(pool[i]);
            chainIdx.push_back(i);
            bool ok = false;
            try {
                ok = npMember(A, cfg, chain);
            } catch (const std::domain_error&) {
                ok = false;  // dependent images: lower estimate impossible
            }
            if (ok) dfs();
            chain.pop_back();
            chainIdx.pop_back();
            if (rep.witnessedDepth >= cap) return;
        }
    };
    dfs();

    rep.impossibleBeyond = r + 1;
    rep.reason = DepthReport::Reason::RankBound;
    if (rep.searchExhausted && rep.witnessedDepth < cap)
        rep.reason = DepthReport::Reason::ExhaustedSearch;
    if (rep.witnessedDepth == r && rep.reason == DepthReport::Reason::RankBound)
        rep.finiteIndexClaim = 1 + r;
    return rep;
}

/// Membership in SS(A, X, Y, K): normalized, K-basic, and K-dominated by the
/// images.
inline bool ssMember(const OperatorMatrix& A, const Rat& K, const std::vector<FinVector>& xs,
                     const DominationBudget& budget = DominationBudget{}) {
    if (xs.empty()) return true;
    Rat tol(1, 1000000000);
    for (const auto& x : xs) {
        Value nv = norm(A.domain, x);
        if (nv.definitelyGT(1 + tol) || nv.definitelyLT(1 - tol))
            throw std::invalid_argument("ssMember: chain vectors must be normalized");
    }
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j]) return false;  // repeated vector is never K-basic
    auto basic = isKBasic(A.domain, xs, K, budget);
    if (!basic.basic) return false;
    auto images = detail::applyExact(A, xs);
    auto lower = dominationConstant(A.domain, xs, A.codomain, images, budget);
    return detail::decideOrThrow(lower, K, "ssMember image estimate");
}

/// Membership in the weak-compactness tree: the summing basis is K-dominated
/// by the images.
inline bool wcMember(const OperatorMatrix& A, const Rat& K, const std::vector<FinVector>& xs,
                     const DominationBudget& budget = DominationBudget{}) {
    if (xs.empty()) return true;
    for (const auto& x : xs) {
        Value nv = norm(A.domain, x);
        if (nv.definitelyGT(Rat(1) + Rat(1, 1000000000)))
            throw std::invalid_argument("wcMember: chain vectors must lie in the unit ball");
    }
    long n = static_cast<long>(xs.size());
    auto sBasis = detail::standardBasis(n);
    auto images = detail::applyExact(A, xs);
    auto rep = dominationConstant(descSumming(n), sBasis, A.codomain, images, budget);
    return detail::decideOrThrow(rep, K, "wcMember summing estimate");
}

struct SpreadingCertificate {
    bool pass = true;
    FinSet failingSet;
    RatVec witnessCoeffs;
    bool lowerFailed = false;  // which of the two dominations failed
};

namespace detail {

inline std::vector<FinSet> admissibleSetsBySize(const Ordinal& xi, long n) {
    FamilyBudget fb;
    fb.maxN = std::max<long>(24, n);
    auto members = restrict(famSchreier(xi), n, fb).members;
    std::stable_sort(members.begin(), members.end(), [](const FinSet& a, const FinSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return members;
}

}  // namespace detail

/// l_p^xi (c_0^xi for pInf) spreading-model certificate: both dominations,
/// with constants a and b, for every admissible E inside {1..n}.
inline SpreadingCertificate spreadingModelCertificate(const DescPtr& X,
                                                      const std::vector<FinVector>& xs,
                                                      const Rat& p, bool pInf, const Ordinal& xi,
                                                      const Rat& a, const Rat& b,
                                                      const DominationBudget& budget =
                                                          DominationBudget{}) {
    long n = static_cast<long>(xs.size());
    for (const auto& e : detail::admissibleSetsBySize(xi, n)) {
        if (e.empty()) continue;
        std::vector<FinVector> sub;
        for (long i : e) sub.push_back(xs[i - 1]);
        long k = static_cast<long>(e.size());
        DescPtr lp = pInf ? descLpInf(k) : descLp(p, k);
        auto basis = detail::standardBasis(k);
        auto lowerRep = dominationConstant(lp, basis, X, sub, budget);
        if (!detail::decideOrThrow(lowerRep, a, "spreading certificate lower"))
            return {false, e, lowerRep.witness, true};
        auto upperRep = dominationConstant(X, sub, lp, basis, budget);
        if (!detail::decideOrThrow(upperRep, b, "spreading certificate upper"))
            return {false, e, upperRep.witness, false};
    }
    return {true, {}, {}, false};
}

/// Finite certificate that every admissible E yields a chain in the
/// non-preservation tree: the Schreier-indexed membership of Theorem-level
/// arguments relating spreading models to the local index.
inline bool schreierIndexedMember(const OperatorMatrix& A, const ProbeConfig& cfg,
                                  const Ordinal& xi, const std::vector<FinVector>& xs) {
    long n = static_cast<long>(xs.size());
    for (const auto& e : detail::admissibleSetsBySize(xi, n)) {
        if (e.empty()) continue;
        std::vector<FinVector> chain;
        for (long i : e) chain.push_back(xs[i - 1]);
        if (!npMember(A, cfg, chain)) return false;
    }
    return true;
}

/// Default candidate pool: standard basis vectors and their normalized
/// differences, optionally closed under one level of p-absolutely convex
/// pair blocks (p in {1, inf}).
inline std::vector<FinVector> defaultPool(const DescPtr& X, bool pairBlocks = false,
                                          bool pInfBlocks = false) {
    long dim = X->dimension();
    auto pool = detail::standardBasis(dim);
    for (long i = 0; i < dim; ++i)
        for (long j = i + 1; j < dim; ++j) {
            FinVector d(dim, Rat(0));
            d[i] = 1;
            d[j] = -1;
            Value nv = norm(X, d);
            if (nv.hi > 0) {
                for (auto& c : d) c /= nv.hi;
                pool.push_back(std::move(d));
            }
        }
    if (pairBlocks) {
        size_t base = pool.size();
        for (size_t i = 0; i + 1 < std::min<size_t>(base, 6); ++i) {
            FinVector m(dim, Rat(0));
            for (long k = 0; k < dim; ++k)
                m[k] = pInfBlocks ? Rat(pool[i][k] + pool[i + 1][k])
                                  : Rat((pool[i][k] + pool[i + 1][k]) / 2);
            pool.push_back(std::move(m));
        }
    }
    return pool;
}

}  // namespace oix
