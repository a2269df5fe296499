#pragma once

#include "oix/families.hpp"
#include "oix/linalg.hpp"
#include "oix/value.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

namespace oix {

using FinVector = std::vector<Rat>;

struct NormDescriptor;
using DescPtr = std::shared_ptr<const NormDescriptor>;

using TreeNode = std::vector<long>;       // element of N^{<N}
using TreeNodeSet = std::vector<TreeNode>;  // sorted, downward closed

/// Compositional description of a finite-dimensional normed space.
struct NormDescriptor {
    enum class Kind { Lp, Schreier, XXi2, Zpq, Convexify, DirectSum, Summing } kind;

    bool pInf = false;  // Lp with p = infinity
    Rat p = Rat(1);     // Lp exponent, or Convexify exponent t
    long dim = 0;       // Lp, Schreier, XXi2, Summing
    Ordinal xi;         // Schreier, XXi2
    long zp = 1, zq = 2;
    TreeNodeSet zNodes;
    DescPtr base;                 // Convexify
    DescPtr outer;                // DirectSum
    std::vector<DescPtr> inners;  // DirectSum

    long dimension() const {
        switch (kind) {
            case Kind::Lp:
            case Kind::Schreier:
            case Kind::XXi2:
            case Kind::Summing:
                return dim;
            case Kind::Zpq:
                return static_cast<long>(zNodes.size());
            case Kind::Convexify:
                return base->dimension();
            case Kind::DirectSum: {
                long d = 0;
                for (const auto& in : inners) d += in->dimension();
                return d;
            }
        }
        return 0;
    }
};

inline void checkNodeSet(const TreeNodeSet& nodes) {
    if (nodes.empty()) throw std::invalid_argument("empty node set");
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (i && nodes[i] == nodes[i - 1]) throw std::invalid_argument("duplicate tree node");
        if (!nodes[i].empty()) {
            TreeNode parent(nodes[i].begin(), nodes[i].end() - 1);
            if (!std::binary_search(nodes.begin(), nodes.end(), parent))
                throw std::invalid_argument("node set not downward closed");
        }
    }
}

inline DescPtr descLp(const Rat& p, long dim) {
    if (p < 1) throw std::invalid_argument("lp exponent must be >= 1");
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::Lp;
    d->p = p;
    d->dim = dim;
    return d;
}
inline DescPtr descLpInf(long dim) {
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::Lp;
    d->pInf = true;
    d->dim = dim;
    return d;
}
inline DescPtr descSchreier(const Ordinal& xi, long dim) {
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::Schreier;
    d->xi = xi;
    d->dim = dim;
    return d;
}
inline DescPtr descXXi2(const Ordinal& xi, long dim) {
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::XXi2;
    d->xi = xi;
    d->dim = dim;
    return d;
}
inline DescPtr descZpq(long p, long q, TreeNodeSet nodes) {
    if (p < 1 || q < 1 || q % p != 0)
        throw std::invalid_argument("z(p,q): need integers 1 <= p, p dividing q");
    std::sort(nodes.begin(), nodes.end());
    checkNodeSet(nodes);
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::Zpq;
    d->zp = p;
    d->zq = q;
    d->zNodes = std::move(nodes);
    return d;
}
inline DescPtr descConvexify(DescPtr base, const Rat& t) {
    if (t < 1) throw std::invalid_argument("convexification exponent must be >= 1");
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::Convexify;
    d->base = std::move(base);
    d->p = t;
    return d;
}
inline DescPtr descDirectSum(DescPtr outer, std::vector<DescPtr> inners) {
    if (outer->dimension() != static_cast<long>(inners.size()))
        throw std::invalid_argument("direct sum: outer dimension must equal summand count");
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::DirectSum;
    d->outer = std::move(outer);
    d->inners = std::move(inners);
    return d;
}
inline DescPtr descSumming(long dim) {
    auto d = std::make_shared<NormDescriptor>();
    d->kind = NormDescriptor::Kind::Summing;
    d->dim = dim;
    return d;
}

struct NormBudget {
    long schreierDim = 24;   // max dimension for admissible-set enumeration
    long zNodeCap = 64;      // max Zpq node count for the segment DP
};

namespace detail {

inline void requireRatExponent(const Rat& p, unsigned long& num, unsigned long& den) {
    if (!p.get_num().fits_ulong_p() || !p.get_den().fits_ulong_p())
        throw std::invalid_argument("exponent too large");
    num = p.get_num().get_ui();
    den = p.get_den().get_ui();
}

inline std::vector<FinSet> schreierSets(const Ordinal& xi, long dim, const NormBudget& budget) {
    if (dim > budget.schreierDim) throw std::runtime_error("norm budget: dimension too large");
    FamilyBudget fb;
    fb.maxN = budget.schreierDim;
    return restrict(famSchreier(xi), dim, fb).members;
}

/// max over admissible sets E of sum_{i in E} a_i  (a >= 0).
inline Rat schreierSup(const Ordinal& xi, const RatVec& a, const NormBudget& budget) {
    Rat best(0);
    for (const auto& e : schreierSets(xi, static_cast<long>(a.size()), budget)) {
        Rat s(0);
        for (long i : e) s += a[i - 1];
        best = std::max(best, s);
    }
    return best;
}

/// max over successive admissible partitions of sum of squared block l1-masses.
inline Rat xxi2SupSquared(const Ordinal& xi, const RatVec& a, const NormBudget& budget) {
    long n = static_cast<long>(a.size());
    auto sets = schreierSets(xi, n, budget);
    // h[i][j]: best block weight over admissible E with min(E) == i, max(E) <= j
    std::vector<std::vector<Rat>> h(n + 2, std::vector<Rat>(n + 1, Rat(-1)));
    for (const auto& e : sets) {
        if (e.empty()) continue;
        Rat w(0);
        for (long i : e) w += a[i - 1];
        long mn = e.front(), mx = e.back();
        if (w > h[mn][mx]) h[mn][mx] = w;
    }
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= n; ++j)
            if (j > 1 && h[i][j - 1] > h[i][j]) h[i][j] = h[i][j - 1];
    // g[i][j]: best block weight over admissible E inside [i, j]
    // f[j]: best total over partitions confined to [1, j]
    std::vector<Rat> f(n + 1, Rat(0));
    for (long j = 1; j <= n; ++j) {
        f[j] = f[j - 1];
        Rat g(-1);
        for (long i = j; i >= 1; --i) {
            if (h[i][j] > g) g = h[i][j];
            if (g >= 0) f[j] = std::max(f[j], Rat(f[i - 1] + g * g));
        }
    }
    return f[n];
}

struct ZParetoEntry {
    bool hasOpen = false;
    Rat open{0};
    Rat closed{0};
};

/// Tree DP over disjoint-segment families. Each node carries a Pareto set of
/// (weight of the segment open toward the root, closed total below).
inline Rat zSupPowerSum(const TreeNodeSet& nodes, const RatVec& wp, unsigned long e) {
    std::vector<std::vector<size_t>> children(nodes.size());
    std::map<TreeNode, size_t> index;
    for (size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    size_t rootIdx = index.at(TreeNode{});
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].empty()) continue;
        TreeNode parent(nodes[i].begin(), nodes[i].end() - 1);
        children[index.at(parent)].push_back(i);
    }
    std::function<std::vector<ZParetoEntry>(size_t)> go =
        [&](size_t u) -> std::vector<ZParetoEntry> {
        Rat base(0);
        std::vector<std::pair<std::vector<ZParetoEntry>, Rat>> kid;  // (pareto, closed-only)
        for (size_t c : children[u]) {
            auto pc = go(c);
            Rat closedOnly(0);
            for (const auto& en : pc) {
                Rat v = en.closed + (en.hasOpen ? ratPow(en.open, e) : Rat(0));
                closedOnly = std::max(closedOnly, v);
            }
            base += closedOnly;
            kid.emplace_back(std::move(pc), closedOnly);
        }
        std::vector<ZParetoEntry> out;
        out.push_back({false, Rat(0), base});       // node uncovered
        out.push_back({true, wp[u], base});         // node starts a segment
        for (size_t ci = 0; ci < kid.size(); ++ci) {
            Rat others = base - kid[ci].second;
            for (const auto& en : kid[ci].first) {
                if (!en.hasOpen) continue;
                out.push_back({true, en.open + wp[u], en.closed + others});
            }
        }
        // Pareto prune
        std::sort(out.begin(), out.end(), [](const ZParetoEntry& a, const ZParetoEntry& b) {
            Rat oa = a.hasOpen ? a.open : Rat(-1), ob = b.hasOpen ? b.open : Rat(-1);
            if (oa != ob) return oa > ob;
            return a.closed > b.closed;
        });
        std::vector<ZParetoEntry> pruned;
        Rat bestClosed(-1);
        for (const auto& en : out) {
            if (en.closed > bestClosed) {
                pruned.push_back(en);
                bestClosed = en.closed;
            }
        }
        return pruned;
    };
    auto pr = go(rootIdx);
    Rat best(0);
    for (const auto& en : pr)
        best = std::max(best, Rat(en.closed + (en.hasOpen ? ratPow(en.open, e) : Rat(0))));
    return best;
}

}  // namespace detail

inline Value norm(const DescPtr& d, const std::vector<Value>& coords,
                  const NormBudget& budget = NormBudget{});

namespace detail {

/// Norm on a nonnegative rational coordinate vector, for the 1-unconditional
/// kinds (everything except Summing; DirectSum and Convexify recurse).
inline Value normAbsRat(const DescPtr& d, const RatVec& a, const NormBudget& budget) {
    switch (d->kind) {
        case NormDescriptor::Kind::Lp: {
            if (d->pInf) {
                Rat m(0);
                for (const auto& x : a) m = std::max(m, x);
                return Value(m);
            }
            unsigned long pn, pd;
            requireRatExponent(d->p, pn, pd);
            if (pn == 1 && pd == 1) {
                Rat s(0);
                for (const auto& x : a) s += x;
                return Value(s);
            }
            if (pd == 1) {
                Rat s(0);
                for (const auto& x : a) s += ratPow(x, pn);
                return ratRoot(s, pn);
            }
            Value s{Rat(0)};
            for (const auto& x : a) s = s + valueRatPow(Value(x), pn, pd);
            return valueRatPow(s, pd, pn);
        }
        case NormDescriptor::Kind::Schreier:
            return Value(schreierSup(d->xi, a, budget));
        case NormDescriptor::Kind::XXi2:
            return valueSqrt(Value(xxi2SupSquared(d->xi, a, budget)));
        case NormDescriptor::Kind::Zpq: {
            if (static_cast<long>(d->zNodes.size()) > budget.zNodeCap)
                throw std::runtime_error("norm budget: too many tree nodes");
            RatVec wp(a.size());
            for (size_t i = 0; i < a.size(); ++i)
                wp[i] = d->zp == 1 ? a[i] : ratPow(a[i], static_cast<unsigned long>(d->zp));
            Rat best = zSupPowerSum(d->zNodes, wp, static_cast<unsigned long>(d->zq / d->zp));
            return ratRoot(best, static_cast<unsigned long>(d->zq));
        }
        default:
            throw std::logic_error("normAbsRat: unsupported kind");
    }
}

}  // namespace detail

inline Value norm(const DescPtr& d, const std::vector<Value>& coords, const NormBudget& budget) {
    if (static_cast<long>(coords.size()) != d->dimension())
        throw std::invalid_argument("norm: dimension mismatch");
    switch (d->kind) {
        case NormDescriptor::Kind::Summing: {
            // max over m of |sum_{i<=m} a_i|; sign-dependent, no abs reduction
            Value best{Rat(0)};
            Value run{Rat(0)};
            bool first = true;
            for (const auto& c : coords) {
                run = run + c;
                Value v = valueAbs(run);
                best = first ? v : valueMax(best, v);
                first = false;
            }
            return best;
        }
        case NormDescriptor::Kind::DirectSum: {
            std::vector<Value> innerNorms;
            size_t at = 0;
            for (const auto& in : d->inners) {
                size_t k = static_cast<size_t>(in->dimension());
                std::vector<Value> piece(coords.begin() + at, coords.begin() + at + k);
                at += k;
                innerNorms.push_back(norm(in, piece, budget));
            }
            return norm(d->outer, innerNorms, budget);
        }
        case NormDescriptor::Kind::Convexify: {
            unsigned long tn, td;
            detail::requireRatExponent(d->p, tn, td);
            std::vector<Value> powered;
            powered.reserve(coords.size());
            for (const auto& c : coords) powered.push_back(valueRatPow(valueAbs(c), tn, td));
            Value b = norm(d->base, powered, budget);
            return valueRatPow(b, td, tn);
        }
        default: {
            // 1-unconditional and monotone on the nonnegative cone
            RatVec lo(coords.size()), hi(coords.size());
            bool allExact = true;
            for (size_t i = 0; i < coords.size(); ++i) {
                Value av = valueAbs(coords[i]);
                lo[i] = av.lo;
                hi[i] = av.hi;
                allExact = allExact && coords[i].exact;
            }
            Value vlo = detail::normAbsRat(d, lo, budget);
            if (allExact) return vlo;
            Value vhi = detail::normAbsRat(d, hi, budget);
            Value r(vlo.lo, vhi.hi);
            r.exact = false;
            return r;
        }
    }
}

inline Value norm(const DescPtr& d, const FinVector& coords,
                  const NormBudget& budget = NormBudget{}) {
    std::vector<Value> v(coords.begin(), coords.end());
    return norm(d, v, budget);
}

/// Double-precision norm, for search heuristics only.
inline double normDouble(const DescPtr& d, const std::vector<double>& coords,
                         const NormBudget& budget = NormBudget{});

namespace detail {

inline double normAbsDouble(const DescPtr& d, std::vector<double> a, const NormBudget& budget) {
    switch (d->kind) {
        case NormDescriptor::Kind::Lp: {
            if (d->pInf) {
                double m = 0;
                for (double x : a) m = std::max(m, x);
                return m;
            }
            double p = ratToDouble(d->p), s = 0;
            for (double x : a) s += std::pow(x, p);
            return std::pow(s, 1.0 / p);
        }
        case NormDescriptor::Kind::Schreier: {
            double best = 0;
            for (const auto& e : schreierSets(d->xi, static_cast<long>(a.size()), budget)) {
                double s = 0;
                for (long i : e) s += a[i - 1];
                best = std::max(best, s);
            }
            return best;
        }
        default: {
            RatVec r(a.size());
            for (size_t i = 0; i < a.size(); ++i) {
                r[i] = Rat(a[i]);
                r[i].canonicalize();
            }
            return ratToDouble(normAbsRat(d, r, budget).mid());
        }
    }
}

}  // namespace detail

inline double normDouble(const DescPtr& d, const std::vector<double>& coords,
                         const NormBudget& budget) {
    switch (d->kind) {
        case NormDescriptor::Kind::Summing: {
            double best = 0, run = 0;
            for (double c : coords) {
                run += c;
                best = std::max(best, std::fabs(run));
            }
            return best;
        }
        case NormDescriptor::Kind::DirectSum: {
            std::vector<double> innerNorms;
            size_t at = 0;
            for (const auto& in : d->inners) {
                size_t k = static_cast<size_t>(in->dimension());
                std::vector<double> piece(coords.begin() + at, coords.begin() + at + k);
                at += k;
                innerNorms.push_back(normDouble(in, piece, budget));
            }
            return normDouble(d->outer, innerNorms, budget);
        }
        case NormDescriptor::Kind::Convexify: {
            double t = ratToDouble(d->p);
            std::vector<double> powered;
            for (double c : coords) powered.push_back(std::pow(std::fabs(c), t));
            return std::pow(normDouble(d->base, powered, budget), 1.0 / t);
        }
        default: {
            std::vector<double> a(coords.size());
            for (size_t i = 0; i < coords.size(); ++i) a[i] = std::fabs(coords[i]);
            return detail::normAbsDouble(d, std::move(a), budget);
        }
    }
}

// --- operators ---

struct OperatorMatrix {
    std::vector<std::vector<Value>> entries;  // rows x cols
    DescPtr domain, codomain;

    size_t rows() const { return entries.size(); }
    size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }

    bool allExact() const {
        for (const auto& r : entries)
            for (const auto& v : r)
                if (!v.exact) return false;
        return true;
    }

    RatMat exactEntries() const {
        RatMat m(rows(), RatVec(cols()));
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols(); ++j) {
                if (!entries[i][j].exact)
                    throw std::domain_error("operator has interval entries");
                m[i][j] = entries[i][j].lo;
            }
        return m;
    }

    std::vector<Value> apply(const FinVector& x) const {
        if (x.size() != cols()) throw std::invalid_argument("operator apply: shape mismatch");
        std::vector<Value> y(rows(), Value(Rat(0)));
        for (size_t i = 0; i < rows(); ++i) {
            Value s{Rat(0)};
            for (size_t j = 0; j < cols(); ++j) s = s + entries[i][j] * Value(x[j]);
            y[i] = s;
        }
        return y;
    }

    void validateShape() const {
        if (domain && static_cast<long>(cols()) != domain->dimension())
            throw std::invalid_argument("operator column count != domain dimension");
        if (codomain && static_cast<long>(rows()) != codomain->dimension())
            throw std::invalid_argument("operator row count != codomain dimension");
    }
};

inline OperatorMatrix makeOperator(const RatMat& m, DescPtr domain, DescPtr codomain) {
    OperatorMatrix op;
    op.entries.resize(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& x : m[i]) op.entries[i].emplace_back(x);
    op.domain = std::move(domain);
    op.codomain = std::move(codomain);
    op.validateShape();
    return op;
}

/// Entrywise |a|^(1/t) between the t-convexified spaces. Requires pairwise
/// disjoint column supports.
inline OperatorMatrix convexifyOperator(const OperatorMatrix& a, const Rat& t) {
    if (t < 1) throw std::invalid_argument("convexifyOperator: t must be >= 1");
    size_t rows = a.rows(), cols = a.cols();
    std::vector<long> owner(rows, -1);
    for (size_t j = 0; j < cols; ++j)
        for (size_t i = 0; i < rows; ++i) {
            bool nz = !(a.entries[i][j].lo == 0 && a.entries[i][j].hi == 0);
            if (!nz) continue;
            if (owner[i] != -1 && owner[i] != static_cast<long>(j))
                throw std::invalid_argument("convexifyOperator: overlapping column supports");
            owner[i] = static_cast<long>(j);
        }
    unsigned long tn, td;
    detail::requireRatExponent(t, tn, td);
    OperatorMatrix r;
    r.entries.assign(rows, std::vector<Value>(cols, Value(Rat(0))));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            const Value& v = a.entries[i][j];
            if (v.lo == 0 && v.hi == 0) continue;
            r.entries[i][j] = valueRatPow(valueAbs(v), td, tn);
        }
    r.domain = a.domain ? descConvexify(a.domain, t) : nullptr;
    r.codomain = a.codomain ? descConvexify(a.codomain, t) : nullptr;
    return r;
}

/// Truncated S^T: the formal identity from l1 over the node set into Z_{1,2},
/// composed with the basis projection onto the selected subtree.
inline OperatorMatrix treeOperator(TreeNodeSet nodes, TreeNodeSet selected) {
    std::sort(nodes.begin(), nodes.end());
    std::sort(selected.begin(), selected.end());
    checkNodeSet(nodes);
    if (!selected.empty()) checkNodeSet(selected);  // downward closed, includes the root
    for (const auto& s : selected)
        if (!std::binary_search(nodes.begin(), nodes.end(), s))
            throw std::invalid_argument("treeOperator: selection not inside node set");
    size_t n = nodes.size();
    RatMat m = zeroMat(n, n);
    for (size_t i = 0; i < n; ++i)
        if (std::binary_search(selected.begin(), selected.end(), nodes[i])) m[i][i] = 1;
    return makeOperator(m, descLp(Rat(1), static_cast<long>(n)),
                        descZpq(1, 2, nodes));
}

// --- W_xi truncations ---

struct WTruncation {
    long summands = 2;
    long maxDim = 4096;
    long maxDepth = 24;
};

/// Finite-dimensional truncation of the W_xi recursion: W_0 is the scalar
/// field, W_(xi+1) is the l2 sum of the l1-stacked copies Z_n, and limit
/// stages use the canonical fundamental sequence.
inline DescPtr wSpaceApprox(const Ordinal& xi, const WTruncation& tr = WTruncation{},
                            long depth = 0) {
    if (depth > tr.maxDepth) throw std::runtime_error("wSpaceApprox: recursion depth budget");
    if (xi.isZero()) return descLp(Rat(1), 1);
    auto c = ordClassify(xi);
    std::vector<DescPtr> summands;
    if (c.kind == OrdKind::Successor) {
        DescPtr w = wSpaceApprox(*c.pred, tr, depth + 1);
        DescPtr z = w;  // Z_1
        summands.push_back(z);
        for (long n = 2; n <= tr.summands; ++n) {
            z = descDirectSum(descLp(Rat(1), 2), {w, z});  // Z_(n+1) = W oplus_1 Z_n
            summands.push_back(z);
        }
    } else {
        for (long n = 1; n <= tr.summands; ++n)
            summands.push_back(wSpaceApprox(fundamentalSeq(xi, n), tr, depth + 1));
    }
    long count = static_cast<long>(summands.size());
    DescPtr r = descDirectSum(descLp(Rat(2), count), std::move(summands));
    if (r->dimension() > tr.maxDim) throw std::runtime_error("wSpaceApprox: dimension budget");
    return r;
}

/// Companion V_xi truncation: an l1 space of matching dimension.
inline DescPtr vSpaceApprox(const Ordinal& xi, const WTruncation& tr = WTruncation{}) {
    return descLp(Rat(1), wSpaceApprox(xi, tr)->dimension());
}

// --- grammars ---

inline std::string descToString(const DescPtr& d) {
    switch (d->kind) {
        case NormDescriptor::Kind::Lp:
            return "lp(" + (d->pInf ? std::string("inf") : ratToString(d->p)) + "," +
                   std::to_string(d->dim) + ")";
        case NormDescriptor::Kind::Schreier:
            return "schreier(" + ordToString(d->xi) + "," + std::to_string(d->dim) + ")";
        case NormDescriptor::Kind::XXi2:
            return "xxi2(" + ordToString(d->xi) + "," + std::to_string(d->dim) + ")";
        case NormDescriptor::Kind::Zpq: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& node : d->zNodes) arr.push_back(node);
            return "z(" + std::to_string(d->zp) + "," + std::to_string(d->zq) + "," +
                   arr.dump() + ")";
        }
        case NormDescriptor::Kind::Convexify:
            return "conv(" + descToString(d->base) + "," + ratToString(d->p) + ")";
        case NormDescriptor::Kind::Summing:
            return "summing(" + std::to_string(d->dim) + ")";
        case NormDescriptor::Kind::DirectSum: {
            std::string s = "dsum(" + descToString(d->outer) + ";";
            for (size_t i = 0; i < d->inners.size(); ++i)
                s += (i ? "," : " ") + descToString(d->inners[i]);
            return s + ")";
        }
    }
    throw std::logic_error("unreachable");
}

namespace detail {

/// Splits "a,b,c" at top level (outside (), [] nesting).
inline std::vector<std::string> splitTop(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string stripSpace(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) r += c;
    return r;
}

}  // namespace detail

inline DescPtr parseDescriptor(const std::string& input);

namespace detail {

inline DescPtr parseDescriptorInner(const std::string& s) {
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw std::invalid_argument("descriptor parse error: '" + s + "'");
    std::string head = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    if (head == "lp") {
        auto parts = splitTop(args, ',');
        if (parts.size() != 2) throw std::invalid_argument("lp(p,dim)");
        if (stripSpace(parts[0]) == "inf") return descLpInf(std::stol(parts[1]));
        return descLp(parseRat(stripSpace(parts[0])), std::stol(parts[1]));
    }
    if (head == "schreier" || head == "xxi2") {
        auto parts = splitTop(args, ',');
        if (parts.size() != 2) throw std::invalid_argument(head + "(xi,dim)");
        Ordinal xi = parseOrdinal(parts[0]);
        long dim = std::stol(parts[1]);
        return head == "schreier" ? descSchreier(xi, dim) : descXXi2(xi, dim);
    }
    if (head == "z") {
        auto parts = splitTop(args, ',');
        if (parts.size() < 3) throw std::invalid_argument("z(p,q,[[...],...])");
        std::string treeStr;
        for (size_t i = 2; i < parts.size(); ++i) treeStr += (i > 2 ? "," : "") + parts[i];
        auto j = nlohmann::json::parse(treeStr);
        TreeNodeSet nodes;
        for (const auto& node : j) nodes.push_back(node.get<TreeNode>());
        return descZpq(std::stol(parts[0]), std::stol(parts[1]), std::move(nodes));
    }
    if (head == "conv") {
        auto parts = splitTop(args, ',');
        if (parts.size() != 2) throw std::invalid_argument("conv(desc,t)");
        return descConvexify(parseDescriptor(parts[0]), parseRat(stripSpace(parts[1])));
    }
    if (head == "summing") return descSumming(std::stol(args));
    if (head == "dsum") {
        auto halves = splitTop(args, ';');
        if (halves.size() != 2) throw std::invalid_argument("dsum(outer; inners...)");
        DescPtr outer = parseDescriptor(halves[0]);
        std::vector<DescPtr> inners;
        for (const auto& p : splitTop(halves[1], ',')) inners.push_back(parseDescriptor(p));
        return descDirectSum(outer, std::move(inners));
    }
    throw std::invalid_argument("unknown descriptor kind: '" + head + "'");
}

}  // namespace detail

inline DescPtr parseDescriptor(const std::string& input) {
    std::string s;
    {  // trim outer whitespace only; nested payloads keep their own
        size_t b = input.find_first_not_of(" \t\n");
        size_t e = input.find_last_not_of(" \t\n");
        if (b == std::string::npos) throw std::invalid_argument("empty descriptor");
        s = input.substr(b, e - b + 1);
    }
    return detail::parseDescriptorInner(s);
}

/// Vectors are written `[1, -2/3, 0]`.
inline FinVector parseVector(const std::string& s) {
    std::string t = detail::stripSpace(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument("vector must be bracketed: [a, b, ...]");
    std::string body = t.substr(1, t.size() - 2);
    FinVector v;
    if (body.empty()) return v;
    for (const auto& part : detail::splitTop(body, ',')) v.push_back(parseRat(part));
    return v;
}

inline std::string vectorToString(const FinVector& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + ratToString(v[i]);
    return s + "]";
}

}  // namespace oix
