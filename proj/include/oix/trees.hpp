#pragma once

#include "oix/ordinal.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"

namespace oix {

using Seq = std::vector<Ordinal>;

inline bool seqLess(const Seq& a, const Seq& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int c = ordCmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

inline bool isPrefix(const Seq& s, const Seq& t) {
    if (s.size() > t.size()) return false;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] != t[i]) return false;
    return true;
}

inline bool isProperPrefix(const Seq& s, const Seq& t) {
    return s.size() < t.size() && isPrefix(s, t);
}

/// Downward-closed set of finite label sequences. rootIncluded distinguishes
/// trees (empty sequence present) from B-trees (non-empty sequences only).
struct FiniteTree {
    bool rootIncluded = true;
    std::vector<Seq> nodes;  // sorted by seqLess, no duplicates

    bool empty() const { return nodes.empty(); }
    size_t size() const { return nodes.size(); }

    bool contains(const Seq& s) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), s, seqLess);
        return it != nodes.end() && *it == s;
    }

    static FiniteTree fromNodes(bool rootIncluded, std::vector<Seq> ns) {
        FiniteTree t;
        t.rootIncluded = rootIncluded;
        std::sort(ns.begin(), ns.end(), seqLess);
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        t.nodes = std::move(ns);
        t.checkClosed();
        return t;
    }

    /// Adds every missing prefix instead of rejecting.
    static FiniteTree closureOf(bool rootIncluded, const std::vector<Seq>& ns) {
        std::vector<Seq> all;
        for (const auto& s : ns)
            for (size_t k = rootIncluded ? 0 : 1; k <= s.size(); ++k)
                all.emplace_back(s.begin(), s.begin() + k);
        if (rootIncluded) all.emplace_back();
        std::sort(all.begin(), all.end(), seqLess);
        all.erase(std::unique(all.begin(), all.end()), all.end());
        FiniteTree t;
        t.rootIncluded = rootIncluded;
        t.nodes = std::move(all);
        return t;
    }

    void checkClosed() const {
        for (const auto& s : nodes) {
            if (s.empty()) {
                if (!rootIncluded) throw std::invalid_argument("B-tree contains the empty sequence");
                continue;
            }
            Seq p(s.begin(), s.end() - 1);
            if (p.empty()) {
                if (rootIncluded && !contains(p))
                    throw std::invalid_argument("tree missing the root");
            } else if (!contains(p)) {
                throw std::invalid_argument("tree not closed under initial segments");
            }
        }
    }
};

/// Trees are equal as node sets; the root flag is presentation (it only
/// distinguishes empty trees of different conventions).
inline bool operator==(const FiniteTree& a, const FiniteTree& b) { return a.nodes == b.nodes; }

/// T' = T minus its maximal nodes. One pass over the sorted node list: in
/// lexicographic order every extension of s follows s directly, so s is
/// non-maximal iff its successor in the list extends it.
inline FiniteTree derivative(const FiniteTree& t) {
    FiniteTree r;
    r.rootIncluded = t.rootIncluded;
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        if (i + 1 < t.nodes.size() && isProperPrefix(t.nodes[i], t.nodes[i + 1]))
            r.nodes.push_back(t.nodes[i]);
    }
    return r;
}

inline FiniteTree derivativePower(FiniteTree t, const Int& k) {
    for (Int i = 0; i < k && !t.empty(); ++i) t = derivative(t);
    return t;
}

/// T(t) = {s : t^s in T}.
inline FiniteTree subtreeAt(const FiniteTree& t, const Seq& at) {
    if (at.empty()) return t;
    FiniteTree r;
    r.rootIncluded = t.contains(at);
    for (const auto& s : t.nodes)
        if (isPrefix(at, s)) r.nodes.emplace_back(s.begin() + at.size(), s.end());
    return r;
}

inline Int rankIterative(const FiniteTree& t) {
    FiniteTree cur = t;
    Int n = 0;
    while (!cur.empty()) {
        cur = derivative(cur);
        ++n;
    }
    return n;
}

/// Recursive rank: a present node survives one step past its deepest child.
inline Int rankRecursive(const FiniteTree& t) {
    if (t.empty()) return 0;
    std::function<Int(size_t, size_t, size_t)> go = [&](size_t lo, size_t hi,
                                                        size_t depth) -> Int {
        size_t i = lo;
        bool hasSelf = (i < hi && t.nodes[i].size() == depth);
        if (hasSelf) ++i;
        Int best = 0;
        while (i < hi) {
            Seq p(t.nodes[i].begin(), t.nodes[i].begin() + depth + 1);
            size_t j = i;
            while (j < hi && isPrefix(p, t.nodes[j])) ++j;
            best = std::max(best, go(i, j, depth + 1));
            i = j;
        }
        return best + (hasSelf ? 1 : 0);
    };
    return go(0, t.nodes.size(), 0);
}

/// Rank of a finite tree; the iterative and recursive computations are
/// cross-checked on every call.
inline Int rank(const FiniteTree& t) {
    Int a = rankIterative(t);
    Int b = rankRecursive(t);
    if (a != b) throw std::logic_error("rank cross-check failed");
    return a;
}

// --- minimal trees MT_xi / T_xi ---

/// Membership of s in MT_xi (the empty sequence is a member for every xi).
inline bool mtMember(const Ordinal& xi, const Seq& s, size_t from = 0) {
    if (from == s.size()) return true;
    auto c = ordClassify(xi);
    if (c.kind == OrdKind::Zero) return false;
    const Ordinal& head = s[from];
    if (c.kind == OrdKind::Successor) {
        if (head != xi) return false;
        return mtMember(*c.pred, s, from + 1);
    }
    // limit: head must be a successor ordinal <= xi, tail in MT_(head-1)
    auto hc = ordClassify(head);
    if (hc.kind != OrdKind::Successor || head > xi) return false;
    return mtMember(*hc.pred, s, from + 1);
}

/// Membership of a non-empty sequence in the B-tree T_xi. T_0 is empty.
inline bool minimalTreeMember(const Ordinal& xi, const Seq& s) {
    if (xi.isZero()) throw std::domain_error("T_0 is empty");
    if (s.empty()) throw std::invalid_argument("minimalTreeMember: empty sequence");
    return mtMember(xi, s);
}

/// Explicit T_xi for finite xi: the single chain (xi, xi-1, ..., 1).
inline FiniteTree minimalTreeFinite(long xi) {
    if (xi < 0) throw std::invalid_argument("negative rank");
    std::vector<Seq> nodes;
    Seq cur;
    for (long v = xi; v >= 1; --v) {
        cur.push_back(Ordinal::fromInt(v));
        nodes.push_back(cur);
    }
    return FiniteTree::fromNodes(false, std::move(nodes));
}

/// T_w truncated to labels <= n: the consecutive descending runs (h, h-1, ...)
/// with h <= n.
inline FiniteTree minimalTreeOmegaTruncated(long n) {
    std::vector<Seq> nodes;
    for (long h = 1; h <= n; ++h) {
        Seq cur;
        for (long v = h; v >= 1; --v) {
            cur.push_back(Ordinal::fromInt(v));
            nodes.push_back(cur);
        }
    }
    return FiniteTree::fromNodes(false, std::move(nodes));
}

// --- lazily-defined trees ---

struct LazyTree {
    std::function<bool(const Seq&)> member;
    /// Per-node child labels; nullopt marks an infinitely branching node.
    std::function<std::optional<std::vector<Ordinal>>(const Seq&)> childLabels;
    std::optional<Ordinal> minimalTreeTag;
    std::optional<FiniteTree> truncation;
};

struct Rank {
    bool illFounded = false;
    Ordinal value;
};

/// Stage remaining after consuming s inside MT_xi, nullopt if s is not a node.
inline std::optional<Ordinal> mtStageAfter(const Ordinal& xi, const Seq& s, size_t from = 0) {
    if (from == s.size()) return xi;
    auto c = ordClassify(xi);
    if (c.kind == OrdKind::Zero) return std::nullopt;
    const Ordinal& head = s[from];
    if (c.kind == OrdKind::Successor) {
        if (head != xi) return std::nullopt;
        return mtStageAfter(*c.pred, s, from + 1);
    }
    auto hc = ordClassify(head);
    if (hc.kind != OrdKind::Successor || head > xi) return std::nullopt;
    return mtStageAfter(*hc.pred, s, from + 1);
}

inline LazyTree makeMinimalLazyTree(const Ordinal& xi) {
    LazyTree t;
    t.minimalTreeTag = xi;
    t.member = [xi](const Seq& s) { return mtMember(xi, s); };
    t.childLabels = [xi](const Seq& s) -> std::optional<std::vector<Ordinal>> {
        auto stage = mtStageAfter(xi, s);
        if (!stage) return std::vector<Ordinal>{};
        auto c = ordClassify(*stage);
        if (c.kind == OrdKind::Zero) return std::vector<Ordinal>{};
        if (c.kind == OrdKind::Successor) return std::vector<Ordinal>{*stage};
        return std::nullopt;  // limit stage: infinitely branching
    };
    return t;
}

inline Rank symbolicRank(const LazyTree& t) {
    if (t.minimalTreeTag) return Rank{false, *t.minimalTreeTag};
    if (t.truncation) return Rank{false, Ordinal::fromInt(rank(*t.truncation))};
    throw std::invalid_argument("symbolicRank: unrecognized structure tag");
}

// --- monotone embedding search (order witnesses) ---

struct EmbeddingResult {
    bool found = false;
    /// When found: a branch of t of length xi+1 witnessing B-tree order > xi;
    /// its prefixes are the images of the minimal-tree chain.
    std::vector<Seq> witnessBranch;
    std::string reason;  // set when not found
};

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Searches for an order witness: found iff the B-tree order of t exceeds xi.
/// The input is read as a B-tree (the root, if present, is ignored).
inline EmbeddingResult monotoneEmbeddingSearch(const Ordinal& xi, const FiniteTree& t,
                                               long nodeBudget = 1000000) {
    EmbeddingResult res;
    auto fin = ordFiniteValue(xi);
    if (!fin) {
        // a finite tree has finite order, never exceeding an infinite xi
        res.found = false;
        res.reason = "rank bound: finite tree order cannot exceed an infinite ordinal";
        return res;
    }
    unsigned long k = fin->get_ui();
    long visited = 0;
    for (const auto& s : t.nodes) {
        if (++visited > nodeBudget) throw BudgetExhausted("monotoneEmbeddingSearch budget");
        if (s.size() == k + 1) {
            for (size_t j = 1; j <= s.size(); ++j)
                res.witnessBranch.emplace_back(s.begin(), s.begin() + j);
            res.found = true;
            return res;
        }
    }
    res.found = false;
    res.reason = "no branch of length " + std::to_string(k + 1);
    return res;
}

// --- serialization: list of node sequences, each a list of ordinal strings ---

inline nlohmann::json treeToJson(const FiniteTree& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : t.nodes) {
        nlohmann::json node = nlohmann::json::array();
        for (const auto& o : s) node.push_back(ordToString(o));
        arr.push_back(node);
    }
    return arr;
}

inline FiniteTree treeFromJson(const nlohmann::json& j, bool rootIncluded) {
    std::vector<Seq> nodes;
    for (const auto& node : j) {
        Seq s;
        for (const auto& o : node) s.push_back(parseOrdinal(o.get<std::string>()));
        nodes.push_back(std::move(s));
    }
    return FiniteTree::fromNodes(rootIncluded, std::move(nodes));
}

}  // namespace oix
