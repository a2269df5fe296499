#pragma once

#include "oix/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oix {

/// Finite subset of N, kept as a strictly increasing sequence.
using FinSet = std::vector<long>;

inline void checkFinSet(const FinSet& e) {
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 1) throw std::invalid_argument("FinSet elements must be positive");
        if (i && e[i] <= e[i - 1]) throw std::invalid_argument("FinSet not strictly increasing");
    }
}

struct FamilyExpr;
using FamilyPtr = std::shared_ptr<const FamilyExpr>;

/// Expression tree over the regular families used here. Compose(F,G) is F[G]:
/// unions E_1 < ... < E_n with each E_i in G and (min E_i)_i in F.
/// Full is the S_{omega_1} convention, the family of all finite sets.
struct FamilyExpr {
    enum class Kind { S0, Schreier, Ak, Compose, Full } kind;
    Ordinal xi;               // Schreier
    long k = 0;               // Ak
    FamilyPtr outer, inner;   // Compose

    int depth() const {
        if (kind != Kind::Compose) return 1;
        return 1 + std::max(outer->depth(), inner->depth());
    }
};

constexpr int kFamilyExprDepthCap = 16;

inline FamilyPtr famS0() {
    auto f = std::make_shared<FamilyExpr>();
    f->kind = FamilyExpr::Kind::S0;
    return f;
}
inline FamilyPtr famSchreier(const Ordinal& xi) {
    auto f = std::make_shared<FamilyExpr>();
    f->kind = FamilyExpr::Kind::Schreier;
    f->xi = xi;
    return f;
}
inline FamilyPtr famAk(long k) {
    if (k < 1) throw std::invalid_argument("A_k needs k >= 1");
    auto f = std::make_shared<FamilyExpr>();
    f->kind = FamilyExpr::Kind::Ak;
    f->k = k;
    return f;
}
inline FamilyPtr famCompose(FamilyPtr outerF, FamilyPtr innerG) {
    auto f = std::make_shared<FamilyExpr>();
    f->kind = FamilyExpr::Kind::Compose;
    f->outer = std::move(outerF);
    f->inner = std::move(innerG);
    if (f->depth() > kFamilyExprDepthCap)
        throw std::invalid_argument("family expression too deep");
    return f;
}
inline FamilyPtr famFull() {
    auto f = std::make_shared<FamilyExpr>();
    f->kind = FamilyExpr::Kind::Full;
    return f;
}

namespace detail {

/// Decomposition search for F[G]: split e into successive blocks, each in
/// `inner`, with the block minima forming a set in `outer`. Greedy maximal
/// first block first; exhaustive backtracking as fallback. Pruning uses
/// hereditariness of `outer` (a prefix of a valid minima set is valid).
template <class InnerFn, class OuterFn>
bool composeGreedy(const FinSet& e, InnerFn inner, OuterFn outer) {
    FinSet mins;
    size_t pos = 0;
    while (pos < e.size()) {
        size_t best = 0;
        for (size_t len = 1; pos + len <= e.size(); ++len) {
            FinSet block(e.begin() + pos, e.begin() + pos + len);
            if (inner(block))
                best = len;
            else
                break;  // inner hereditary: membership of prefixes is an initial segment
        }
        if (best == 0) return false;
        mins.push_back(e[pos]);
        pos += best;
    }
    return outer(mins);
}

template <class InnerFn, class OuterFn>
bool composeExhaustive(const FinSet& e, size_t pos, FinSet& mins, InnerFn inner, OuterFn outer) {
    if (pos == e.size()) return outer(mins);
    mins.push_back(e[pos]);
    if (outer(mins)) {  // hereditary prune: extendable only if the prefix is a member
        for (size_t len = 1; pos + len <= e.size(); ++len) {
            FinSet block(e.begin() + pos, e.begin() + pos + len);
            if (!inner(block)) break;
            if (composeExhaustive(e, pos + len, mins, inner, outer)) {
                mins.pop_back();
                return true;
            }
        }
    }
    mins.pop_back();
    return false;
}

template <class InnerFn, class OuterFn>
bool composeMember(const FinSet& e, InnerFn inner, OuterFn outer) {
    if (e.empty()) return true;
    if (composeGreedy(e, inner, outer)) return true;
    FinSet mins;
    return composeExhaustive(e, 0, mins, inner, outer);
}

}  // namespace detail

/// Membership in the Schreier family S_xi under the canonical fundamental
/// sequences. Limit case checks every admissible n <= min E.
inline bool memberSchreier(const Ordinal& xi, const FinSet& e) {
    if (e.empty()) return true;
    auto c = ordClassify(xi);
    if (c.kind == OrdKind::Zero) return e.size() <= 1;
    if (c.kind == OrdKind::Successor) {
        const Ordinal pred = *c.pred;
        return detail::composeMember(
            e, [&](const FinSet& b) { return memberSchreier(pred, b); },
            [&](const FinSet& mins) {
                return mins.empty() || static_cast<long>(mins.size()) <= mins.front();
            });
    }
    for (long n = 1; n <= e.front(); ++n) {
        if (memberSchreier(fundamentalSeq(xi, n), e)) return true;
    }
    return false;
}

inline bool memberExpr(const FamilyPtr& f, const FinSet& e) {
    if (e.empty()) return true;
    switch (f->kind) {
        case FamilyExpr::Kind::S0:
            return e.size() <= 1;
        case FamilyExpr::Kind::Schreier:
            return memberSchreier(f->xi, e);
        case FamilyExpr::Kind::Ak:
            return static_cast<long>(e.size()) <= f->k;
        case FamilyExpr::Kind::Full:
            return true;
        case FamilyExpr::Kind::Compose:
            return detail::composeMember(
                e, [&](const FinSet& b) { return memberExpr(f->inner, b); },
                [&](const FinSet& mins) { return memberExpr(f->outer, mins); });
    }
    return false;
}

/// Greedy-only compose decision, exposed for the greedy-vs-exhaustive checks.
inline bool memberExprGreedy(const FamilyPtr& f, const FinSet& e) {
    if (f->kind != FamilyExpr::Kind::Compose) return memberExpr(f, e);
    if (e.empty()) return true;
    return detail::composeGreedy(
        e, [&](const FinSet& b) { return memberExpr(f->inner, b); },
        [&](const FinSet& mins) { return memberExpr(f->outer, mins); });
}

struct FamilyBudget {
    long maxN = 24;
    long maxMembers = 1 << 20;
};

struct RestrictedFamily {
    FamilyPtr source;
    long n = 0;
    std::vector<FinSet> members;  // sorted lexicographically, empty set first
};

namespace detail {

inline void enumerateMembers(const FamilyPtr& f, long n, const FamilyBudget& budget,
                             FinSet& cur, std::vector<FinSet>& out) {
    if (static_cast<long>(out.size()) > budget.maxMembers)
        throw std::runtime_error("restriction budget exceeded (member count)");
    out.push_back(cur);
    long from = cur.empty() ? 1 : cur.back() + 1;
    for (long v = from; v <= n; ++v) {
        cur.push_back(v);
        // hereditary: no member extends a non-member
        if (memberExpr(f, cur)) enumerateMembers(f, n, budget, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

inline RestrictedFamily restrict(const FamilyPtr& f, long n,
                                 const FamilyBudget& budget = FamilyBudget{}) {
    if (n < 1) throw std::invalid_argument("restrict: n must be >= 1");
    if (n > budget.maxN) throw std::runtime_error("restriction budget exceeded (n)");
    RestrictedFamily r;
    r.source = f;
    r.n = n;
    FinSet cur;
    detail::enumerateMembers(f, n, budget, cur, r.members);
    std::sort(r.members.begin(), r.members.end());
    return r;
}

/// Derivative count of the member set viewed as a tree of increasing
/// sequences: iterate removal of maximal members until only the empty set
/// survives.
inline long cbIndexRestricted(const RestrictedFamily& r) {
    std::vector<FinSet> cur = r.members;  // sorted; prefix precedes extension
    long passes = 0;
    auto onlyEmpty = [&] {
        return cur.empty() || (cur.size() == 1 && cur.front().empty());
    };
    while (!onlyEmpty()) {
        std::vector<FinSet> next;
        for (size_t i = 0; i < cur.size(); ++i) {
            bool hasExt = i + 1 < cur.size() && cur[i].size() < cur[i + 1].size() &&
                          std::equal(cur[i].begin(), cur[i].end(), cur[i + 1].begin());
            if (hasExt) next.push_back(cur[i]);
        }
        cur = std::move(next);
        ++passes;
    }
    return passes;
}

/// i(S0)=1, i(A_k)=k, i(S_xi)=w^xi, i(F[G])=i(G)*i(F).
inline Ordinal iotaSymbolic(const FamilyPtr& f) {
    switch (f->kind) {
        case FamilyExpr::Kind::S0:
            return ordOne();
        case FamilyExpr::Kind::Ak:
            return Ordinal::fromInt(f->k);
        case FamilyExpr::Kind::Schreier:
            return omegaPow(f->xi);
        case FamilyExpr::Kind::Compose:
            return ordMul(iotaSymbolic(f->inner), iotaSymbolic(f->outer));
        case FamilyExpr::Kind::Full:
            throw std::domain_error("iota of the full family is not an ordinal below epsilon_0");
    }
    throw std::logic_error("unreachable");
}

struct SpreadingReport {
    bool spreading = true;
    FinSet member, spread;  // first violation when not spreading
};

/// Checks the spreading condition within {1..n}; spreads leaving the
/// restriction window are ignored.
inline SpreadingReport isSpreadingRestricted(const RestrictedFamily& r) {
    auto isMember = [&](const FinSet& e) {
        return std::binary_search(r.members.begin(), r.members.end(), e);
    };
    for (const auto& e : r.members) {
        if (e.empty()) continue;
        // enumerate pointwise-dominating spreads inside {1..n}
        FinSet spread(e.size());
        std::function<bool(size_t)> go = [&](size_t i) -> bool {
            if (i == e.size()) return isMember(spread) ? true : false;
            long lo = std::max(e[i], i ? spread[i - 1] + 1 : 1);
            for (long v = lo; v <= r.n - static_cast<long>(e.size() - i - 1); ++v) {
                spread[i] = v;
                if (!go(i + 1)) return false;
            }
            return true;
        };
        if (!go(0)) return {false, e, spread};
    }
    return {true, {}, {}};
}

struct GasparisResult {
    bool found = false;
    FinSet prefix;
};

struct BudgetExhaustedFamilies : std::runtime_error {
    BudgetExhaustedFamilies() : std::runtime_error("gasparis search budget exhausted") {}
};

/// Bounded constructive search for a Gasparis-style prefix m_1 < ... < m_depth
/// with values <= valueCap. The prefix is read as the start of the map M that
/// continues with consecutive integers after m_depth; the certificate requires
/// M(E) in g for every E in f with E contained in {1..horizon}. NotFound means
/// no prefix with values <= valueCap passes this finite check.
inline GasparisResult gasparisPrefixSearch(const FamilyPtr& f, const FamilyPtr& g, long depth,
                                           long valueCap, long horizon = 0,
                                           long nodeBudget = 8000000) {
    if (depth < 1) throw std::invalid_argument("gasparis: depth must be >= 1");
    if (valueCap < depth) return {false, {}};
    if (horizon <= 0) horizon = valueCap;

    FinSet prefix;
    long expansions = 0;
    auto imageOf = [&](const FinSet& e) {
        FinSet img(e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            long idx = e[i];
            img[i] = idx <= depth ? prefix[idx - 1] : prefix[depth - 1] + (idx - depth);
        }
        return img;
    };
    // lazily walk the members of f with max element exactly m (hereditary
    // pruning); aborts on the first bad image
    std::function<bool(FinSet&, long)> levelOk = [&](FinSet& stem, long m) -> bool {
        FinSet e = stem;
        e.push_back(m);
        if (memberExpr(f, e)) {
            if (++expansions > nodeBudget) throw BudgetExhaustedFamilies();
            if (!memberExpr(g, imageOf(e))) return false;
        }
        long from = stem.empty() ? 1 : stem.back() + 1;
        for (long v = from; v < m; ++v) {
            stem.push_back(v);
            bool keep = memberExpr(f, stem);  // no member extends a non-member
            bool ok = !keep || levelOk(stem, m);
            stem.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    auto checkMaxLevel = [&](long m) {
        FinSet stem;
        return levelOk(stem, m);
    };

    std::function<bool()> search = [&]() -> bool {
        long j = static_cast<long>(prefix.size());
        if (j == depth) {
            for (long m = depth + 1; m <= horizon; ++m)
                if (!checkMaxLevel(m)) return false;
            return true;
        }
        long lo = prefix.empty() ? 1 : prefix.back() + 1;
        for (long v = lo; v + (depth - j - 1) <= valueCap; ++v) {
            if (++expansions > nodeBudget) throw BudgetExhaustedFamilies();
            prefix.push_back(v);
            if (checkMaxLevel(j + 1) && search()) return true;
            prefix.pop_back();
        }
        return false;
    };

    if (search()) return {true, prefix};
    return {false, {}};
}

// --- grammar: `S0`, `S(<ordinal>)`, `S(w1)`, `A(<k>)`, `F[G]` ---

inline std::string familyToString(const FamilyPtr& f) {
    switch (f->kind) {
        case FamilyExpr::Kind::S0:
            return "S0";
        case FamilyExpr::Kind::Schreier:
            return "S(" + ordToString(f->xi) + ")";
        case FamilyExpr::Kind::Ak:
            return "A(" + std::to_string(f->k) + ")";
        case FamilyExpr::Kind::Full:
            return "S(w1)";
        case FamilyExpr::Kind::Compose:
            return familyToString(f->outer) + "[" + familyToString(f->inner) + "]";
    }
    throw std::logic_error("unreachable");
}

namespace detail {

struct FamilyParser {
    const std::string& s;
    size_t pos = 0;

    explicit FamilyParser(const std::string& str) : s(str) {}
    void skipWs() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skipWs();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("family parse error at position " + std::to_string(pos) +
                                    ": " + what);
    }

    std::string parenContent() {
        if (!eat('(')) fail("expected '('");
        size_t start = pos;
        int level = 1;
        while (pos < s.size() && level > 0) {
            if (s[pos] == '(') ++level;
            if (s[pos] == ')') --level;
            ++pos;
        }
        if (level != 0) fail("unbalanced parentheses");
        return s.substr(start, pos - 1 - start);
    }

    FamilyPtr primary() {
        skipWs();
        if (pos < s.size() && s[pos] == 'S') {
            ++pos;
            if (pos < s.size() && s[pos] == '0') {
                ++pos;
                return famS0();
            }
            std::string arg = parenContent();
            std::string trimmed;
            for (char c : arg)
                if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
            if (trimmed == "w1") return famFull();
            return famSchreier(parseOrdinal(arg));
        }
        if (pos < s.size() && s[pos] == 'A') {
            ++pos;
            std::string arg = parenContent();
            long k = std::stol(arg);
            return famAk(k);
        }
        fail("expected 'S0', 'S(...)', or 'A(...)'");
    }

    FamilyPtr expr() {
        FamilyPtr e = primary();
        while (eat('[')) {
            size_t start = pos;
            int level = 1;
            while (pos < s.size() && level > 0) {
                if (s[pos] == '[') ++level;
                if (s[pos] == ']') --level;
                ++pos;
            }
            if (level != 0) fail("unbalanced brackets");
            std::string innerStr = s.substr(start, pos - 1 - start);
            e = famCompose(e, parseFamilyStr(innerStr));
        }
        return e;
    }

    static FamilyPtr parseFamilyStr(const std::string& str);
};

inline FamilyPtr FamilyParser::parseFamilyStr(const std::string& str) {
    FamilyParser p(str);
    FamilyPtr f = p.expr();
    p.skipWs();
    if (p.pos != str.size()) p.fail("trailing input");
    return f;
}

}  // namespace detail

inline FamilyPtr parseFamily(const std::string& s) {
    return detail::FamilyParser::parseFamilyStr(s);
}

}  // namespace oix
