#pragma once

#include "oix/rational.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace oix {

struct OrdinalTerm;

/// Ordinal below epsilon_0 in Cantor normal form:
///   w^(e_1)*c_1 + ... + w^(e_k)*c_k,  e_1 > e_2 > ... > e_k,  c_i >= 1.
/// The empty term list is 0. Exponents are themselves Ordinals.
struct Ordinal {
    std::vector<OrdinalTerm> terms;

    Ordinal() = default;
    static Ordinal fromInt(const Int& n);
    static Ordinal fromInt(long n) { return fromInt(Int(n)); }

    bool isZero() const { return terms.empty(); }
    int towerDepth() const;
    void validate() const;
};

struct OrdinalTerm {
    Ordinal exp;
    Int coeff;
};

constexpr int kOrdinalTowerCap = 32;

inline int ordCmp(const Ordinal& a, const Ordinal& b);

inline int termCmp(const OrdinalTerm& s, const OrdinalTerm& t) {
    int c = ordCmp(s.exp, t.exp);
    if (c != 0) return c;
    return s.coeff < t.coeff ? -1 : (s.coeff > t.coeff ? 1 : 0);
}

inline int ordCmp(const Ordinal& a, const Ordinal& b) {
    size_t n = std::min(a.terms.size(), b.terms.size());
    for (size_t i = 0; i < n; ++i) {
        int c = termCmp(a.terms[i], b.terms[i]);
        if (c != 0) return c;
    }
    if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
    return 0;
}

inline bool operator==(const Ordinal& a, const Ordinal& b) { return ordCmp(a, b) == 0; }
inline bool operator!=(const Ordinal& a, const Ordinal& b) { return ordCmp(a, b) != 0; }
inline bool operator<(const Ordinal& a, const Ordinal& b) { return ordCmp(a, b) < 0; }
inline bool operator<=(const Ordinal& a, const Ordinal& b) { return ordCmp(a, b) <= 0; }
inline bool operator>(const Ordinal& a, const Ordinal& b) { return ordCmp(a, b) > 0; }
inline bool operator>=(const Ordinal& a, const Ordinal& b) { return ordCmp(a, b) >= 0; }

inline Ordinal Ordinal::fromInt(const Int& n) {
    if (n < 0) throw std::invalid_argument("negative ordinal");
    Ordinal o;
    if (n > 0) o.terms.push_back({Ordinal(), n});
    return o;
}

inline int Ordinal::towerDepth() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, 1 + t.exp.towerDepth());
    return d;
}

inline void Ordinal::validate() const {
    for (size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff < 1) throw std::invalid_argument("ordinal coefficient < 1");
        if (i + 1 < terms.size() && !(ordCmp(terms[i + 1].exp, terms[i].exp) < 0))
            throw std::invalid_argument("ordinal exponents not strictly decreasing");
        terms[i].exp.validate();
    }
    if (towerDepth() > kOrdinalTowerCap)
        throw std::invalid_argument("ordinal exponent tower too deep");
}

inline Ordinal ordZero() { return Ordinal(); }
inline Ordinal ordOne() { return Ordinal::fromInt(1); }

inline Ordinal omegaPow(const Ordinal& e) {
    Ordinal o;
    o.terms.push_back({e, Int(1)});
    if (o.towerDepth() > kOrdinalTowerCap)
        throw std::invalid_argument("omegaPow: exponent tower too deep");
    return o;
}

inline Ordinal ordOmega() { return omegaPow(ordOne()); }

/// CNF sum: low-order terms of a below the leading exponent of b are absorbed.
inline Ordinal ordAdd(const Ordinal& a, const Ordinal& b) {
    if (b.isZero()) return a;
    if (a.isZero()) return b;
    const Ordinal& e = b.terms.front().exp;
    Ordinal r;
    size_t i = 0;
    while (i < a.terms.size() && ordCmp(a.terms[i].exp, e) > 0) r.terms.push_back(a.terms[i++]);
    if (i < a.terms.size() && a.terms[i].exp == e) {
        r.terms.push_back({e, a.terms[i].coeff + b.terms.front().coeff});
    } else {
        r.terms.push_back(b.terms.front());
    }
    for (size_t j = 1; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
    return r;
}

/// CNF product. a*w^f = w^(e1+f) for f > 0; the finite part of b multiplies
/// the leading coefficient and keeps a's tail.
inline Ordinal ordMul(const Ordinal& a, const Ordinal& b) {
    if (a.isZero() || b.isZero()) return Ordinal();
    const Ordinal& e1 = a.terms.front().exp;
    Ordinal r;
    for (const auto& t : b.terms) {
        if (!t.exp.isZero()) {
            Ordinal piece;
            piece.terms.push_back({ordAdd(e1, t.exp), t.coeff});
            r = ordAdd(r, piece);
        } else {
            Ordinal piece;
            piece.terms.push_back({e1, a.terms.front().coeff * t.coeff});
            for (size_t j = 1; j < a.terms.size(); ++j) piece.terms.push_back(a.terms[j]);
            r = ordAdd(r, piece);
        }
    }
    return r;
}

enum class OrdKind { Zero, Successor, Limit };

struct OrdClass {
    OrdKind kind;
    std::optional<Ordinal> pred;  // set iff kind == Successor
};

inline OrdClass ordClassify(const Ordinal& a) {
    if (a.isZero()) return {OrdKind::Zero, std::nullopt};
    const auto& last = a.terms.back();
    if (!last.exp.isZero()) return {OrdKind::Limit, std::nullopt};
    Ordinal p = a;
    if (p.terms.back().coeff == 1)
        p.terms.pop_back();
    else
        p.terms.back().coeff -= 1;
    return {OrdKind::Successor, p};
}

inline bool ordIsLimit(const Ordinal& a) { return ordClassify(a).kind == OrdKind::Limit; }
inline bool ordIsSuccessor(const Ordinal& a) { return ordClassify(a).kind == OrdKind::Successor; }

inline std::optional<Int> ordFiniteValue(const Ordinal& a) {
    if (a.isZero()) return Int(0);
    if (a.terms.size() == 1 && a.terms[0].exp.isZero()) return a.terms[0].coeff;
    return std::nullopt;
}

/// n-th element of the canonical fundamental sequence of a limit ordinal.
/// Standard CNF rule on the last term, then +1 whenever the result is a limit,
/// so every element is a successor. Elements strictly increase to a.
inline Ordinal fundamentalSeq(const Ordinal& a, const Int& n) {
    if (n < 1) throw std::invalid_argument("fundamentalSeq: n must be >= 1");
    if (!ordIsLimit(a)) throw std::domain_error("fundamentalSeq: not a limit ordinal");
    Ordinal prefix = a;
    OrdinalTerm last = prefix.terms.back();
    prefix.terms.pop_back();
    if (last.coeff > 1) {
        prefix.terms.push_back({last.exp, last.coeff - 1});
    }
    auto ec = ordClassify(last.exp);
    Ordinal r;
    if (ec.kind == OrdKind::Successor) {
        // last term w^(b+1): n-th element appends w^b * n
        Ordinal step;
        step.terms.push_back({*ec.pred, n});
        r = ordAdd(prefix, step);
    } else {
        // limit exponent: recurse into the exponent
        Ordinal en = fundamentalSeq(last.exp, n);
        r = ordAdd(prefix, omegaPow(en));
    }
    if (ordIsLimit(r)) r = ordAdd(r, ordOne());
    return r;
}

inline Ordinal fundamentalSeq(const Ordinal& a, long n) { return fundamentalSeq(a, Int(n)); }

/// True iff a is 0, 1, or w^(w^z): the ordinals with a*b < a for all a,b < a.
inline bool isMultiplicativelyIndecomposable(const Ordinal& a) {
    if (a.isZero() || a == ordOne()) return true;
    if (a.terms.size() != 1 || a.terms[0].coeff != 1) return false;
    const Ordinal& e = a.terms[0].exp;
    return e.terms.size() == 1 && e.terms[0].coeff == 1;
}

// --- text grammar: `0`, decimal naturals, `w`, `w^(expr)`, `*k`, `+` ---

inline std::string ordToString(const Ordinal& a) {
    if (a.isZero()) return "0";
    std::string s;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (i) s += " + ";
        const auto& t = a.terms[i];
        if (t.exp.isZero()) {
            s += t.coeff.get_str();
        } else {
            if (t.exp == ordOne())
                s += "w";
            else
                s += "w^(" + ordToString(t.exp) + ")";
            if (t.coeff != 1) s += "*" + t.coeff.get_str();
        }
    }
    return s;
}

namespace detail {

struct OrdParser {
    const std::string& s;
    size_t pos = 0;

    explicit OrdParser(const std::string& str) : s(str) {}

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
        throw std::invalid_argument("ordinal parse error at position " + std::to_string(pos) +
                                    ": " + what);
    }

    Int nat() {
        skipWs();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a natural number");
        return Int(s.substr(start, pos - start));
    }

    Ordinal atom() {
        skipWs();
        if (pos >= s.size()) fail("expected term");
        if (s[pos] == 'w') {
            ++pos;
            if (eat('^')) {
                if (!eat('(')) fail("expected '(' after w^");
                Ordinal e = expr();
                if (!eat(')')) fail("expected ')'");
                return omegaPow(e);
            }
            return ordOmega();
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) return Ordinal::fromInt(nat());
        fail("expected '0', a natural, or 'w'");
    }

    Ordinal term() {
        Ordinal base = atom();
        if (eat('*')) {
            Int k = nat();
            if (k < 1) fail("coefficient must be >= 1");
            return ordMul(base, Ordinal::fromInt(k));
        }
        return base;
    }

    Ordinal expr() {
        Ordinal r = term();
        while (eat('+')) r = ordAdd(r, term());
        return r;
    }
};

}  // namespace detail

inline Ordinal parseOrdinal(const std::string& s) {
    detail::OrdParser p(s);
    Ordinal r = p.expr();
    p.skipWs();
    if (p.pos != s.size()) p.fail("trailing input");
    r.validate();
    return r;
}

}  // namespace oix
