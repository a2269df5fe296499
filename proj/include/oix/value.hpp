#pragma once

#include "oix/rational.hpp"

#include <algorithm>
#include <optional>

namespace oix {

/// Exact rational, or a certified enclosing interval when the true value is
/// irrational (square roots, fractional powers). lo <= true value <= hi.
struct Value {
    Rat lo, hi;
    bool exact = true;

    Value() : lo(0), hi(0), exact(true) {}
    Value(const Rat& q) : lo(q), hi(q), exact(true) {}
    Value(const Rat& l, const Rat& h) : lo(l), hi(h), exact(l == h) {
        if (lo > hi) throw std::logic_error("Value: lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    double approx() const { return ratToDouble(mid()); }

    bool definitelyLE(const Rat& q) const { return hi <= q; }
    bool definitelyLT(const Rat& q) const { return hi < q; }
    bool definitelyGT(const Rat& q) const { return lo > q; }
    bool definitelyGE(const Rat& q) const { return lo >= q; }
    bool contains(const Rat& q) const { return lo <= q && q <= hi; }
};

inline Value operator+(const Value& a, const Value& b) {
    Value v(a.lo + b.lo, a.hi + b.hi);
    v.exact = a.exact && b.exact;
    return v;
}

inline Value operator-(const Value& a, const Value& b) {
    Value v(a.lo - b.hi, a.hi - b.lo);
    v.exact = a.exact && b.exact;
    return v;
}

inline Value operator*(const Value& a, const Value& b) {
    Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Value v(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
    v.exact = a.exact && b.exact;
    return v;
}

inline Value valueAbs(const Value& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) {
        Value v(-a.hi, -a.lo);
        v.exact = a.exact;
        return v;
    }
    Value v(Rat(0), std::max(ratAbs(a.lo), a.hi));
    v.exact = false;
    return v;
}

inline Value valueMax(const Value& a, const Value& b) {
    Value v(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
    v.exact = (v.lo == v.hi) || (a.exact && b.exact && (a.lo >= b.hi || b.lo >= a.hi));
    if (v.lo == v.hi) v.exact = true;
    return v;
}

inline Value valueDivPos(const Value& a, const Value& b) {
    if (b.lo <= 0) throw std::domain_error("valueDivPos: divisor not positive");
    Value v(a.lo / b.hi, a.hi / b.lo);
    v.exact = a.exact && b.exact;
    return v;
}

namespace detail {
// Scale used for irrational enclosures; width <= 2^-64 well below 1e-9.
inline const Int& rootScale() {
    static const Int s = intPow(Int(2), 64);
    return s;
}
}  // namespace detail

/// k-th root of a nonnegative rational: exact when num and den are perfect
/// k-th powers, certified interval otherwise.
inline Value ratRoot(const Rat& q, unsigned long k) {
    if (q < 0) throw std::domain_error("root of negative");
    if (k == 1) return Value(q);
    Int rn, rd;
    if (isPerfectPower(q.get_num(), k, rn) && isPerfectPower(q.get_den(), k, rd)) {
        Rat r(rn, rd);
        r.canonicalize();
        return Value(r);
    }
    const Int& s = detail::rootScale();
    Int sk = intPow(s, k);
    // root(q) = root(num*den^(k-1)) / den ; scale numerator by s^k.
    Int m = q.get_num() * intPow(q.get_den(), k - 1) * sk;
    Int r = introot(m, k);
    Rat lo(r, q.get_den() * s), hi(r + 1, q.get_den() * s);
    lo.canonicalize();
    hi.canonicalize();
    return Value(lo, hi);
}

inline Value ratSqrt(const Rat& q) { return ratRoot(q, 2); }

inline Value valueRoot(const Value& v, unsigned long k) {
    if (v.lo < 0) throw std::domain_error("root of negative value");
    Value lo = ratRoot(v.lo, k), hi = ratRoot(v.hi, k);
    Value r(lo.lo, hi.hi);
    r.exact = v.exact && lo.exact && hi.exact && lo.lo == hi.hi;
    if (v.exact && lo.exact) r = lo;
    return r;
}

inline Value valueSqrt(const Value& v) { return valueRoot(v, 2); }

inline Value valuePowUI(const Value& v, unsigned long e) {
    if (e == 0) return Value(Rat(1));
    if (v.lo < 0) throw std::domain_error("valuePowUI: negative base");
    Value r(ratPow(v.lo, e), ratPow(v.hi, e));
    r.exact = v.exact;
    return r;
}

/// x^(a/b) for x >= 0 and a,b positive integers.
inline Value valueRatPow(const Value& v, unsigned long a, unsigned long b) {
    return valueRoot(valuePowUI(v, a), b);
}

}  // namespace oix
