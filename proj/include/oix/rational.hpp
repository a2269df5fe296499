#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace oix {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat makeRat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parse "a", "-a", "a/b" (decimal integers).
inline Rat parseRat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

inline std::string ratToString(const Rat& r) {
    return r.get_str();
}

inline double ratToDouble(const Rat& r) { return r.get_d(); }

inline Rat ratAbs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// floor(num/den) for integers, den > 0.
inline Int floorDiv(const Int& num, const Int& den) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

/// Integer k-th root: largest r with r^k <= n. Requires n >= 0, k >= 1.
inline Int introot(const Int& n, unsigned long k) {
    if (n < 0) throw std::domain_error("introot of negative");
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline bool isPerfectPower(const Int& n, unsigned long k, Int& root) {
    if (n < 0) return false;
    root = introot(n, k);
    Int p;
    mpz_pow_ui(p.get_mpz_t(), root.get_mpz_t(), k);
    return p == n;
}

inline Int intPow(const Int& b, unsigned long e) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), e);
    return p;
}

inline Rat ratPow(const Rat& b, unsigned long e) {
    Rat p;
    mpz_pow_ui(p.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(p.get_den_mpz_t(), b.get_den_mpz_t(), e);
    return p;  // already canonical
}

}  // namespace oix
