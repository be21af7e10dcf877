#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "rotbeta/errors.hpp"

namespace rotbeta {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }
inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// Nearest integer, ties toward +infinity (floor(x + 1/2)).
inline Int rat_round(const Rat& x) { return rat_floor(x + Rat(1, 2)); }

inline double rat_to_double(const Rat& x) { return x.get_d(); }

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw parse_error("invalid rational literal '" + s + "'", 0);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

// floor(sqrt(x * 4^k)) / 2^k  <= sqrt(x); error < 2^-k.
inline Rat sqrt_below(const Rat& x, unsigned k) {
    if (sgn(x) < 0) throw domain_error("sqrt of negative rational");
    Int num = x.get_num(), den = x.get_den();
    Int scaled = (num << (2 * k)) / den; // floor
    Int root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rat r(root, Int(1) << k);
    r.canonicalize();
    return r;
}

inline Rat sqrt_above(const Rat& x, unsigned k) {
    if (sgn(x) < 0) throw domain_error("sqrt of negative rational");
    Int num = x.get_num(), den = x.get_den();
    Int scaled = (num << (2 * k)) / den + 1;
    Int root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rat r(root + 1, Int(1) << k);
    r.canonicalize();
    return r;
}

/**
 * Closed rational interval [lo, hi]. All arithmetic is outward-exact:
 * rational endpoint operations are themselves exact, so the only widening
 * ever introduced comes from sqrt, which rounds outward by construction.
 */
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(const Rat& v) : lo(v), hi(v) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw domain_error("interval endpoints out of order");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool is_point() const { return lo == hi; }

    // Sign if decidable from the enclosure, 0 when the interval straddles 0.
    int definite_sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }

    double mid_double() const { return ((lo + hi) / 2).get_d(); }
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}
inline RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}
inline RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline RatInterval operator*(const Rat& c, const RatInterval& a) {
    return sgn(c) >= 0 ? RatInterval{c * a.lo, c * a.hi} : RatInterval{c * a.hi, c * a.lo};
}

inline RatInterval operator/(const RatInterval& a, const RatInterval& b) {
    if (b.contains_zero()) throw domain_error("interval division by interval containing zero");
    RatInterval inv{Rat(1) / b.hi, Rat(1) / b.lo};
    return a * inv;
}

inline RatInterval interval_abs(const RatInterval& a) {
    if (sgn(a.lo) >= 0) return a;
    if (sgn(a.hi) <= 0) return -a;
    return {Rat(0), std::max(Rat(-a.lo), a.hi)};
}

inline RatInterval interval_max(const RatInterval& a, const RatInterval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline RatInterval interval_hull(const RatInterval& a, const RatInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Enclosure of sqrt over a nonnegative interval; 2^-k endpoint granularity.
inline RatInterval interval_sqrt(const RatInterval& a, unsigned k) {
    if (sgn(a.lo) < 0) throw domain_error("interval_sqrt of interval with negative part");
    return {sqrt_below(a.lo, k), sqrt_above(a.hi, k)};
}

} // namespace rotbeta
