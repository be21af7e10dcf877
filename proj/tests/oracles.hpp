#pragma once

// Test-only oracles, kept independent of the library's own decision paths:
// plain sign bisection instead of Sturm isolation, and direct high-precision
// numeric evaluation instead of interval refinement.

#include <gmpxx.h>

#include <vector>

#include "rotbeta/rational.hpp"

namespace oracle {

using rotbeta::Rat;

// Bisection on a user-supplied bracketing interval; no Sturm machinery.
inline Rat bisect_root(const std::vector<Rat>& poly_asc, Rat lo, Rat hi, int steps) {
    auto eval = [&](const Rat& x) {
        Rat acc(0);
        for (auto it = poly_asc.rbegin(); it != poly_asc.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    int slo = rotbeta::sgn(eval(lo));
    for (int i = 0; i < steps; ++i) {
        Rat mid = (lo + hi) / 2;
        int sm = rotbeta::sgn(eval(mid));
        if (sm == 0) return mid;
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

// Newton refinement of a root at `prec` bits starting from a double guess.
inline mpf_class newton_root(const std::vector<Rat>& poly_asc, double guess, unsigned prec) {
    mpf_class x(guess, prec);
    std::vector<mpf_class> c, dc;
    for (size_t i = 0; i < poly_asc.size(); ++i) {
        mpf_class f(0, prec);
        mpf_set_q(f.get_mpf_t(), poly_asc[i].get_mpq_t());
        c.push_back(f);
        if (i >= 1) dc.push_back(f * (double)i);
    }
    for (int it = 0; it < 200; ++it) {
        mpf_class v(0, prec), dv(0, prec);
        for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        for (size_t i = dc.size(); i-- > 0;) dv = dv * x + dc[i];
        if (dv == 0) break;
        mpf_class step = v / dv;
        x -= step;
        if (abs(step) < mpf_class(1, prec) >> (prec - 8)) break;
    }
    return x;
}

// Evaluate coordinates against a high-precision root value.
inline mpf_class eval_coords(const std::vector<Rat>& coords, const mpf_class& root, unsigned prec) {
    mpf_class acc(0, prec);
    for (size_t i = coords.size(); i-- > 0;) {
        mpf_class f(0, prec);
        mpf_set_q(f.get_mpf_t(), coords[i].get_mpq_t());
        acc = acc * root + f;
    }
    return acc;
}

} // namespace oracle
