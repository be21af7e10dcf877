#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rotbeta/rational.hpp"

namespace rotbeta {

// Dense univariate polynomial over Q, coefficients ascending by degree.
// The zero polynomial is the empty vector; all routines keep vectors trimmed.
using QPoly = std::vector<Rat>;

inline void poly_trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int poly_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }
inline bool poly_is_zero(const QPoly& p) { return p.empty(); }

inline QPoly poly_from(std::vector<Rat> c) {
    poly_trim(c);
    return c;
}

inline QPoly poly_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

inline QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

inline QPoly poly_scale(const QPoly& a, const Rat& c) {
    if (sgn(c) == 0) return {};
    QPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

// Quotient and remainder with deg(r) < deg(b); b must be nonzero.
inline std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b) {
    if (b.empty()) throw domain_error("polynomial division by zero");
    QPoly r = a, q;
    int db = poly_deg(b);
    const Rat& lead = b.back();
    while (poly_deg(r) >= db) {
        int dr = poly_deg(r);
        Rat c = r.back() / lead;
        if ((int)q.size() < dr - db + 1) q.resize(dr - db + 1, Rat(0));
        q[dr - db] = c;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
        poly_trim(r);
    }
    poly_trim(q);
    return {q, r};
}

inline QPoly poly_mod(const QPoly& a, const QPoly& b) { return poly_divmod(a, b).second; }

inline QPoly poly_derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = Rat((long)i) * p[i];
    return r;
}

inline QPoly poly_monic(const QPoly& p) {
    if (p.empty()) return p;
    return poly_scale(p, Rat(1) / p.back());
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.empty()) {
        QPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : poly_monic(a);
}

inline Rat poly_eval(const QPoly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline RatInterval poly_eval_interval(const QPoly& p, const RatInterval& x) {
    RatInterval acc{Rat(0), Rat(0)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + RatInterval(*it);
    return acc;
}

inline double poly_eval_double(const QPoly& p, double x) {
    double acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

// x^deg * p(1/x).
inline QPoly poly_reverse(const QPoly& p) {
    QPoly r(p.rbegin(), p.rend());
    poly_trim(r);
    return r;
}

// p(c * x) for rational c.
inline QPoly poly_compose_scale(const QPoly& p, const Rat& c) {
    QPoly r = p;
    Rat pw(1);
    for (size_t i = 1; i < r.size(); ++i) {
        pw *= c;
        r[i] *= pw;
    }
    poly_trim(r);
    return r;
}

// p squarefree part: p / gcd(p, p').
inline QPoly poly_squarefree(const QPoly& p) {
    if (poly_deg(p) <= 1) return p;
    QPoly g = poly_gcd(p, poly_derivative(p));
    if (poly_deg(g) <= 0) return p;
    return poly_divmod(p, g).first;
}

inline bool poly_is_squarefree(const QPoly& p) {
    return poly_deg(poly_gcd(p, poly_derivative(p))) <= 0;
}

// Every complex root z of p satisfies |z| < cauchy_bound(p).
inline Rat poly_cauchy_bound(const QPoly& p) {
    if (p.empty()) return Rat(1);
    Rat m(0);
    for (size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, rat_abs(p[i]));
    return Rat(1) + m / rat_abs(p.back());
}

// --- Sturm sequences ---------------------------------------------------

inline std::vector<QPoly> sturm_sequence(const QPoly& p) {
    std::vector<QPoly> seq;
    seq.push_back(p);
    seq.push_back(poly_derivative(p));
    while (!seq.back().empty() && poly_deg(seq.back()) > 0) {
        QPoly r = poly_mod(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        seq.push_back(std::move(r));
    }
    return seq;
}

inline int sturm_sign_changes(const std::vector<QPoly>& seq, const Rat& x) {
    int changes = 0, last = 0;
    for (const auto& f : seq) {
        int s = sgn(poly_eval(f, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Number of distinct real roots in (a, b]; p must be squarefree.
inline int sturm_count(const std::vector<QPoly>& seq, const Rat& a, const Rat& b) {
    return sturm_sign_changes(seq, a) - sturm_sign_changes(seq, b);
}

// Isolating intervals (lo, hi] for all real roots of a squarefree p,
// each refined until width <= max_width. A rational root may be returned
// as the point interval [r, r].
inline std::vector<RatInterval> isolate_real_roots(const QPoly& p, const Rat& max_width = Rat(1, 1024)) {
    std::vector<RatInterval> out;
    if (poly_deg(p) < 1) return out;
    auto seq = sturm_sequence(p);
    Rat bound = poly_cauchy_bound(p);

    struct Seg { Rat a, b; int count; };
    std::vector<Seg> stack;
    int total = sturm_count(seq, -bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});

    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 1 && s.b - s.a <= max_width) {
            out.push_back({s.a, s.b});
            continue;
        }
        Rat m = (s.a + s.b) / 2;
        if (sgn(poly_eval(p, m)) == 0) {
            out.push_back({m, m});
            // Exclude the root point from both halves (p squarefree).
            int left = sturm_count(seq, s.a, m) - 1;
            Rat eps = (s.b - s.a) / 4;
            // Shrink around m until the flanking intervals isolate cleanly.
            while (sturm_count(seq, m - eps, m) > 1 || sturm_count(seq, m, m + eps) > 0 ||
                   sgn(poly_eval(p, m - eps)) == 0) {
                eps /= 2;
            }
            int lc = sturm_count(seq, s.a, m - eps);
            int rc = sturm_count(seq, m + eps, s.b);
            if (lc > 0) stack.push_back({s.a, m - eps, lc});
            if (rc > 0) stack.push_back({m + eps, s.b, rc});
            (void)left;
            continue;
        }
        int lc = sturm_count(seq, s.a, m);
        int rc = s.count - lc;
        if (lc > 0) stack.push_back({s.a, m, lc});
        if (rc > 0) stack.push_back({m, s.b, rc});
    }
    std::sort(out.begin(), out.end(), [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
    return out;
}

// Bisection refinement of an isolating interval for a squarefree p.
// The invariant kept is sign(p(lo)) * sign(p(hi)) < 0 unless the root is
// hit exactly, in which case a point interval is returned.
inline RatInterval refine_root(const QPoly& p, RatInterval iv, const Rat& max_width) {
    if (iv.is_point()) return iv;
    int slo = sgn(poly_eval(p, iv.lo));
    int shi = sgn(poly_eval(p, iv.hi));
    if (slo == 0) return {iv.lo, iv.lo};
    if (shi == 0) return {iv.hi, iv.hi};
    if (slo == shi) throw structural_error("refine_root: interval does not bracket a sign change");
    while (iv.width() > max_width) {
        Rat m = iv.mid();
        int sm = sgn(poly_eval(p, m));
        if (sm == 0) return {m, m};
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

// --- Resultants ---------------------------------------------------------

// det of a square rational matrix by Gaussian elimination (exact).
inline Rat rat_matrix_det(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && sgn(m[piv][col]) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rat inv = Rat(1) / m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (sgn(m[r][col]) == 0) continue;
            Rat f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// Res_x(a, b) via the Sylvester matrix.
inline Rat poly_resultant(const QPoly& a, const QPoly& b) {
    int da = poly_deg(a), db = poly_deg(b);
    if (da < 0 || db < 0) return Rat(0);
    if (da == 0) {
        Rat r(1);
        for (int i = 0; i < db; ++i) r *= a[0];
        return r;
    }
    if (db == 0) {
        Rat r(1);
        for (int i = 0; i < da; ++i) r *= b[0];
        return r;
    }
    size_t n = da + db;
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (int row = 0; row < db; ++row)
        for (int i = 0; i <= da; ++i) m[row][row + i] = a[da - i];
    for (int row = 0; row < da; ++row)
        for (int i = 0; i <= db; ++i) m[db + row][row + i] = b[db - i];
    return rat_matrix_det(std::move(m));
}

// Lagrange interpolation through (x_i, y_i), distinct x_i.
inline QPoly poly_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    QPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        QPoly basis{Rat(1)};
        Rat denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = poly_mul(basis, QPoly{-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        acc = poly_add(acc, poly_scale(basis, ys[i] / denom));
    }
    return acc;
}

// R(x) = Res_y(f(y), g(x - s*y)), computed by evaluation/interpolation.
// Roots of R are exactly { mu + s*lambda : f(lambda)=0, g(mu)=0 }.
inline QPoly resultant_shift(const QPoly& f, const QPoly& g, long s) {
    int df = poly_deg(f), dg = poly_deg(g);
    if (df < 1 || dg < 1) throw domain_error("resultant_shift requires nonconstant inputs");
    int dr = df * dg;
    std::vector<Rat> xs, ys;
    for (long t = 0; (int)xs.size() <= dr; ++t) {
        Rat x0(t);
        // g(x0 - s*y) as a polynomial in y.
        QPoly shifted{x0};
        QPoly lin{x0, Rat(-s)};
        QPoly gy{Rat(0)};
        QPoly pw{Rat(1)};
        for (int i = 0; i <= dg; ++i) {
            gy = poly_add(gy, poly_scale(pw, g[i]));
            pw = poly_mul(pw, lin);
        }
        xs.push_back(x0);
        ys.push_back(poly_resultant(f, gy));
    }
    return poly_interpolate(xs, ys);
}

// --- Cyclotomic machinery ------------------------------------------------

// q-th cyclotomic polynomial, exact integer coefficients.
inline QPoly cyclotomic(int q) {
    if (q < 1) throw domain_error("cyclotomic index must be positive");
    // x^q - 1 divided by the product of Phi_d over proper divisors d of q.
    QPoly num(q + 1, Rat(0));
    num[0] = Rat(-1);
    num[q] = Rat(1);
    for (int d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        QPoly phi_d = cyclotomic(d);
        auto [quot, rem] = poly_divmod(num, phi_d);
        if (!rem.empty()) throw structural_error("cyclotomic: non-exact division");
        num = quot;
    }
    return num;
}

// Minimal polynomial of 2*cos(2*pi/q) over Q, for q > 2. Derived from the
// cyclotomic polynomial via the substitution y = x + 1/x.
inline QPoly cos2pi_minpoly(int q) {
    if (q <= 2) throw domain_error("cos2pi_minpoly requires q > 2");
    QPoly phi = cyclotomic(q);
    int m = poly_deg(phi) / 2;
    // Phi_q is palindromic for q > 2: write Phi/x^m = a_m + sum a_{m-k} (x^k + x^-k)
    // and use V_k(y) = x^k + x^-k with V_0 = 2, V_1 = y, V_{k+1} = y V_k - V_{k-1}.
    QPoly result{phi[m]};
    QPoly v_prev{Rat(2)}, v_cur{Rat(0), Rat(1)};
    for (int k = 1; k <= m; ++k) {
        result = poly_add(result, poly_scale(v_cur, phi[m - k]));
        QPoly v_next = poly_sub(poly_mul(QPoly{Rat(0), Rat(1)}, v_cur), v_prev);
        v_prev = std::move(v_cur);
        v_cur = std::move(v_next);
    }
    return result;
}

} // namespace rotbeta
