#pragma once

#include <complex>
#include <random>
#include <vector>

#include "rotbeta/poly.hpp"

namespace rotbeta {

// Arbitrary-precision complex value on top of GMP floats. Precision is
// fixed at construction; arithmetic keeps the operands' precision.
struct MpfComplex {
    mpf_class re, im;

    MpfComplex(unsigned prec) : re(0, prec), im(0, prec) {}
    MpfComplex(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}

    MpfComplex operator+(const MpfComplex& o) const { return {re + o.re, im + o.im}; }
    MpfComplex operator-(const MpfComplex& o) const { return {re - o.re, im - o.im}; }
    MpfComplex operator*(const MpfComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    MpfComplex operator/(const MpfComplex& o) const {
        mpf_class n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    mpf_class norm() const { return re * re + im * im; }
    mpf_class abs_upper() const {
        mpf_class n = norm(), r(0, mpf_get_prec(n.get_mpf_t()));
        mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
        return r * mpf_class(1.0000001);
    }
};

inline Rat mpf_to_rat(const mpf_class& x) {
    Rat r;
    mpq_set_f(r.get_mpq_t(), x.get_mpf_t());
    return r;
}

inline mpf_class rat_to_mpf(const Rat& x, unsigned prec) {
    mpf_class f(0, prec);
    mpf_set_q(f.get_mpf_t(), x.get_mpq_t());
    return f;
}

inline MpfComplex mpf_poly_eval(const QPoly& p, const MpfComplex& z, unsigned prec) {
    MpfComplex acc(prec);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * z;
        acc.re += rat_to_mpf(*it, prec);
    }
    return acc;
}

// Approximate all roots of a squarefree polynomial by the Aberth-Ehrlich
// iteration in double precision. Starting points only; certification
// happens later at full precision.
inline std::vector<std::complex<double>> aberth_double(const QPoly& p, unsigned seed = 12345) {
    int d = poly_deg(p);
    std::vector<std::complex<double>> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = p[i].get_d();
    auto eval = [&](std::complex<double> z, std::complex<double>& deriv) {
        std::complex<double> acc = 0, dacc = 0;
        for (int i = d; i >= 0; --i) {
            dacc = dacc * z + acc;
            acc = acc * z + c[i];
        }
        deriv = dacc;
        return acc;
    };
    double radius = poly_cauchy_bound(p).get_d();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::vector<std::complex<double>> z(d);
    for (int k = 0; k < d; ++k) {
        double ang = 2 * 3.14159265358979323846 * (k + 0.37) / d + jitter(rng);
        double rad = radius * (0.4 + 0.5 * (k % 3) / 3.0 + jitter(rng) * 0.1);
        z[k] = std::polar(rad, ang);
    }
    for (int iter = 0; iter < 800; ++iter) {
        double worst = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> deriv;
            std::complex<double> val = eval(z[i], deriv);
            if (deriv == 0.0) {
                z[i] += std::complex<double>(1e-8, 1e-8);
                continue;
            }
            std::complex<double> w = val / deriv;
            std::complex<double> s = 0;
            for (int j = 0; j < d; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            std::complex<double> corr = w / (1.0 - w * s);
            z[i] -= corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(z[i])));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

// Certified enclosure of one root: center (exact rationals) and radius such
// that the closed disk contains exactly one root of the polynomial.
struct RootDisk {
    Rat re, im, radius;
    bool certainly_nonreal = false;

    RatInterval modulus_interval() const {
        Rat n2 = re * re + im * im;
        unsigned k = 128;
        Rat m_lo = sqrt_below(n2, k), m_hi = sqrt_above(n2, k);
        Rat lo = m_lo - radius;
        if (sgn(lo) < 0) lo = 0;
        return {lo, m_hi + radius};
    }
};

// All-root certification for a squarefree polynomial: Newton-polish the
// double approximations at `prec` bits, bound each root by the classical
// deg*|p/p'| inclusion radius and require pairwise disjoint disks.
// Returns empty vector when certification fails at this precision.
inline std::vector<RootDisk> certify_roots(const QPoly& p, unsigned prec, unsigned seed = 12345) {
    int d = poly_deg(p);
    auto approx = aberth_double(p, seed);
    QPoly dp = poly_derivative(p);
    std::vector<MpfComplex> z;
    for (auto& a : approx) {
        MpfComplex w(prec);
        w.re = a.real();
        w.im = a.imag();
        // Newton refinement; quadratic once in the basin.
        for (int it = 0; it < 64; ++it) {
            MpfComplex val = mpf_poly_eval(p, w, prec);
            MpfComplex der = mpf_poly_eval(dp, w, prec);
            if (sgn(mpf_to_rat(der.norm())) == 0) break;
            MpfComplex step = val / der;
            w = w - step;
            mpf_class stepsz = step.abs_upper();
            if (stepsz < mpf_class(1e-30) * (mpf_class(1) + w.abs_upper())) {
                // a few extra iterations to saturate precision
                if (it > 4) break;
            }
        }
        z.push_back(w);
    }
    std::vector<RootDisk> disks;
    for (auto& w : z) {
        MpfComplex val = mpf_poly_eval(p, w, prec);
        MpfComplex der = mpf_poly_eval(dp, w, prec);
        Rat dern = mpf_to_rat(der.norm());
        if (sgn(dern) == 0) return {};
        mpf_class ratio = val.abs_upper() / (der.abs_upper() / mpf_class(1.0000002));
        Rat radius = mpf_to_rat(ratio) * Rat(d) * Rat(100001, 100000) + Rat(Int(1), Int(1) << (prec / 2));
        RootDisk disk{mpf_to_rat(w.re), mpf_to_rat(w.im), radius};
        disk.certainly_nonreal = rat_abs(disk.im) > disk.radius;
        disks.push_back(std::move(disk));
    }
    // Pairwise disjointness: then each disk holds exactly one root.
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Rat dx = disks[i].re - disks[j].re, dy = disks[i].im - disks[j].im;
            Rat rr = disks[i].radius + disks[j].radius;
            if (dx * dx + dy * dy <= rr * rr) return {};
        }
    return disks;
}

inline std::vector<RootDisk> certify_roots_escalating(const QPoly& p, unsigned start_prec = 192) {
    for (unsigned prec = start_prec; prec <= 6144; prec *= 2) {
        for (unsigned seed : {12345u, 777u, 424242u}) {
            auto disks = certify_roots(p, prec, seed);
            if (!disks.empty()) return disks;
        }
    }
    throw precision_error("could not certify root enclosures up to 6144 bits");
}

// --- Integer polynomial factorization ------------------------------------

inline bool poly_is_integer(const QPoly& p) {
    for (const auto& c : p)
        if (c.get_den() != 1) return false;
    return true;
}

inline bool poly_is_monic(const QPoly& p) { return !p.empty() && p.back() == 1; }

namespace detail {

// Factor a squarefree monic integer polynomial by clustering certified
// roots: a monic rational factor must be integral (Gauss) and its
// coefficients are elementary symmetric functions of a subset of roots.
// Every candidate is verified by exact division, so accepted factors are
// correct unconditionally.
inline std::vector<QPoly> factor_squarefree_monic(const QPoly& poly) {
    std::vector<QPoly> out;
    QPoly rem = poly;
    while (poly_deg(rem) > 0) {
        int d = poly_deg(rem);
        if (d == 1) {
            out.push_back(rem);
            break;
        }
        if (d > 24) throw domain_error("factorization supported up to degree 24");
        unsigned prec = 256;
        bool factored = false, irreducible = false;
        while (!factored && !irreducible) {
            auto disks = certify_roots_escalating(rem, prec);
            std::vector<MpfComplex> roots;
            for (auto& disk : disks) {
                MpfComplex w(prec * 2);
                w.re = rat_to_mpf(disk.re, prec * 2);
                w.im = rat_to_mpf(disk.im, prec * 2);
                roots.push_back(w);
            }
            bool found = false;
            for (int size = 1; size <= d / 2 && !found; ++size) {
                // iterate subsets of fixed popcount
                for (unsigned long mask = (1ul << size) - 1; mask < (1ul << d) && !found;) {
                    // expand product of (x - z_i) over the subset
                    std::vector<MpfComplex> coeff{MpfComplex(prec * 2)};
                    coeff[0].re = 1;
                    for (int i = 0; i < d; ++i) {
                        if (!(mask >> i & 1)) continue;
                        coeff.push_back(MpfComplex(prec * 2));
                        for (int k = (int)coeff.size() - 1; k >= 1; --k)
                            coeff[k] = coeff[k - 1] - roots[i] * coeff[k];
                        coeff[0] = MpfComplex(prec * 2) - roots[i] * coeff[0];
                    }
                    // coeff is ascending by degree; round and verify
                    bool plausible = true;
                    QPoly cand(size + 1);
                    for (int k = 0; k <= size && plausible; ++k) {
                        const MpfComplex& c = coeff[k];
                        if (rat_abs(mpf_to_rat(c.im)) > Rat(1, 4)) plausible = false;
                        Rat real = mpf_to_rat(c.re);
                        Int nearest = rat_round(real);
                        if (rat_abs(real - Rat(nearest)) > Rat(1, 4)) plausible = false;
                        cand[k] = Rat(nearest);
                    }
                    if (plausible) {
                        auto [quot, remd] = poly_divmod(rem, cand);
                        if (remd.empty()) {
                            out.push_back(cand);
                            rem = quot;
                            found = true;
                            factored = true;
                        }
                    }
                    // next subset with same popcount (Gosper's hack)
                    unsigned long c0 = mask & -mask, r = mask + c0;
                    mask = (((r ^ mask) >> 2) / c0) | r;
                }
            }
            if (!found) {
                if (prec >= 1024) {
                    irreducible = true;
                } else {
                    prec *= 2;
                }
            }
        }
        if (irreducible) {
            out.push_back(rem);
            break;
        }
    }
    return out;
}

} // namespace detail

// Irreducible factors of a monic integer polynomial (with multiplicity).
inline std::vector<QPoly> factor_monic_integer(const QPoly& p) {
    if (!poly_is_integer(p) || !poly_is_monic(p))
        throw domain_error("factor_monic_integer requires a monic integer polynomial");
    std::vector<QPoly> out;
    QPoly rest = p;
    while (poly_deg(rest) > 0) {
        QPoly sf = poly_squarefree(rest);
        auto factors = detail::factor_squarefree_monic(sf);
        for (auto& f : factors) {
            auto [quot, remd] = poly_divmod(rest, f);
            if (!remd.empty()) throw structural_error("factor does not divide input");
            rest = quot;
            out.push_back(std::move(f));
        }
    }
    std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

// Irreducibility over Q of a monic rational polynomial. Scaled to a monic
// integer polynomial first (y = D x), which preserves irreducibility.
inline bool poly_is_irreducible(const QPoly& p) {
    if (poly_deg(p) < 1) return false;
    if (poly_deg(p) == 1) return true;
    QPoly m = poly_monic(p);
    Int d(1);
    for (const auto& c : m) d = lcm(d, c.get_den());
    // q(y) = D^n m(y/D) is integer monic
    QPoly q(m.size());
    Rat pw(1);
    for (size_t i = m.size(); i-- > 0;) {
        q[i] = m[i] * pw;
        pw *= Rat(d);
    }
    if (!poly_is_squarefree(q)) return false;
    return factor_monic_integer(q).size() == 1;
}

// Pisot test: real algebraic integer > 1 with all conjugates of modulus < 1.
// Real roots counted exactly via Sturm, complex roots bounded by certified
// disks; self-reciprocal polynomials of degree >= 3 are rejected outright,
// which covers Salem-type inputs whose conjugates sit on the unit circle.
inline bool is_pisot(const QPoly& minpoly) {
    if (!poly_is_integer(minpoly) || !poly_is_monic(minpoly))
        throw domain_error("is_pisot requires a monic integer polynomial");
    int d = poly_deg(minpoly);
    if (d < 1) throw domain_error("is_pisot requires positive degree");
    if (!poly_is_irreducible(minpoly)) throw domain_error("is_pisot: polynomial is reducible");
    if (d == 1) return minpoly[0] <= Rat(-2); // root -c0 must be an integer >= 2
    if (d >= 3 && poly_reverse(minpoly) == minpoly) return false;

    auto seq = sturm_sequence(minpoly);
    Rat bound = poly_cauchy_bound(minpoly);
    if (sturm_count(seq, Rat(1), bound) != 1) return false;
    if (sturm_count(seq, -bound, Rat(-1)) != 0) return false;
    int real_count = sturm_count(seq, -bound, bound);

    for (unsigned prec = 192; prec <= 6144; prec *= 2) {
        std::vector<RootDisk> disks;
        for (unsigned seed : {12345u, 777u, 424242u}) {
            disks = certify_roots(minpoly, prec, seed);
            if (!disks.empty()) break;
        }
        if (disks.empty()) continue;
        int nonreal = 0;
        bool undecided = false;
        for (const auto& disk : disks) {
            if (!disk.certainly_nonreal) continue;
            ++nonreal;
            Rat n2 = disk.re * disk.re + disk.im * disk.im;
            Rat outer = (Rat(1) - disk.radius);
            if (sgn(outer) > 0 && n2 < outer * outer) continue; // strictly inside unit circle
            Rat inner = (Rat(1) + disk.radius);
            if (n2 > inner * inner) return false; // strictly outside
            undecided = true;
        }
        if (!undecided && nonreal == d - real_count) return true;
    }
    throw precision_error("is_pisot: undecided at maximum precision");
}

} // namespace rotbeta
