#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rotbeta/roots.hpp"

namespace rotbeta {

/**
 * A real number field Q(theta) presented by the monic minimal polynomial of
 * theta together with an isolating interval selecting the distinguished real
 * root. Elements are coordinate vectors in the power basis 1, theta, ...,
 * theta^{d-1} with rational coordinates.
 *
 * The root enclosure is refined on demand; refinement is cached behind a
 * mutex and only ever narrows, so concurrent readers see consistent results.
 */
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    NumberField(QPoly minpoly, RatInterval root_selector, bool check_irreducible = true)
        : minpoly_(poly_monic(poly_from(std::move(minpoly)))), root_iv_(std::move(root_selector)) {
        int d = poly_deg(minpoly_);
        if (d < 1) throw domain_error("field minimal polynomial must be nonconstant");
        if (check_irreducible && d > 1 && !poly_is_irreducible(minpoly_))
            throw domain_error("field minimal polynomial is reducible over Q");
        if (d == 1) {
            Rat root = -minpoly_[0];
            root_iv_ = RatInterval{root, root};
        } else {
            if (root_iv_.is_point()) {
                if (sgn(poly_eval(minpoly_, root_iv_.lo)) != 0)
                    throw domain_error("point selector is not a root");
            } else {
                auto seq = sturm_sequence(minpoly_);
                if (sturm_count(seq, root_iv_.lo, root_iv_.hi) != 1)
                    throw domain_error("root selector does not isolate exactly one real root");
            }
        }
        // reduction table: theta^{d+k} mod minpoly for k = 0 .. d-2
        QPoly x_d(d + 1, Rat(0));
        x_d[d] = 1;
        QPoly cur = poly_mod(x_d, minpoly_);
        for (int k = 0; k <= d - 2; ++k) {
            reduction_.push_back(cur);
            // multiply by x, reduce
            QPoly next(cur.size() + 1, Rat(0));
            for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
            cur = poly_mod(next, minpoly_);
        }
    }

    static std::shared_ptr<const NumberField> create(QPoly minpoly, RatInterval selector,
                                                     bool check_irreducible = true) {
        return std::make_shared<const NumberField>(std::move(minpoly), std::move(selector),
                                                   check_irreducible);
    }

    // The rationals, presented as Q = Q[x]/(x).
    static std::shared_ptr<const NumberField> rationals() {
        return create(QPoly{Rat(0), Rat(1)}, RatInterval{Rat(0), Rat(0)}, false);
    }

    int degree() const { return poly_deg(minpoly_); }
    const QPoly& minpoly() const { return minpoly_; }
    const QPoly& reduction(size_t k) const { return reduction_[k]; }
    bool generator_is_algebraic_integer() const { return poly_is_integer(minpoly_); }

    // Enclosure of the distinguished root with width <= max_width.
    RatInterval root_enclosure(const Rat& max_width) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (root_iv_.width() > max_width) root_iv_ = refine_root(minpoly_, root_iv_, max_width);
        return root_iv_;
    }

    // Isolating intervals for all real roots (sorted ascending) and the
    // index of the distinguished one among them.
    std::pair<std::vector<RatInterval>, int> real_roots(const Rat& max_width) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (real_roots_.empty()) {
            real_roots_ = isolate_real_roots(minpoly_, Rat(1, 1 << 20));
            // identify the distinguished root: narrow the selector until it
            // overlaps exactly one isolating interval
            RatInterval sel = root_iv_;
            while (true) {
                int hits = 0, idx = -1;
                for (size_t i = 0; i < real_roots_.size(); ++i) {
                    const auto& r = real_roots_[i];
                    if (!(r.hi < sel.lo || sel.hi < r.lo)) {
                        ++hits;
                        idx = (int)i;
                    }
                }
                if (hits == 1) {
                    distinguished_ = idx;
                    break;
                }
                sel = refine_root(minpoly_, sel, sel.width() / 16);
                for (auto& r : real_roots_) r = refine_root(minpoly_, r, r.width() / 16);
            }
        }
        for (auto& r : real_roots_)
            if (r.width() > max_width) r = refine_root(minpoly_, r, max_width);
        return {real_roots_, distinguished_};
    }

    // Certified disks for all roots at >= prec bits (cached, re-certified on
    // precision escalation).
    std::vector<RootDisk> root_disks(unsigned prec) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (disk_prec_ < prec || disks_.empty()) {
            disks_ = certify_roots_escalating(minpoly_, prec);
            disk_prec_ = prec;
        }
        return disks_;
    }

private:
    friend class FieldElement;
    QPoly minpoly_;
    std::vector<QPoly> reduction_;
    mutable std::mutex mu_;
    mutable RatInterval root_iv_;
    mutable std::vector<RatInterval> real_roots_;
    mutable int distinguished_ = -1;
    mutable std::vector<RootDisk> disks_;
    mutable unsigned disk_prec_ = 0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<Rat> coords) : field_(std::move(field)), c_(std::move(coords)) {
        c_.resize(field_->degree(), Rat(0));
    }

    static FieldElement rational(const FieldPtr& field, Rat v) {
        std::vector<Rat> c(field->degree(), Rat(0));
        c[0] = std::move(v);
        return FieldElement(field, std::move(c));
    }
    static FieldElement zero(const FieldPtr& field) { return rational(field, Rat(0)); }
    static FieldElement one(const FieldPtr& field) { return rational(field, Rat(1)); }
    static FieldElement generator(const FieldPtr& field) {
        if (field->degree() == 1) return rational(field, -field->minpoly()[0]);
        std::vector<Rat> c(field->degree(), Rat(0));
        c[1] = 1;
        return FieldElement(field, std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (sgn(x) != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0) return false;
        return true;
    }
    const Rat& rational_value() const {
        if (!is_rational()) throw domain_error("element is not rational");
        return c_[0];
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement operator-() const {
        std::vector<Rat> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return FieldElement(field_, std::move(r));
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        std::vector<Rat> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
        return FieldElement(a.field_, std::move(r));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        std::vector<Rat> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] - b.c_[i];
        return FieldElement(a.field_, std::move(r));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        size_t d = a.c_.size();
        if (d == 1) return FieldElement(a.field_, {a.c_[0] * b.c_[0]});
        std::vector<Rat> prod(2 * d - 1, Rat(0));
        for (size_t i = 0; i < d; ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (size_t j = 0; j < d; ++j) {
                if (sgn(b.c_[j]) == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        std::vector<Rat> r(prod.begin(), prod.begin() + d);
        for (size_t k = d; k < prod.size(); ++k) {
            if (sgn(prod[k]) == 0) continue;
            const QPoly& red = a.field_->reduction(k - d);
            for (size_t i = 0; i < red.size(); ++i) r[i] += prod[k] * red[i];
        }
        return FieldElement(a.field_, std::move(r));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    friend FieldElement operator*(const Rat& s, const FieldElement& a) {
        std::vector<Rat> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = s * a.c_[i];
        return FieldElement(a.field_, std::move(r));
    }

    FieldElement inverse() const {
        if (is_zero()) throw domain_error("division by zero field element");
        if (c_.size() == 1) return FieldElement(field_, {Rat(1) / c_[0]});
        // extended Euclid in Q[x] against the minimal polynomial
        QPoly r0 = field_->minpoly_, r1 = poly_from(std::vector<Rat>(c_));
        QPoly s0{}, s1{Rat(1)};
        while (poly_deg(r1) > 0) {
            auto [q, r2] = poly_divmod(r0, r1);
            QPoly s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty()) throw structural_error("element shares a factor with the minimal polynomial");
        QPoly inv = poly_scale(s1, Rat(1) / r1[0]);
        inv = poly_mod(inv, field_->minpoly_);
        std::vector<Rat> r(inv);
        return FieldElement(field_, std::move(r));
    }

    FieldElement pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElement acc = one(field_), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Exact sign under the distinguished embedding.
    int sign() const {
        if (is_rational()) return sgn(c_[0]);
        Rat w = Rat(1, 1 << 8);
        while (true) {
            RatInterval iv = interval_at_root_width(w);
            int s = iv.definite_sign();
            if (s != 0) return s;
            w /= 1024;
        }
    }

    friend bool operator<(const FieldElement& a, const FieldElement& b) { return (a - b).sign() < 0; }
    friend bool operator>(const FieldElement& a, const FieldElement& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const FieldElement& a, const FieldElement& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const FieldElement& a, const FieldElement& b) { return (a - b).sign() >= 0; }

    FieldElement abs() const { return sign() < 0 ? -*this : *this; }

    // Certified enclosure of width <= eps under the distinguished embedding.
    RatInterval interval(const Rat& eps) const {
        if (is_rational()) return RatInterval(c_[0]);
        Rat w = std::min(eps, Rat(1, 1 << 8));
        while (true) {
            RatInterval iv = interval_at_root_width(w);
            if (iv.width() <= eps) return iv;
            w /= 1024;
        }
    }

    Int floor_int() const {
        if (is_rational()) return rat_floor(c_[0]);
        Rat w = Rat(1, 1 << 8);
        while (true) {
            RatInterval iv = interval_at_root_width(w);
            Int flo = rat_floor(iv.lo), fhi = rat_floor(iv.hi);
            if (flo == fhi) return flo;
            w /= 1024; // irrational value: some refinement separates it from integers
        }
    }

    double to_double() const { return interval(Rat(1, Int(1) << 60)).mid_double(); }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            if (!first) os << " + ";
            os << c_[i].get_str();
            if (i >= 1) os << "*g";
            if (i >= 2) os << "^" << i;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    // lcm of coordinate denominators: the element lies in (1/den) Z[theta].
    Int denominator() const {
        Int d(1);
        for (const auto& x : c_) d = lcm(d, x.get_den());
        return d;
    }

    // Lexicographic coordinate order; a total order usable as map key.
    friend bool coord_less(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int cmp = mpq_cmp(a.c_[i].get_mpq_t(), b.c_[i].get_mpq_t());
            if (cmp != 0) return cmp < 0;
        }
        return false;
    }

private:
    void check_same(const FieldElement& o) const {
        if (field_.get() != o.field_.get()) throw domain_error("elements belong to different fields");
    }

    RatInterval interval_at_root_width(const Rat& w) const {
        RatInterval root = field_->root_enclosure(w);
        return poly_eval_interval(std::vector<Rat>(c_), root);
    }

    FieldPtr field_;
    std::vector<Rat> c_;
};

inline FieldElement operator*(const FieldElement& a, const Rat& s) { return s * a; }

struct FieldElementLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const { return coord_less(a, b); }
};

// --- Embedding bounds -----------------------------------------------------

// Certified enclosures of |sigma_k(a)| for every non-distinguished embedding
// sigma_k, each of width <= eps. Order: real embeddings ascending by root,
// then complex disks sorted by (re, im).
inline std::vector<RatInterval> conjugate_moduli(const FieldElement& a, const Rat& eps) {
    const auto& K = a.field();
    int d = K->degree();
    std::vector<RatInterval> out;
    if (d == 1) return out;
    if (a.is_rational()) {
        Rat v = rat_abs(a.rational_value());
        for (int k = 1; k < d; ++k) out.push_back(RatInterval(v));
        return out;
    }

    QPoly pc(a.coords());
    poly_trim(pc);

    // real embeddings: exact interval refinement
    Rat w = Rat(1, 1 << 12);
    std::vector<RatInterval> reals;
    int distinguished = -1;
    while (true) {
        auto [roots, idx] = K->real_roots(w);
        reals.clear();
        bool ok = true;
        for (size_t i = 0; i < roots.size(); ++i) {
            if ((int)i == idx) continue;
            RatInterval v = interval_abs(poly_eval_interval(pc, roots[i]));
            if (v.width() > eps) ok = false;
            reals.push_back(v);
        }
        distinguished = idx;
        if (ok) break;
        w /= 1024;
    }
    (void)distinguished;

    // complex embeddings: disk evaluation with a Lipschitz tail bound
    size_t n_complex = d - (reals.size() + 1);
    std::vector<RatInterval> cplx;
    if (n_complex > 0) {
        QPoly dpc = poly_derivative(pc);
        unsigned prec = 256;
        while (true) {
            auto disks = K->root_disks(prec);
            std::vector<RootDisk> nonreal;
            for (auto& disk : disks)
                if (disk.certainly_nonreal) nonreal.push_back(disk);
            if (nonreal.size() == n_complex) {
                std::sort(nonreal.begin(), nonreal.end(), [](const RootDisk& x, const RootDisk& y) {
                    if (x.re != y.re) return x.re < y.re;
                    return x.im < y.im;
                });
                cplx.clear();
                bool ok = true;
                for (const auto& disk : nonreal) {
                    MpfComplex z(prec);
                    z.re = rat_to_mpf(disk.re, prec);
                    z.im = rat_to_mpf(disk.im, prec);
                    Rat val = mpf_to_rat(mpf_poly_eval(pc, z, prec).abs_upper());
                    // |p'| bound on the disk: sum |a_i| i (|c|+r)^{i-1}
                    Rat center_abs = sqrt_above(disk.re * disk.re + disk.im * disk.im, 64) + disk.radius;
                    Rat dbound(0), pwr(1);
                    for (size_t i = 1; i < pc.size(); ++i) {
                        dbound += rat_abs(pc[i]) * Rat((long)i) * pwr;
                        pwr *= center_abs;
                    }
                    Rat slack = disk.radius * dbound + Rat(Int(1), Int(1) << (prec / 2));
                    Rat lo = val - slack - val / (Int(1) << (prec / 2));
                    if (sgn(lo) < 0) lo = 0;
                    Rat hi = val + slack + val / (Int(1) << (prec / 2));
                    RatInterval enclosure{lo, hi};
                    if (enclosure.width() > eps) ok = false;
                    cplx.push_back(enclosure);
                }
                if (ok) break;
            }
            prec *= 2;
            if (prec > 8192) throw precision_error("conjugate_moduli: precision exhausted");
        }
    }

    out = reals;
    out.insert(out.end(), cplx.begin(), cplx.end());
    return out;
}

// Minimal polynomial over Q of a field element, by finding the first linear
// dependency among its powers (exact Gaussian elimination).
inline QPoly element_minpoly(const FieldElement& a) {
    int d = a.field()->degree();
    // rows: coordinates of 1, a, a^2, ...
    std::vector<std::vector<Rat>> pows;
    FieldElement p = FieldElement::one(a.field());
    for (int k = 0; k <= d; ++k) {
        pows.push_back(p.coords());
        p = p * a;
    }
    for (int m = 1; m <= d; ++m) {
        // solve sum_{i<m} x_i a^i = a^m  if possible
        std::vector<std::vector<Rat>> mat(d, std::vector<Rat>(m + 1, Rat(0)));
        for (int i = 0; i < m; ++i)
            for (int r = 0; r < d; ++r) mat[r][i] = pows[i][r];
        for (int r = 0; r < d; ++r) mat[r][m] = pows[m][r];
        // Gaussian elimination
        std::vector<int> pivot_col(d, -1);
        int row = 0;
        for (int col = 0; col < m && row < d; ++col) {
            int pr = -1;
            for (int r = row; r < d; ++r)
                if (sgn(mat[r][col]) != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(mat[pr], mat[row]);
            Rat inv = Rat(1) / mat[row][col];
            for (int c = col; c <= m; ++c) mat[row][c] *= inv;
            for (int r = 0; r < d; ++r) {
                if (r == row || sgn(mat[r][col]) == 0) continue;
                Rat f = mat[r][col];
                for (int c = col; c <= m; ++c) mat[r][c] -= f * mat[row][c];
            }
            pivot_col[row] = col;
            ++row;
        }
        bool consistent = true;
        for (int r = row; r < d; ++r)
            if (sgn(mat[r][m]) != 0) consistent = false;
        if (!consistent) continue;
        // minimal polynomial x^m - sum x_i x^i
        QPoly res(m + 1, Rat(0));
        res[m] = 1;
        for (int r = 0; r < row; ++r) res[pivot_col[r]] = -mat[r][m];
        return res;
    }
    throw structural_error("element_minpoly: no dependency found");
}

// --- Polynomials over a number field (local helpers) ----------------------

using FPoly = std::vector<FieldElement>;

inline void fpoly_trim(FPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline FPoly fpoly_mod(const FPoly& a, const FPoly& b) {
    FPoly r = a;
    fpoly_trim(r);
    int db = (int)b.size() - 1;
    FieldElement lead_inv = b.back().inverse();
    while ((int)r.size() - 1 >= db) {
        FieldElement c = r.back() * lead_inv;
        int shift = (int)r.size() - 1 - db;
        for (int i = 0; i <= db; ++i) r[shift + i] = r[shift + i] - c * b[i];
        fpoly_trim(r);
    }
    return r;
}

inline FPoly fpoly_gcd_monic(FPoly a, FPoly b) {
    fpoly_trim(a);
    fpoly_trim(b);
    while (!b.empty()) {
        FPoly r = fpoly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        FieldElement inv = a.back().inverse();
        for (auto& c : a) c = c * inv;
    }
    return a;
}

inline FieldElement fpoly_eval(const QPoly& p, const FieldElement& x) {
    FieldElement acc = FieldElement::zero(x.field());
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + FieldElement::rational(x.field(), *it);
    return acc;
}

// --- Composite fields ------------------------------------------------------

/**
 * Working field for a model: contains the declared beta and the element
 * 2cos(2 pi p / q). When the cosine already lies in the declared field the
 * declared field itself is returned (with the cosine rebased into its power
 * basis); otherwise a primitive-element compositum Q(beta + s*cos) is built
 * from the shifted resultant and verified exactly.
 */
struct CosEmbedding {
    FieldPtr field;        // working field F
    FieldElement beta;     // the declared generator's image in F
    FieldElement cos2;     // 2 cos(2 pi p / q) as an element of F
    bool rebased = false;  // true when F is the declared field
};

inline CosEmbedding embed_cos2(const FieldPtr& K, int q, int p) {
    if (q <= 2 || p <= 0 || std::gcd(q, p) != 1)
        throw domain_error("rotation order q > 2 with p coprime to q required");
    CosEmbedding out;
    QPoly psi = cos2pi_minpoly(q);
    // substitute the p-th power: 2cos(2 pi p/q) is another root of the same psi
    double target = 2.0 * std::cos(2.0 * 3.14159265358979323846 * p / q);
    if (poly_deg(psi) == 1) {
        out.field = K;
        out.beta = FieldElement::generator(K);
        out.cos2 = FieldElement::rational(K, -psi[0]);
        out.rebased = true;
        return out;
    }

    // isolate the root of psi closest to the numeric target
    auto roots = isolate_real_roots(psi, Rat(1, Int(1) << 40));
    int pick = -1;
    for (size_t i = 0; i < roots.size(); ++i) {
        double mid = roots[i].mid_double();
        if (std::abs(mid - target) < 1e-9) pick = (int)i;
    }
    if (pick < 0) throw structural_error("could not select cosine root");
    RatInterval cos_iv = roots[pick];

    if (!K->generator_is_algebraic_integer() || K->degree() == 1) {
        if (K->degree() == 1)
            throw domain_error("cos(2 pi p/q) is irrational but the declared field is Q");
        throw domain_error("composite construction requires a monic integer minimal polynomial");
    }

    const QPoly& m = K->minpoly();
    for (long s : {1L, 2L, -1L, 3L, -2L, 5L}) {
        QPoly R = resultant_shift(psi, m, s); // roots beta_i + s*cos_j
        if (!poly_is_squarefree(R)) continue;
        poly_trim(R);
        if (!poly_is_monic(R) || !poly_is_integer(R))
            throw structural_error("shifted resultant should be monic integer");

        // gamma = beta + s*cos enclosure
        RatInterval beta_iv = K->root_enclosure(Rat(1, Int(1) << 40));
        RatInterval gamma_iv = beta_iv + Rat(s) * cos_iv;

        auto factors = factor_monic_integer(R);
        const QPoly* G = nullptr;
        for (const auto& f : factors) {
            // gamma lies in f iff f changes sign across (or vanishes on) the enclosure
            RatInterval val = poly_eval_interval(f, gamma_iv);
            if (val.contains_zero()) {
                if (G != nullptr) {
                    G = nullptr; // ambiguous; refine by narrowing gamma
                    break;
                }
                G = &f;
            }
        }
        if (G == nullptr) continue;
        auto seq = sturm_sequence(*G);
        if (sturm_count(seq, gamma_iv.lo, gamma_iv.hi) != 1) continue;

        FieldPtr F = NumberField::create(*G, gamma_iv, false);
        FieldElement gamma = FieldElement::generator(F);

        // recover cos in F: gcd(psi(y), m(gamma - s*y)) must be linear
        FPoly psi_f;
        for (const auto& c : psi) psi_f.push_back(FieldElement::rational(F, c));
        FPoly shifted; // m(gamma - s*y) as polynomial in y over F
        {
            FPoly acc{FieldElement::zero(F)};
            FPoly lin{gamma, FieldElement::rational(F, Rat(-s))};
            FPoly pw{FieldElement::one(F)};
            auto fmul = [&](const FPoly& A, const FPoly& B) {
                FPoly r(A.size() + B.size() - 1, FieldElement::zero(F));
                for (size_t i = 0; i < A.size(); ++i)
                    for (size_t j = 0; j < B.size(); ++j) r[i + j] = r[i + j] + A[i] * B[j];
                fpoly_trim(r);
                return r;
            };
            for (size_t i = 0; i < m.size(); ++i) {
                FPoly term = pw;
                for (auto& t : term) t = t * FieldElement::rational(F, m[i]);
                if (term.size() > acc.size()) acc.resize(term.size(), FieldElement::zero(F));
                for (size_t k = 0; k < term.size(); ++k) acc[k] = acc[k] + term[k];
                if (i + 1 < m.size()) pw = fmul(pw, lin);
            }
            fpoly_trim(acc);
            shifted = acc;
        }
        FPoly g = fpoly_gcd_monic(psi_f, shifted);
        if (g.size() != 2) continue; // not linear: bad shift s
        FieldElement cosF = -g[0];
        FieldElement betaF = gamma - FieldElement::rational(F, Rat(s)) * cosF;

        // exact verification
        if (!fpoly_eval(psi, cosF).is_zero()) throw structural_error("cos image fails psi");
        if (!fpoly_eval(m, betaF).is_zero()) throw structural_error("beta image fails minpoly");

        if (F->degree() == K->degree()) {
            // rebase: express cos in the declared field's power basis
            int d = K->degree();
            std::vector<std::vector<Rat>> mat(d, std::vector<Rat>(d + 1, Rat(0)));
            FieldElement pw = FieldElement::one(F);
            for (int j = 0; j < d; ++j) {
                for (int r = 0; r < d; ++r) mat[r][j] = pw.coords()[r];
                pw = pw * betaF;
            }
            for (int r = 0; r < d; ++r) mat[r][d] = cosF.coords()[r];
            // solve
            for (int col = 0, row = 0; col < d && row < d; ++col, ++row) {
                int pr = -1;
                for (int r = row; r < d; ++r)
                    if (sgn(mat[r][col]) != 0) {
                        pr = r;
                        break;
                    }
                if (pr < 0) throw structural_error("beta powers are linearly dependent");
                std::swap(mat[pr], mat[row]);
                Rat inv = Rat(1) / mat[row][col];
                for (int c = col; c <= d; ++c) mat[row][c] *= inv;
                for (int r = 0; r < d; ++r) {
                    if (r == row || sgn(mat[r][col]) == 0) continue;
                    Rat f = mat[r][col];
                    for (int c = col; c <= d; ++c) mat[r][c] -= f * mat[row][c];
                }
            }
            std::vector<Rat> coords(d);
            for (int r = 0; r < d; ++r) coords[r] = mat[r][d];
            FieldElement cosK(K, std::move(coords));
            if (!fpoly_eval(psi, cosK).is_zero())
                throw structural_error("rebased cosine fails psi");
            out.field = K;
            out.beta = FieldElement::generator(K);
            out.cos2 = cosK;
            out.rebased = true;
            return out;
        }
        out.field = F;
        out.beta = betaF;
        out.cos2 = cosF;
        out.rebased = false;
        return out;
    }
    throw structural_error("no suitable shift found for the composite construction");
}

// Ring homomorphism from the declared field into a working field that
// carries an image of the declared generator.
inline FieldElement map_into(const FieldElement& a, const FieldPtr& F, const FieldElement& gen_image) {
    FieldElement acc = FieldElement::zero(F);
    FieldElement pw = FieldElement::one(F);
    for (const auto& c : a.coords()) {
        acc = acc + FieldElement::rational(F, c) * pw;
        pw = pw * gen_image;
    }
    return acc;
}

} // namespace rotbeta
