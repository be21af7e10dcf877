#pragma once

#include "rotbeta/field.hpp"

namespace rotbeta {

/**
 * Quadratic extension K(omega) of a real number field K, where omega is the
 * distinguished real root of y^2 - u y - v with u, v in K. Elements are
 * lo + hi*omega. The Galois map sigma swaps omega with its conjugate root
 * u - omega and fixes K pointwise.
 *
 * The extension is assumed proper (the quadratic irreducible over K); this
 * is the caller's declaration. Sign decisions still terminate when the
 * declaration is wrong: an element whose embedded value is zero without
 * being the zero pair is detected exactly via the -lo/hi root test.
 */
class QuadraticExtension : public std::enable_shared_from_this<QuadraticExtension> {
public:
    QuadraticExtension(FieldElement u, FieldElement v, bool upper_root)
        : u_(std::move(u)), v_(std::move(v)), upper_(upper_root) {
        disc_ = u_ * u_ + Rat(4) * v_;
        if (disc_.sign() <= 0) throw domain_error("quadratic extension must have real roots");
    }

    static std::shared_ptr<const QuadraticExtension> create(FieldElement u, FieldElement v,
                                                            bool upper_root = true) {
        return std::make_shared<const QuadraticExtension>(std::move(u), std::move(v), upper_root);
    }

    const FieldElement& u() const { return u_; }
    const FieldElement& v() const { return v_; }
    const FieldPtr& base_field() const { return u_.field(); }
    bool upper_root() const { return upper_; }

    // Enclosure of omega = (u +/- sqrt(u^2+4v)) / 2 of width <= eps.
    RatInterval omega_interval(const Rat& eps) const {
        Rat e = eps / 4;
        unsigned k = 16;
        while (true) {
            RatInterval du = u_.interval(e);
            RatInterval dd = disc_.interval(e);
            RatInterval sq = interval_sqrt(dd, k);
            RatInterval om = upper_ ? (du + sq) : (du - sq);
            om = RatInterval{om.lo / 2, om.hi / 2};
            if (om.width() <= eps) return om;
            e /= 64;
            k += 16;
        }
    }

    // Is w (in K) equal to the distinguished root omega? Exact.
    bool equals_omega(const FieldElement& w) const {
        if (!(w * w - u_ * w - v_).is_zero()) return false;
        // w is one of the two roots; match against the selector side:
        // upper root iff 2w - u > 0.
        return ((Rat(2) * w - u_).sign() > 0) == upper_;
    }

private:
    FieldElement u_, v_, disc_;
    bool upper_;
};

using QuadExtPtr = std::shared_ptr<const QuadraticExtension>;

class QuadExtElement {
public:
    QuadExtElement() = default;
    QuadExtElement(QuadExtPtr ext, FieldElement lo, FieldElement hi)
        : ext_(std::move(ext)), lo_(std::move(lo)), hi_(std::move(hi)) {}

    static QuadExtElement from_base(const QuadExtPtr& ext, FieldElement x) {
        FieldElement z = FieldElement::zero(ext->base_field());
        return QuadExtElement(ext, std::move(x), std::move(z));
    }
    static QuadExtElement rational(const QuadExtPtr& ext, const Rat& r) {
        return from_base(ext, FieldElement::rational(ext->base_field(), r));
    }
    static QuadExtElement omega(const QuadExtPtr& ext) {
        return QuadExtElement(ext, FieldElement::zero(ext->base_field()),
                              FieldElement::one(ext->base_field()));
    }
    static QuadExtElement zero(const QuadExtPtr& ext) { return rational(ext, Rat(0)); }
    static QuadExtElement one(const QuadExtPtr& ext) { return rational(ext, Rat(1)); }

    const QuadExtPtr& ext() const { return ext_; }
    const FieldElement& lo() const { return lo_; }
    const FieldElement& hi() const { return hi_; }

    bool is_zero() const { return lo_.is_zero() && hi_.is_zero(); }
    bool in_base() const { return hi_.is_zero(); }

    friend bool operator==(const QuadExtElement& a, const QuadExtElement& b) {
        a.check_same(b);
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }
    friend bool operator!=(const QuadExtElement& a, const QuadExtElement& b) { return !(a == b); }

    QuadExtElement operator-() const { return {ext_, -lo_, -hi_}; }

    friend QuadExtElement operator+(const QuadExtElement& a, const QuadExtElement& b) {
        a.check_same(b);
        return {a.ext_, a.lo_ + b.lo_, a.hi_ + b.hi_};
    }
    friend QuadExtElement operator-(const QuadExtElement& a, const QuadExtElement& b) {
        a.check_same(b);
        return {a.ext_, a.lo_ - b.lo_, a.hi_ - b.hi_};
    }
    friend QuadExtElement operator*(const QuadExtElement& a, const QuadExtElement& b) {
        a.check_same(b);
        // (x1 + y1 w)(x2 + y2 w) with w^2 = u w + v
        FieldElement cross = a.lo_ * b.hi_ + a.hi_ * b.lo_;
        FieldElement ww = a.hi_ * b.hi_;
        return {a.ext_, a.lo_ * b.lo_ + ww * a.ext_->v(), cross + ww * a.ext_->u()};
    }
    friend QuadExtElement operator/(const QuadExtElement& a, const QuadExtElement& b) {
        return a * b.inverse();
    }

    // sigma: omega -> u - omega. An exact involution fixing the base field.
    QuadExtElement galois_conjugate() const {
        return {ext_, lo_ + hi_ * ext_->u(), -hi_};
    }

    // Field norm into K: z * sigma(z).
    FieldElement norm() const {
        return lo_ * lo_ + lo_ * hi_ * ext_->u() - hi_ * hi_ * ext_->v();
    }

    QuadExtElement inverse() const {
        FieldElement n = norm();
        if (n.is_zero()) {
            if (is_zero()) throw domain_error("division by zero");
            throw domain_error("element has zero norm: declared extension is not a field");
        }
        QuadExtElement conj = galois_conjugate();
        FieldElement inv = n.inverse();
        return {ext_, conj.lo_ * inv, conj.hi_ * inv};
    }

    // Exact: is the embedded value of this element zero? Detects the
    // degenerate case where the quadratic splits over K (omega in K).
    bool value_is_zero() const {
        if (is_zero()) return true;
        if (hi_.is_zero()) return false;         // nonzero base element
        FieldElement w = -(lo_ / hi_);           // candidate: omega == w in K
        return ext_->equals_omega(w);
    }

    int sign() const {
        if (value_is_zero()) return 0;
        Rat eps(1, 1 << 8);
        while (true) {
            RatInterval v = interval(eps);
            int s = v.definite_sign();
            if (s != 0) return s;
            eps /= 1024;
        }
    }

    friend bool operator<(const QuadExtElement& a, const QuadExtElement& b) { return (a - b).sign() < 0; }
    friend bool operator>(const QuadExtElement& a, const QuadExtElement& b) { return (a - b).sign() > 0; }

    QuadExtElement abs() const { return sign() < 0 ? -*this : *this; }

    RatInterval interval(const Rat& eps) const {
        Rat e = eps / 8;
        while (true) {
            RatInterval lo_iv = lo_.interval(e);
            RatInterval hi_iv = hi_.interval(e);
            RatInterval om = ext_->omega_interval(e);
            RatInterval v = lo_iv + hi_iv * om;
            if (v.width() <= eps) return v;
            e /= 64;
        }
    }

    Int floor_int() const {
        if (in_base()) return lo_.floor_int();
        Rat eps(1, 1 << 8);
        while (true) {
            RatInterval v = interval(eps);
            Int flo = rat_floor(v.lo), fhi = rat_floor(v.hi);
            if (flo == fhi) return flo;
            // the value may be an exact integer even though hi != 0
            if (v.hi - v.lo < Rat(1, Int(1) << 64)) {
                Int cand = rat_round(v.mid());
                QuadExtElement diff = *this - rational(ext_, Rat(cand));
                if (diff.value_is_zero()) return cand;
            }
            eps /= 1024;
        }
    }

    double to_double() const { return interval(Rat(1, Int(1) << 60)).mid_double(); }

    std::string to_string() const {
        return "(" + lo_.to_string() + ") + (" + hi_.to_string() + ")*omega";
    }

private:
    void check_same(const QuadExtElement& o) const {
        if (ext_.get() != o.ext_.get()) throw domain_error("elements from different extensions");
    }

    QuadExtPtr ext_;
    FieldElement lo_, hi_;
};

inline QuadExtElement operator*(const Rat& s, const QuadExtElement& a) {
    return QuadExtElement(a.ext(), s * a.lo(), s * a.hi());
}

} // namespace rotbeta
