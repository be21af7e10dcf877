#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "rotbeta/field.hpp"
#include "rotbeta/parse.hpp"
#include "rotbeta/quadext.hpp"

using namespace rotbeta;

namespace {

FieldPtr sqrt2_field() {
    // beta = 1 + sqrt(2), minpoly x^2 - 2x - 1
    return NumberField::create({Rat(-1), Rat(-2), Rat(1)}, {Rat(2), Rat(3)});
}

FieldPtr golden_field() {
    // beta = (1+sqrt 5)/2, minpoly x^2 - x - 1
    return NumberField::create({Rat(-1), Rat(-1), Rat(1)}, {Rat(1), Rat(2)});
}

FieldPtr seven_field() {
    // beta = 1 + 2cos(2pi/7), minpoly x^3 - 2x^2 - x + 1
    return NumberField::create({Rat(1), Rat(-1), Rat(-2), Rat(1)}, {Rat(2), Rat(5, 2)});
}

FieldPtr root5_field() {
    return NumberField::create({Rat(-5), Rat(0), Rat(1)}, {Rat(2), Rat(3)});
}

} // namespace

TEST_CASE("field arithmetic identities") {
    auto K2 = sqrt2_field();
    FieldElement b = FieldElement::generator(K2); // 1 + sqrt2
    FieldElement sqrt2 = b - FieldElement::one(K2);
    // (1+sqrt2)(1-sqrt2) = -1
    CHECK((FieldElement::one(K2) + sqrt2) * (FieldElement::one(K2) - sqrt2) ==
          FieldElement::rational(K2, Rat(-1)));

    auto Kg = golden_field();
    FieldElement w = FieldElement::generator(Kg);
    CHECK(w * w == FieldElement::one(Kg) + w); // omega^2 = 1 + omega

    auto K7 = seven_field();
    FieldElement beta = FieldElement::generator(K7);
    // beta * beta^2 = 2 beta^2 + beta - 1
    FieldElement expect = Rat(2) * beta.pow(2) + beta - FieldElement::one(K7);
    CHECK(beta * beta.pow(2) == expect);

    SECTION("division by zero is an error") {
        CHECK_THROWS_AS(FieldElement::one(Kg) / FieldElement::zero(Kg), domain_error);
    }
    SECTION("mixed fields are an error") {
        CHECK_THROWS_AS(FieldElement::one(Kg) + FieldElement::one(K2), domain_error);
    }
    SECTION("inverse round-trips") {
        FieldElement x = Rat(3, 7) * beta.pow(2) - Rat(2) * beta + FieldElement::one(K7);
        CHECK(x * x.inverse() == FieldElement::one(K7));
    }
}

TEST_CASE("ring axioms on random elements") {
    auto K7 = seven_field();
    std::mt19937 rng(20240901);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    auto rnd = [&]() {
        std::vector<Rat> c;
        for (int i = 0; i < 3; ++i) c.push_back(Rat(num(rng), den(rng)));
        return FieldElement(K7, std::move(c));
    };
    for (int i = 0; i < 500; ++i) {
        FieldElement a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("real embedding intervals") {
    SECTION("zero gives the point interval") {
        auto Kg = golden_field();
        RatInterval iv = FieldElement::zero(Kg).interval(Rat(1, 1000));
        CHECK(iv.lo == 0);
        CHECK(iv.hi == 0);
    }
    SECTION("sqrt5 - 2 is positive") {
        auto K5 = root5_field();
        // oracle: bisection of x^2-5 on [2,3]
        Rat root = oracle::bisect_root({Rat(-5), Rat(0), Rat(1)}, Rat(2), Rat(3), 60);
        REQUIRE(root - 2 > 0);
        FieldElement a = FieldElement::generator(K5) - FieldElement::rational(K5, Rat(2));
        CHECK(a.sign() == 1);
        RatInterval iv = a.interval(Rat(1, 1 << 20));
        CHECK(iv.lo > 0);
        CHECK(iv.contains(root - 2));
    }
    SECTION("1 + 2cos(2pi/7) is approximately 2.24698") {
        auto K7 = seven_field();
        RatInterval iv = FieldElement::generator(K7).interval(Rat(1, 200000));
        CHECK(rat_abs(iv.mid() - Rat(224698, 100000)) < Rat(1, 100000) + iv.width());
    }
    SECTION("intervals are nested under refinement and contain the 200-bit value") {
        auto K7 = seven_field();
        FieldElement a = Rat(7, 3) * FieldElement::generator(K7).pow(2) -
                         Rat(11, 2) * FieldElement::generator(K7) +
                         FieldElement::rational(K7, Rat(5, 9));
        mpf_class root = oracle::newton_root({Rat(1), Rat(-1), Rat(-2), Rat(1)}, 2.24698, 200);
        mpf_class val = oracle::eval_coords(a.coords(), root, 200);
        RatInterval prev = a.interval(Rat(1, 100));
        for (int k = 0; k < 6; ++k) {
            RatInterval next = a.interval(prev.width() / 1000);
            CHECK(next.lo >= prev.lo);
            CHECK(next.hi <= prev.hi);
            Rat v = mpf_to_rat(val);
            CHECK(next.contains(v));
            prev = next;
        }
    }
}

TEST_CASE("floors") {
    auto Kg = golden_field();
    CHECK(FieldElement::rational(Kg, Rat(3)).floor_int() == 3);
    // oracle numeric: omega = 1.618..., -omega = -1.618...
    Rat omega_num = oracle::bisect_root({Rat(-1), Rat(-1), Rat(1)}, Rat(1), Rat(2), 60);
    REQUIRE(rat_floor(omega_num) == 1);
    REQUIRE(rat_floor(-omega_num) == -2);
    FieldElement w = FieldElement::generator(Kg);
    CHECK(w.floor_int() == 1);
    CHECK((-w).floor_int() == -2);

    SECTION("floor bracket property on random elements") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> num(-30, 30), den(1, 7);
        for (int i = 0; i < 200; ++i) {
            FieldElement a(Kg, {Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
            Int f = a.floor_int();
            FieldElement fl = FieldElement::rational(Kg, Rat(f));
            CHECK((a - fl).sign() >= 0);
            CHECK((a - fl - FieldElement::one(Kg)).sign() < 0);
        }
    }
}

TEST_CASE("conjugate moduli") {
    SECTION("rational elements: all bounds equal |q|") {
        auto K7 = seven_field();
        auto bounds = conjugate_moduli(FieldElement::rational(K7, Rat(-7, 3)), Rat(1, 1000));
        REQUIRE(bounds.size() == 2);
        for (auto& b : bounds) CHECK(b.contains(Rat(7, 3)));
    }
    SECTION("beta = 1+sqrt2: conjugate modulus near 0.41421") {
        auto K2 = sqrt2_field();
        // oracle: root of x^2-2x-1 in [-1, 0] is 1 - sqrt2
        Rat conj = oracle::bisect_root({Rat(-1), Rat(-2), Rat(1)}, Rat(-1), Rat(0), 60);
        auto bounds = conjugate_moduli(FieldElement::generator(K2), Rat(1, 1 << 20));
        REQUIRE(bounds.size() == 1);
        CHECK(bounds[0].contains(rat_abs(conj)));
        CHECK(rat_abs(bounds[0].mid() - Rat(41421, 100000)) < Rat(1, 10000));
    }
    SECTION("omega inside Q(sqrt5): |sigma(omega)| near 0.61803") {
        auto K5 = root5_field();
        FieldElement g = FieldElement::generator(K5);
        FieldElement w = Rat(1, 2) * (FieldElement::one(K5) + g);
        auto bounds = conjugate_moduli(w, Rat(1, 1 << 20));
        REQUIRE(bounds.size() == 1);
        CHECK(rat_abs(bounds[0].mid() - Rat(61803, 100000)) < Rat(1, 10000));
    }
    SECTION("complex conjugates get certified disk bounds") {
        // x^3 - x - 1 (plastic number): two complex conjugates of modulus ~0.8688
        auto Kp = NumberField::create({Rat(-1), Rat(-1), Rat(0), Rat(1)}, {Rat(1), Rat(2)});
        auto bounds = conjugate_moduli(FieldElement::generator(Kp), Rat(1, 1 << 16));
        REQUIRE(bounds.size() == 2);
        for (auto& b : bounds) CHECK(rat_abs(b.mid() - Rat(86883, 100000)) < Rat(1, 1000));
    }
}

TEST_CASE("pisot recognition") {
    CHECK(is_pisot({Rat(-1), Rat(-1), Rat(1)}));                       // x^2-x-1
    CHECK_FALSE(is_pisot({Rat(1), Rat(-1), Rat(-1), Rat(-1), Rat(1)})); // Salem quartic
    CHECK(is_pisot({Rat(-3), Rat(1)}));                                // x-3
    CHECK(is_pisot({Rat(-1), Rat(-2), Rat(1)}));                       // 1+sqrt2
    CHECK(is_pisot({Rat(1), Rat(-1), Rat(-2), Rat(1)}));               // 1+2cos(2pi/7)
    CHECK_FALSE(is_pisot({Rat(-2), Rat(0), Rat(1)}));                  // sqrt2 is not Pisot
    CHECK_THROWS_AS(is_pisot({Rat(-1), Rat(0), Rat(1)}), domain_error); // x^2-1 reducible
}

TEST_CASE("element parsing") {
    auto K2 = sqrt2_field();
    CHECK(parse_element("1/2", K2) == FieldElement::rational(K2, Rat(1, 2)));
    // beta^2 - 1 = 2 beta when beta = 1+sqrt2
    FieldElement e = parse_element("beta^2 - 1", K2);
    CHECK(e == Rat(2) * FieldElement::generator(K2));
    CHECK(parse_element("(3 + beta)*(3 - beta)/7", K2) ==
          (FieldElement::rational(K2, Rat(9)) - FieldElement::generator(K2).pow(2)) * Rat(1, 7));
    CHECK_THROWS_AS(parse_element("(1+5^(1/2))/2", K2), parse_error);
    CHECK_THROWS_AS(parse_element("beta + omega", K2), parse_error);
    CHECK_THROWS_AS(parse_element("1.039", K2), parse_error);
}

TEST_CASE("quadratic extension and the Galois involution") {
    auto KQ = NumberField::rationals();
    auto ext = QuadraticExtension::create(FieldElement::one(KQ), FieldElement::one(KQ)); // w^2 = w+1
    QuadExtElement w = QuadExtElement::omega(ext);

    CHECK(w * w == w + QuadExtElement::one(ext));
    QuadExtElement sw = w.galois_conjugate();
    CHECK(sw == QuadExtElement::one(ext) - w); // sigma(omega) = 1 - omega
    CHECK(sw.galois_conjugate() == w);          // involution

    SECTION("sigma fixes base elements and floors work") {
        QuadExtElement r = QuadExtElement::rational(ext, Rat(22, 7));
        CHECK(r.galois_conjugate() == r);
        CHECK((Rat(3) * w).floor_int() == 4);  // 3*1.618... = 4.854...
        CHECK((-w).floor_int() == -2);
        CHECK(w.sign() == 1);
        CHECK(sw.sign() == -1);
    }
    SECTION("sigma is a ring map on random elements") {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
        auto rnd = [&]() {
            return QuadExtElement(ext, FieldElement::rational(KQ, Rat(num(rng), den(rng))),
                                  FieldElement::rational(KQ, Rat(num(rng), den(rng))));
        };
        for (int i = 0; i < 200; ++i) {
            QuadExtElement a = rnd(), b = rnd();
            CHECK((a * b).galois_conjugate() == a.galois_conjugate() * b.galois_conjugate());
            CHECK((a + b).galois_conjugate() == a.galois_conjugate() + b.galois_conjugate());
            CHECK(a.galois_conjugate().galois_conjugate() == a);
        }
    }
    SECTION("degenerate split extension: exact zero of the embedded value") {
        auto K5 = root5_field();
        auto ext5 = QuadraticExtension::create(FieldElement::one(K5), FieldElement::one(K5));
        FieldElement w_in_base =
            Rat(1, 2) * (FieldElement::one(K5) + FieldElement::generator(K5));
        QuadExtElement z = QuadExtElement::omega(ext5) - QuadExtElement::from_base(ext5, w_in_base);
        CHECK_FALSE(z.is_zero());       // formally nonzero pair
        CHECK(z.value_is_zero());       // embedded value is exactly zero
        CHECK(z.sign() == 0);
    }
}

TEST_CASE("cyclotomic and cosine minimal polynomials") {
    CHECK(cyclotomic(5) == QPoly{Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)});
    CHECK(cyclotomic(12) == QPoly{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)});
    CHECK(cos2pi_minpoly(5) == QPoly{Rat(-1), Rat(1), Rat(1)});            // y^2+y-1
    CHECK(cos2pi_minpoly(7) == QPoly{Rat(-1), Rat(-2), Rat(1), Rat(1)});   // y^3+y^2-2y-1
    CHECK(cos2pi_minpoly(3) == QPoly{Rat(1), Rat(1)});                     // y+1
    CHECK(cos2pi_minpoly(4) == QPoly{Rat(0), Rat(1)});                     // y
}

TEST_CASE("cosine embedding into the declared field") {
    SECTION("q=5 in the golden field: 2cos(2pi/5) = beta - 1") {
        auto Kg = golden_field();
        CosEmbedding ce = embed_cos2(Kg, 5, 1);
        CHECK(ce.rebased);
        CHECK(ce.field.get() == Kg.get());
        CHECK(ce.cos2 == FieldElement::generator(Kg) - FieldElement::one(Kg));
    }
    SECTION("q=7 in the cubic field: 2cos(2pi/7) = beta - 1") {
        auto K7 = seven_field();
        CosEmbedding ce = embed_cos2(K7, 7, 1);
        CHECK(ce.rebased);
        CHECK(ce.cos2 == FieldElement::generator(K7) - FieldElement::one(K7));
    }
    SECTION("q=3 and q=4 are rational") {
        auto K2 = sqrt2_field();
        CHECK(embed_cos2(K2, 3, 1).cos2 == FieldElement::rational(K2, Rat(-1)));
        CHECK(embed_cos2(K2, 4, 1).cos2 == FieldElement::zero(K2));
        CHECK(embed_cos2(K2, 6, 1).cos2 == FieldElement::one(K2));
    }
    SECTION("q=5 over Q(sqrt2): a genuine degree-4 compositum") {
        auto K2 = NumberField::create({Rat(-2), Rat(0), Rat(1)}, {Rat(1), Rat(2)});
        CosEmbedding ce = embed_cos2(K2, 5, 1);
        CHECK_FALSE(ce.rebased);
        CHECK(ce.field->degree() == 4);
        CHECK(fpoly_eval(K2->minpoly(), ce.beta).is_zero());
        CHECK(fpoly_eval(cos2pi_minpoly(5), ce.cos2).is_zero());
        CHECK(rat_abs(ce.beta.interval(Rat(1, 1 << 20)).mid() - Rat(141421, 100000)) < Rat(1, 10000));
        CHECK(rat_abs(ce.cos2.interval(Rat(1, 1 << 20)).mid() - Rat(61803, 100000)) < Rat(1, 10000));
    }
    SECTION("p=2 selects the other root") {
        auto Kg = golden_field();
        CosEmbedding ce = embed_cos2(Kg, 5, 2);
        // 2cos(4pi/5) = -omega = 1 - beta... actually -(1+sqrt5)/2? No:
        // 2cos(144 deg) = -1.618... = -beta, and indeed psi(-beta) = 0.
        CHECK(fpoly_eval(cos2pi_minpoly(5), ce.cos2).is_zero());
        CHECK(ce.cos2.sign() < 0);
    }
}

TEST_CASE("element minimal polynomial") {
    auto Kg = golden_field();
    FieldElement c = FieldElement::generator(Kg) - FieldElement::one(Kg);
    CHECK(element_minpoly(c) == QPoly{Rat(-1), Rat(1), Rat(1)}); // y^2+y-1
    CHECK(element_minpoly(FieldElement::rational(Kg, Rat(5, 3))) == QPoly{Rat(-5, 3), Rat(1)});
}

TEST_CASE("integer polynomial factorization") {
    // (x^2-2)(x^2-3)
    QPoly p = poly_mul({Rat(-2), Rat(0), Rat(1)}, {Rat(-3), Rat(0), Rat(1)});
    auto f = factor_monic_integer(p);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == QPoly{Rat(-3), Rat(0), Rat(1)});
    CHECK(f[1] == QPoly{Rat(-2), Rat(0), Rat(1)});
    // Salem quartic is irreducible
    auto g = factor_monic_integer({Rat(1), Rat(-1), Rat(-1), Rat(-1), Rat(1)});
    CHECK(g.size() == 1);
    // (x-1)^2 (x+2)
    QPoly h = poly_mul(poly_mul({Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}), {Rat(2), Rat(1)});
    auto hf = factor_monic_integer(h);
    CHECK(hf.size() == 3);
}
