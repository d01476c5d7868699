#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weilgamma/elements.hpp"
#include "weilgamma/errors.hpp"
#include "weilgamma/hom.hpp"
#include "weilgamma/ring.hpp"

#include <random>

using namespace weilgamma;

namespace {

// deterministic small-value sampler for property tests
struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(uint64_t seed) : rng(seed) {}
    long pick(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1)); }

    Value value(const RingPtr& r, int depth = 0) {
        Value v = ring_from_int(r, pick(-6, 6));
        if (depth > 2) return v;
        switch (r->kind) {
        case RingKind::Cyclotomic: {
            Value z = root_of_unity(r, r->m);
            return ring_add(v, ring_mul(ring_from_int(r, pick(-3, 3)), ring_pow(z, pick(0, r->m - 1))));
        }
        case RingKind::FiniteField: {
            Value g = ff_generator(r);
            return ring_add(v, ring_pow(g, pick(0, 5)));
        }
        case RingKind::ModularCyclotomic: {
            Value z = root_of_unity(r, r->m);
            return ring_add(v, ring_mul(ring_from_int(r, pick(0, 7)), ring_pow(z, pick(0, r->m - 1))));
        }
        case RingKind::PolyExt: {
            Value t = ring_variable(r, r->var);
            Value c0 = Hom::const_lift(r->base, r)(value(r->base, depth + 1));
            Value c1 = Hom::const_lift(r->base, r)(value(r->base, depth + 1));
            return ring_add(c0, ring_mul(c1, ring_pow(t, pick(1, 2))));
        }
        case RingKind::Quotient: {
            Value t = ring_variable(r, r->base->var);
            Value c0 = Hom::const_lift(r->base->base, r)(value(r->base->base, depth + 1));
            return ring_add(c0, ring_mul(ring_from_int(r, pick(-3, 3)), t));
        }
        case RingKind::Product: {
            std::vector<Value> comps;
            for (const auto& c : r->components) comps.push_back(value(c, depth + 1));
            return Value(r, std::move(comps));
        }
        default:
            return v;
        }
    }
};

RingPtr qq() { return make_rationals(); }

} // namespace

TEST_CASE("cyclotomic field of order four contains i") {
    RingPtr r = make_cyclotomic(4);
    Value i = root_of_unity(r, 4);
    CHECK(ring_mul(i, i) == ring_from_int(r, -1));
}

TEST_CASE("finite field with 25 elements has a generator of order 24") {
    RingPtr f = make_finite_field(5, 2);
    Value g = ff_generator(f);
    CHECK(is_one(ring_pow(g, 24)));
    CHECK(!is_one(ring_pow(g, 12)));
    CHECK(!is_one(ring_pow(g, 8)));
}

TEST_CASE("polynomial ring over the third cyclotomic field") {
    RingPtr p = make_poly_ext(make_cyclotomic(3), "T");
    Value t = ring_variable(p, "T");
    Value z = root_of_unity(p, 3);
    Value sq = ring_mul(ring_add(t, z), ring_add(t, z));
    // (T + z)^2 = T^2 + 2zT + z^2
    Value expected = ring_add(ring_mul(t, t),
                              ring_add(ring_mul(ring_mul(ring_from_int(p, 2), z), t), ring_mul(z, z)));
    CHECK(sq == expected);
}

TEST_CASE("descriptor validation errors") {
    CHECK_THROWS_WITH_AS(make_finite_field(6, 1), doctest::Contains("not prime"), Error);
    CHECK_THROWS_AS(make_modular_cyclotomic(3, 4, 1), Error);
    RingPtr p = make_poly_ext(qq(), "T");
    Value t = ring_variable(p, "T");
    // modulus 2T + 1 is not monic
    Value nonmonic = ring_add(ring_mul(ring_from_int(p, 2), t), ring_one(p));
    try {
        make_quotient(p, nonmonic);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonMonicModulus);
    }
}

TEST_CASE("units in the rationals") {
    Value two = ring_from_int(qq(), 2);
    CHECK(is_unit(two));
    CHECK(inverse(two) == ring_from_rat(qq(), Rat(1, 2)));
}

TEST_CASE("ell is nilpotent and not a unit in Z/ell^2") {
    RingPtr r = make_modular_cyclotomic(1, 5, 2);
    Value five = ring_from_int(r, 5);
    CHECK(!is_unit(five));
    CHECK(is_nilpotent(five));
    CHECK(!is_zero(five));
    try {
        inverse(five);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAUnit);
    }
}

TEST_CASE("1 + ell T is a unit with inverse 1 - ell T") {
    RingPtr base = make_modular_cyclotomic(1, 5, 2);
    RingPtr p = make_poly_ext(base, "T");
    Value t = ring_variable(p, "T");
    Value v = ring_add(ring_one(p), ring_mul(ring_from_int(p, 5), t));
    REQUIRE(is_unit(v));
    Value inv = inverse(v);
    CHECK(is_one(ring_mul(v, inv)));
    Value expected = ring_sub(ring_one(p), ring_mul(ring_from_int(p, 5), t));
    CHECK(inv == expected);
}

TEST_CASE("units in a quotient field") {
    RingPtr p = make_poly_ext(qq(), "T");
    Value t = ring_variable(p, "T");
    Value modulus = ring_sub(ring_mul(t, t), ring_from_int(p, 2)); // T^2 - 2
    RingPtr k = make_quotient(p, modulus);
    Value tk = ring_variable(k, "T");
    REQUIRE(is_unit(tk));
    CHECK(is_one(ring_mul(tk, inverse(tk))));
    // sqrt(2)^-1 = sqrt(2)/2
    CHECK(inverse(tk) == ring_mul(tk, ring_from_rat(k, Rat(1, 2))));
}

TEST_CASE("reduction hom sends the third root of unity to a cube root of one mod 7") {
    RingPtr c3 = make_cyclotomic(3);
    RingPtr f7 = make_finite_field(7, 1);
    Hom red = cyclo_reduction(c3, f7);
    Value z = root_of_unity(c3, 3);
    Value img = red(z);
    CHECK(is_one(ring_pow(img, 3)));
    CHECK(!is_one(img));
    // 1 + zeta goes along
    Value v = ring_add(ring_one(c3), z);
    CHECK(red(v) == ring_add(ring_one(f7), img));
    // the default choice is the smallest-exponent root: g^2 = 3^2 = 2
    CHECK(img == ring_from_int(f7, 2));
    CHECK(red(v) == ring_from_int(f7, 3));
}

TEST_CASE("evaluation hom T -> 5") {
    RingPtr p = make_poly_ext(qq(), "T");
    Hom ev = Hom::extend_poly(p, Hom::identity(qq()), ring_from_int(qq(), 5));
    Value t = ring_variable(p, "T");
    Value v = ring_add(ring_mul(t, t), ring_one(p));
    CHECK(ev(v) == ring_from_int(qq(), 26));
}

TEST_CASE("identity hom fixes values") {
    RingPtr r = make_cyclotomic(8);
    Hom id = Hom::identity(r);
    Sampler s(7);
    for (int i = 0; i < 10; ++i) {
        Value v = s.value(r);
        CHECK(id(v) == v);
    }
}

TEST_CASE("homs preserve addition and multiplication") {
    Sampler s(11);

    auto check_hom = [&](const Hom& h, const RingPtr& src, int trials = 12) {
        for (int i = 0; i < trials; ++i) {
            Value a = s.value(src);
            Value b = s.value(src);
            CHECK(h(ring_add(a, b)) == ring_add(h(a), h(b)));
            CHECK(h(ring_mul(a, b)) == ring_mul(h(a), h(b)));
        }
    };

    RingPtr c3 = make_cyclotomic(3);
    check_hom(cyclo_reduction(c3, make_finite_field(7, 1)), c3);
    check_hom(Hom::cyclo_to(c3, make_modular_cyclotomic(3, 7, 2), root_of_unity(make_modular_cyclotomic(3, 7, 2), 3)), c3);

    RingPtr p = make_poly_ext(c3, "T");
    check_hom(Hom::extend_poly(p, Hom::identity(c3), ring_add(root_of_unity(c3, 3), ring_one(c3))), p);

    Enlargement en = adjoin_roots(c3, 12);
    check_hom(en.embed, c3);

    RingPtr prod = make_product({qq(), c3});
    check_hom(Hom::project(prod, 1), prod);
}

TEST_CASE("adjoin roots of unity") {
    SUBCASE("nothing to do over Q") {
        Enlargement en = adjoin_roots(qq(), 1);
        CHECK(ring_equal(en.ring, qq()));
        Enlargement en2 = adjoin_roots(qq(), 2);
        CHECK(ring_equal(en2.ring, qq()));
    }
    SUBCASE("Q gains the eighth roots") {
        Enlargement en = adjoin_roots(qq(), 8);
        CHECK(en.ring->kind == RingKind::Cyclotomic);
        CHECK(en.ring->m == 8);
        Value z = root_of_unity(en.ring, 8);
        CHECK(is_one(ring_pow(z, 8)));
        CHECK(!is_one(ring_pow(z, 4)));
    }
    SUBCASE("F_7 needs F_49 for the eighth roots") {
        RingPtr f7 = make_finite_field(7, 1);
        Enlargement en = adjoin_roots(f7, 8);
        CHECK(en.ring->kind == RingKind::FiniteField);
        CHECK(en.ring->r_deg == 2);
        Value z = root_of_unity(en.ring, 8);
        CHECK(is_one(ring_pow(z, 8)));
        CHECK(!is_one(ring_pow(z, 4)));
        // the embedding respects arithmetic on a few samples
        Value three = ring_from_int(f7, 3);
        CHECK(en.embed(three) == ring_from_int(en.ring, 3));
    }
    SUBCASE("roots of order divisible by the characteristic are unavailable") {
        try {
            adjoin_roots(make_finite_field(7, 1), 7);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::RootsUnavailable);
        }
    }
}

TEST_CASE("recanonicalization is the identity") {
    Sampler s(23);
    RingPtr p = make_poly_ext(make_cyclotomic(3), "T");
    Value modm = ring_sub(ring_mul(ring_variable(p, "T"), ring_variable(p, "T")), ring_from_int(p, 2));
    std::vector<RingPtr> rings = {qq(),
                                  make_cyclotomic(8),
                                  make_finite_field(5, 2),
                                  make_modular_cyclotomic(3, 7, 2),
                                  p,
                                  make_quotient(p, modm),
                                  make_product({qq(), make_cyclotomic(4)})};
    for (const auto& r : rings)
        for (int i = 0; i < 8; ++i) {
            Value v = s.value(r);
            CHECK(recanonicalize(v) == v);
        }
}

TEST_CASE("ring axioms on randomized triples") {
    Sampler s(37);
    RingPtr p = make_poly_ext(make_modular_cyclotomic(1, 5, 2), "T");
    std::vector<RingPtr> rings = {qq(), make_cyclotomic(8), make_finite_field(7, 2),
                                  make_modular_cyclotomic(3, 5, 2), p};
    for (const auto& r : rings) {
        for (int i = 0; i < 10; ++i) {
            Value a = s.value(r), b = s.value(r), c = s.value(r);
            CHECK(ring_add(a, b) == ring_add(b, a));
            CHECK(ring_mul(a, b) == ring_mul(b, a));
            CHECK(ring_add(ring_add(a, b), c) == ring_add(a, ring_add(b, c)));
            CHECK(ring_mul(ring_mul(a, b), c) == ring_mul(a, ring_mul(b, c)));
            CHECK(ring_mul(a, ring_add(b, c)) == ring_add(ring_mul(a, b), ring_mul(a, c)));
            if (is_unit(a)) CHECK(is_one(ring_mul(a, inverse(a))));
        }
    }
}

TEST_CASE("product rings work componentwise") {
    RingPtr prod = make_product({qq(), make_finite_field(5, 1)});
    Value v = Value(prod, std::vector<Value>{ring_from_int(qq(), 3), ring_from_int(make_finite_field(5, 1), 2)});
    CHECK(is_unit(v));
    Value w = Value(prod, std::vector<Value>{ring_from_int(qq(), 3), ring_zero(make_finite_field(5, 1))});
    CHECK(!is_unit(w));
    Value prod_val = ring_mul(v, v);
    Hom pr = Hom::project(prod, 0);
    CHECK(pr(prod_val) == ring_from_int(qq(), 9));
    // trace-style ambiguity never arises here; just check equality semantics
    CHECK(ring_add(v, w) == ring_add(w, v));
}

TEST_CASE("element syntax round-trips") {
    Sampler s(41);
    RingPtr p = make_poly_ext(make_cyclotomic(3), "T");
    Value modm = ring_sub(ring_mul(ring_variable(p, "T"), ring_variable(p, "T")), ring_from_int(p, 2));
    std::vector<RingPtr> rings = {qq(), make_cyclotomic(8),       make_finite_field(7, 2),
                                  p,    make_quotient(p, modm),   make_modular_cyclotomic(3, 7, 2)};
    for (const auto& r : rings)
        for (int i = 0; i < 10; ++i) {
            Value v = s.value(r);
            std::string text = to_string(v);
            CAPTURE(text);
            CHECK(parse_element(r, text) == v);
        }
}

TEST_CASE("parser handles rationals, roots and variables") {
    CHECK(parse_element(qq(), "2/3") == ring_from_rat(qq(), Rat(2, 3)));
    CHECK(parse_element(qq(), "-4 + 1/2") == ring_from_rat(qq(), Rat(-7, 2)));
    RingPtr c8 = make_cyclotomic(8);
    CHECK(parse_element(c8, "z8^3") == ring_pow(root_of_unity(c8, 8), 3));
    CHECK(parse_element(c8, "z4") == ring_pow(root_of_unity(c8, 8), 2));
    CHECK(parse_element(c8, "(1+z8)*(1-z8)") ==
          ring_sub(ring_one(c8), ring_pow(root_of_unity(c8, 8), 2)));
    RingPtr f49 = make_finite_field(7, 2);
    CHECK(parse_element(f49, "g^2 + 3") == ring_add(ring_pow(ff_generator(f49), 2), ring_from_int(f49, 3)));
    try {
        parse_element(qq(), "X + 1");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}

TEST_CASE("family base recognition") {
    CHECK(is_family_base(qq()));
    CHECK(is_family_base(make_cyclotomic(8)));
    CHECK(is_family_base(make_poly_ext(make_cyclotomic(3), "T")));
    CHECK(!is_family_base(make_modular_cyclotomic(1, 5, 2)));
    CHECK(!is_family_base(make_finite_field(5, 1)));
}

TEST_CASE("mixing rings raises DescriptorMismatch") {
    Value a = ring_one(qq());
    Value b = ring_one(make_cyclotomic(4));
    try {
        ring_add(a, b);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DescriptorMismatch);
    }
}
