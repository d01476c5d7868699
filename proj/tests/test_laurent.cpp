#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weilgamma/elements.hpp"
#include "weilgamma/errors.hpp"
#include "weilgamma/laurent.hpp"

#include <random>

using namespace weilgamma;

namespace {

RingPtr qq() { return make_rationals(); }

SFraction fr(const RingPtr& r, const std::string& s) { return parse_fraction(r, s); }

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(uint64_t seed) : rng(seed) {}
    long pick(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1)); }

    LaurentPoly poly(const RingPtr& r) {
        long lo = pick(-2, 1);
        long len = pick(1, 4);
        std::vector<Value> c;
        for (long i = 0; i < len; ++i) c.push_back(ring_from_int(r, pick(-5, 5)));
        return lp_from_coeffs(r, lo, std::move(c));
    }

    // denominator in S: unit extremes
    LaurentPoly s_poly(const RingPtr& r) {
        LaurentPoly p = poly(r);
        std::vector<Value> c = p.coeffs;
        if (c.empty()) c.push_back(ring_one(r));
        c.front() = ring_from_int(r, pick(0, 1) == 0 ? 1 : -1);
        c.back() = ring_from_int(r, pick(0, 1) == 0 ? 1 : -1);
        if (c.size() == 1) c[0] = ring_one(r);
        return lp_from_coeffs(r, p.min_exp, std::move(c));
    }

    SFraction fraction(const RingPtr& r) {
        LaurentPoly num = poly(r);
        LaurentPoly den = s_poly(r);
        return mk_fraction(num, den);
    }
};

} // namespace

TEST_CASE("fraction construction checks the denominator") {
    SUBCASE("the unit fraction") {
        SFraction f = mk_fraction(lp_const(ring_one(qq())), lp_const(ring_one(qq())));
        CHECK(frac_equal(f, frac_one(qq())));
    }
    SUBCASE("(1-2X)/(1-6X) over Q is valid") { CHECK_NOTHROW(fr(qq(), "(1 - 2*X)/(1 - 6*X)")); }
    SUBCASE("1 - ell X fails over Z[zeta]/ell^2") {
        RingPtr r = make_modular_cyclotomic(1, 5, 2);
        LaurentPoly den = lp_sub(lp_const(ring_one(r)), lp_monomial(ring_from_int(r, 5), 1));
        try {
            mk_fraction(lp_const(ring_one(r)), den);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DenominatorNotInS);
        }
    }
    SUBCASE("regular non-unit extremes are accepted over provable domains") {
        RingPtr p = make_poly_ext(qq(), "T");
        CHECK_NOTHROW(fr(p, "1/(1 - (1+T)*X)"));
    }
}

TEST_CASE("fraction equality is cross-multiplication") {
    CHECK(frac_equal(fr(qq(), "(2*X)/2"), fr(qq(), "X")));
    CHECK(frac_equal(fr(qq(), "(1 - X^2)/(1 - X)"), fr(qq(), "1 + X")));
    // over Z/25 the cross products differ by 5X(...) != 0
    RingPtr r = make_modular_cyclotomic(1, 5, 2);
    SFraction a = fr(r, "1/(1 - 5*X + X^2)");
    SFraction b = fr(r, "1/(1 + X^2)");
    CHECK(!frac_equal(a, b));
}

TEST_CASE("fraction arithmetic") {
    SFraction prod = frac_mul(fr(qq(), "1 - 2*X"), fr(qq(), "1/(1 - 2*X)"));
    CHECK(frac_equal(prod, frac_one(qq())));
    SFraction sum = frac_add(fr(qq(), "1/(1 - X)"), frac_neg(fr(qq(), "1/(1 - X)")));
    CHECK(frac_equal(sum, frac_zero(qq())));
    SFraction inv = frac_invert(fr(qq(), "(1 - 2*X)/(1 - 6*X)"));
    CHECK(frac_equal(inv, fr(qq(), "(1 - 6*X)/(1 - 2*X)")));
    // inverting a fraction whose numerator is not in S fails
    RingPtr r = make_modular_cyclotomic(1, 5, 2);
    try {
        frac_invert(fr(r, "(1 - 5*X)/1"));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NumeratorNotInS);
    }
}

TEST_CASE("specialization of fractions") {
    SUBCASE("evaluation T -> 0") {
        RingPtr p = make_poly_ext(qq(), "T");
        Hom ev = Hom::extend_poly(p, Hom::identity(qq()), ring_zero(qq()));
        SFraction f = fr(p, "(1 - T*X)/(1 - X)");
        CHECK(frac_equal(frac_specialize(ev, f), fr(qq(), "1/(1 - X)")));
    }
    SUBCASE("reduction mod 7") {
        RingPtr f7 = make_finite_field(7, 1);
        Hom red = Hom::rationals_to(f7);
        SFraction f = fr(qq(), "(1 - 2*X)/(1 - 6*X)");
        CHECK(frac_equal(frac_specialize(red, f), fr(f7, "(1 - 2*X)/(1 + X)")));
    }
    SUBCASE("identity") {
        SFraction f = fr(qq(), "(3 - X)/(1 + X^2)");
        CHECK(frac_equal(frac_specialize(Hom::identity(qq()), f), f));
    }
}

TEST_CASE("fraction ring axioms on randomized inputs") {
    Sampler s(101);
    std::vector<RingPtr> rings = {qq(), make_cyclotomic(4), make_modular_cyclotomic(1, 5, 2)};
    for (const auto& r : rings) {
        for (int i = 0; i < 12; ++i) {
            SFraction a = s.fraction(r), b = s.fraction(r), c = s.fraction(r);
            CHECK(frac_equal(frac_add(a, b), frac_add(b, a)));
            CHECK(frac_equal(frac_mul(a, b), frac_mul(b, a)));
            CHECK(frac_equal(frac_add(frac_add(a, b), c), frac_add(a, frac_add(b, c))));
            CHECK(frac_equal(frac_mul(frac_mul(a, b), c), frac_mul(a, frac_mul(b, c))));
            CHECK(frac_equal(frac_mul(a, frac_add(b, c)), frac_add(frac_mul(a, b), frac_mul(a, c))));
            CHECK(frac_equal(frac_add(a, frac_neg(a)), frac_zero(r)));
        }
    }
}

TEST_CASE("specialization is a ring homomorphism on fractions") {
    Sampler s(131);
    RingPtr f7 = make_finite_field(7, 1);
    Hom red = Hom::rationals_to(f7);
    for (int i = 0; i < 10; ++i) {
        SFraction a = s.fraction(qq()), b = s.fraction(qq());
        CHECK(frac_equal(frac_specialize(red, frac_add(a, b)),
                         frac_add(frac_specialize(red, a), frac_specialize(red, b))));
        CHECK(frac_equal(frac_specialize(red, frac_mul(a, b)),
                         frac_mul(frac_specialize(red, a), frac_specialize(red, b))));
    }
}

TEST_CASE("elements of S are regular") {
    Sampler s(151);
    RingPtr r = make_modular_cyclotomic(1, 5, 2); // has zero divisors
    for (int i = 0; i < 25; ++i) {
        LaurentPoly sp = s.s_poly(r);
        LaurentPoly t = s.poly(r);
        if (lp_is_zero(t)) continue;
        CHECK(!lp_is_zero(lp_mul(sp, t)));
    }
}

TEST_CASE("fraction serialization round-trips") {
    Sampler s(171);
    for (int i = 0; i < 15; ++i) {
        SFraction f = s.fraction(make_cyclotomic(4));
        std::string text = frac_to_string(f);
        CAPTURE(text);
        CHECK(frac_equal(parse_fraction(make_cyclotomic(4), text), f));
    }
}

TEST_CASE("reversed characteristic polynomial") {
    RingPtr r = qq();
    Matrix z = mat_zero(r, 3, 3);
    CHECK(lp_is_one(char_rev(z)));
    Matrix d = mat_scalar(r, 1, ring_from_int(r, 2));
    LaurentPoly p = char_rev(d);
    CHECK(lp_eq(p, parse_laurent(r, "1 - 2*X")));
    // companion of a 3-cycle: char_rev = 1 - X^3
    Matrix c = mat_zero(r, 3, 3);
    c.at(0, 2) = ring_one(r);
    c.at(1, 0) = ring_one(r);
    c.at(2, 1) = ring_one(r);
    CHECK(lp_eq(char_rev(c), parse_laurent(r, "1 - X^3")));
}
