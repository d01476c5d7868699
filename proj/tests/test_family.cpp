#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weilgamma/elements.hpp"
#include "weilgamma/errors.hpp"
#include "weilgamma/family.hpp"
#include "weilgamma/generators.hpp"

using namespace weilgamma;

namespace {

RingPtr qq() { return make_rationals(); }
LocalField f3() { return make_local_field(3, 1, 7); }

TameRep unram_char(const Rat& alpha) {
    return mk_tame(qq(), f3(), mat_from(qq(), 1, 1, {ring_from_rat(qq(), alpha)}),
                   mat_identity(qq(), 1));
}

TameRep quad_char(const Rat& u) {
    return mk_tame(qq(), f3(), mat_from(qq(), 1, 1, {ring_from_rat(qq(), u)}),
                   mat_from(qq(), 1, 1, {ring_from_int(qq(), -1)}));
}

RingPtr cyclo_join(const RingPtr& a, const RingPtr& b) {
    long mb = b->kind == RingKind::Cyclotomic ? b->m : 1;
    return adjoin_roots(a, std::max(mb, 1L)).ring;
}

bool frac_equal_joined(const SFraction& a, const SFraction& b) {
    RingPtr big = cyclo_join(a.num.ring, b.num.ring);
    return frac_equal(frac_specialize(canonical_embed(a.num.ring, big), a),
                      frac_specialize(canonical_embed(b.num.ring, big), b));
}

// the polynomial family Phi = (1+T), Sigma = (1) over Q[T]
TameRep poly_family_rep(const RingPtr& p) {
    Value t = ring_variable(p, "T");
    Matrix phi = mat_from(p, 1, 1, {ring_add(ring_one(p), t)});
    return mk_tame(p, f3(), phi, mat_identity(p, 1));
}

} // namespace

TEST_CASE("the averaging operator and its determinant") {
    SUBCASE("unramified line: T = q") {
        TameRep rep = unram_char(Rat(5));
        Matrix t = t_operator(rep);
        CHECK(t.at(0, 0) == ring_from_int(qq(), 3));
        CHECK(det_t(rep) == ring_from_int(qq(), 3));
    }
    SUBCASE("tame ramified character: T = 1") {
        TameRep rep = quad_char(Rat(2));
        CHECK(det_t(rep) == ring_one(qq()));
    }
    SUBCASE("the induced example: det T = 1") {
        RingPtr c8 = make_cyclotomic(8);
        TameRep ind = induct_unramified(character_rep(make_tame_character(c8, f3(), 2, ring_from_int(c8, 5), 1)));
        CHECK(det_t(ind) == ring_one(c8));
    }
}

TEST_CASE("gamma from the closed formula") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("unramified character over Q") {
        TameRep rep = unram_char(Rat(2));
        GammaResult g = gamma_family(rep, psi, epsilon0_field(rep, psi));
        SFraction expected = parse_fraction(g.ring, "(-2*3*X*(1 - 2*X))/(1 - 6*X)");
        CHECK(frac_equal(g.gamma, expected));
        FractionResult classical = gamma_field(rep, psi);
        CHECK(frac_equal_joined(g.gamma, classical.value));
        CHECK(g.exponent == 1);
        CHECK(g.det_t == ring_from_int(g.ring, 3));
    }
    SUBCASE("tame ramified character") {
        TameRep rep = quad_char(Rat(1));
        GammaResult g = gamma_family(rep, psi, epsilon0_field(rep, psi));
        SFraction expected = parse_fraction(g.ring, "(z3 - z3^2)*X");
        CHECK(frac_equal(g.gamma, expected));
        FractionResult classical = gamma_field(rep, psi);
        CHECK(frac_equal_joined(g.gamma, classical.value));
    }
    SUBCASE("the polynomial family") {
        RingPtr p = make_poly_ext(qq(), "T");
        TameRep rep = poly_family_rep(p);
        GammaResult g = gamma_family(rep, psi, epsilon0_semisimple(rep, psi));
        SFraction expected =
            parse_fraction(p, "(-(1+T)*3*X*(1 - (1+T)*X))/(1 - 3*(1+T)*X)");
        CHECK(frac_equal(g.gamma, expected));

        // specializing T -> 0 recovers the unramified character with alpha = 1
        Hom ev = Hom::extend_poly(p, Hom::identity(qq()), ring_zero(qq()));
        SFraction fiber = frac_specialize(ev, g.gamma);
        TameRep one = unram_char(Rat(1));
        GammaResult gf = gamma_family(one, psi, epsilon0_field(one, psi));
        CHECK(frac_equal_joined(fiber, gf.gamma));
    }
}

TEST_CASE("epsilon0 over families") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("constant families agree with the field computation") {
        TameRep rep = quad_char(Rat(2));
        FamilyPresentation pres = make_family(rep, Hom::identity(qq()));
        ScalarResult fam = epsilon0_family(pres, psi);
        ScalarResult fld = epsilon0_field(rep, psi);
        RingPtr big = cyclo_join(fam.ring, fld.ring);
        CHECK(into_ring(fam.value, big) == into_ring(fld.value, big));
    }
    SUBCASE("evaluation of the polynomial family at T = 3") {
        RingPtr p = make_poly_ext(qq(), "T");
        TameRep rep = poly_family_rep(p);
        Hom ev = Hom::extend_poly(p, Hom::identity(qq()), ring_from_int(qq(), 3));
        FamilyPresentation pres = make_family(rep, ev);
        ScalarResult e = epsilon0_family(pres, psi);
        CHECK(e.value == ring_from_int(e.ring, -4));
    }
    SUBCASE("specialization into a modular cyclotomic layer matches the reduction path") {
        RingPtr p = make_poly_ext(qq(), "T");
        Value t = ring_variable(p, "T");
        // quadratic character with Frobenius value 1 + T
        Matrix phi = mat_from(p, 1, 1, {ring_add(ring_one(p), t)});
        Matrix sigma = mat_from(p, 1, 1, {ring_from_int(p, -1)});
        TameRep rep = mk_tame(p, f3(), phi, sigma);

        RingPtr mc = make_modular_cyclotomic(1, 7, 1);
        Hom f = Hom::extend_poly(p, Hom::rationals_to(mc), ring_from_int(mc, 2));
        FamilyPresentation pres = make_family(rep, f);
        ScalarResult fam = epsilon0_family(pres, psi); // over MC(3,7,1)

        // independent path: the fiber at T = 2 over Q, reduced mod 7
        TameRep fiber = quad_char(Rat(3));
        RingPtr f7 = make_finite_field(7, 1);
        ReductionResult red = epsilon0_reduce_mod_ell(fiber, psi, Hom::rationals_to(f7));

        // bridge MC(3,7,1) -> F_7 sending the class of x to the same cube root
        REQUIRE(fam.ring->kind == RingKind::ModularCyclotomic);
        Value target_root = ring_from_int(f7, 2);
        Hom bridge = Hom::mod_cyclo_to(fam.ring, f7, target_root);
        CHECK(bridge(fam.value) == red.value);
    }
}

TEST_CASE("interpolation across fibers") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("constant family with the identity fiber") {
        TameRep rep = quad_char(Rat(2));
        FamilyPresentation pres = make_family(rep, Hom::identity(qq()));
        InterpolationReport rep1 = verify_interpolation(pres, psi, {Hom::identity(qq())});
        CHECK(rep1.all_pass);
    }
    SUBCASE("the polynomial family at T = 0, 1, 2 and mod 7") {
        RingPtr p = make_poly_ext(qq(), "T");
        TameRep rep = poly_family_rep(p);
        FamilyPresentation pres = make_family(rep, Hom::identity(p));
        std::vector<Hom> fibers;
        for (long t = 0; t <= 2; ++t)
            fibers.push_back(Hom::extend_poly(p, Hom::identity(qq()), ring_from_int(qq(), t)));
        // reduction fiber: T -> 2 over Q, then mod 7
        Hom point = Hom::extend_poly(p, Hom::identity(qq()), ring_from_int(qq(), 2));
        Hom red = Hom::rationals_to(make_finite_field(7, 1));
        fibers.push_back(Hom::compose(red, point));
        InterpolationReport r = verify_interpolation(pres, psi, fibers);
        for (const auto& f : r.fibers) {
            CAPTURE(f.fiber);
            CAPTURE(f.lhs);
            CAPTURE(f.rhs);
            CHECK(f.pass);
        }
        CHECK(r.all_pass);
    }
    SUBCASE("a ramified family over a cyclotomic base") {
        RingPtr c8 = make_cyclotomic(8);
        RingPtr p = make_poly_ext(c8, "T");
        Value t = ring_variable(p, "T");
        Value z = root_of_unity(p, 8);
        // 2-dimensional induced shape with a T-dependent Frobenius block
        Matrix sigma = mat_zero(p, 2, 2);
        sigma.at(0, 0) = z;
        sigma.at(1, 1) = ring_pow(z, 3);
        Matrix phi = mat_zero(p, 2, 2);
        phi.at(0, 1) = ring_add(ring_one(p), t); // w = 1 + T
        phi.at(1, 0) = ring_one(p);
        TameRep rep = mk_tame(p, f3(), phi, sigma);
        FamilyPresentation pres = make_family(rep, Hom::identity(p));
        std::vector<Hom> fibers;
        for (long v = 0; v <= 1; ++v)
            fibers.push_back(Hom::extend_poly(p, Hom::identity(c8), ring_from_int(c8, v)));
        InterpolationReport r = verify_interpolation(pres, psi, fibers);
        for (const auto& f : r.fibers) {
            CAPTURE(f.fiber);
            CAPTURE(f.lhs);
            CAPTURE(f.rhs);
            CHECK(f.pass);
        }
        CHECK(r.all_pass);
    }
}

TEST_CASE("the determinant theorem identities") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("closed cases") {
        CHECK(thm61_det_identity(unram_char(Rat(2))));
        CHECK(thm61_ratio_identity(unram_char(Rat(2))));
        CHECK(thm61_det_identity(quad_char(Rat(1))));
        CHECK(thm61_ratio_identity(quad_char(Rat(1))));
    }
    SUBCASE("random semisimple representations") {
        RepGen gen(113);
        for (long q_choice = 0; q_choice < 3; ++q_choice) {
            LocalField f = q_choice == 0 ? f3()
                         : q_choice == 1 ? make_local_field(5, 1, 7)
                                         : make_local_field(3, 2, 7);
            for (int t = 0; t < 5; ++t) {
                TameRep rep = gen.tame_semisimple(f, 5, 2);
                CHECK(thm61_det_identity(rep));
                CHECK(thm61_ratio_identity(rep));
            }
        }
    }
    SUBCASE("non-semisimple inputs also satisfy both identities") {
        RepGen gen(127);
        for (int t = 0; t < 5; ++t) {
            TameRep rep = gen.tame_with_coupling(f3(), 4, 2);
            CHECK(thm61_det_identity(rep));
            CHECK(thm61_ratio_identity(rep));
        }
    }
    (void)psi;
}

TEST_CASE("determinant data only sees the diagonal part") {
    RepGen gen(131);
    for (int t = 0; t < 5; ++t) {
        TameRep a = gen.tame_semisimple(f3(), 3, 2);
        TameRep b = gen.tame_semisimple(f3(), 3, 2);
        if (!ring_equal(a.ring, b.ring)) continue;
        TameRep joined = gen.triangular_join(a, b);
        TameRep diag = direct_sum(a, b);
        CHECK(det_t(joined) == det_t(diag));
        CHECK(lp_eq(char_rev(joined.phi), char_rev(diag.phi)));
        CHECK(lp_eq(char_rev(mat_mul(t_operator(joined), joined.phi)),
                    char_rev(mat_mul(t_operator(diag), diag.phi))));
    }
}

TEST_CASE("gamma of the closed formula is multiplicative") {
    AdditiveCharacter psi = make_additive_character(f3());
    RepGen gen(137);
    for (int t = 0; t < 4; ++t) {
        TameRep a = gen.tame_semisimple(f3(), 3, 2);
        TameRep b = gen.tame_semisimple(f3(), 3, 2);
        if (!ring_equal(a.ring, b.ring)) continue;
        TameRep joined = gen.triangular_join(a, b);
        TameRep diag = direct_sum(a, b);
        GammaResult gj = gamma_family(joined, psi, epsilon0_semisimple(joined, psi));
        GammaResult g1 = gamma_family(a, psi, epsilon0_semisimple(a, psi));
        GammaResult g2 = gamma_family(b, psi, epsilon0_semisimple(b, psi));
        GammaResult gd = gamma_family(diag, psi, epsilon0_semisimple(diag, psi));
        RingPtr big = cyclo_join(cyclo_join(gj.ring, g1.ring), cyclo_join(g2.ring, gd.ring));
        SFraction prod = frac_mul(frac_specialize(canonical_embed(g1.ring, big), g1.gamma),
                                  frac_specialize(canonical_embed(g2.ring, big), g2.gamma));
        CHECK(frac_equal(frac_specialize(canonical_embed(gj.ring, big), gj.gamma), prod));
        CHECK(frac_equal(frac_specialize(canonical_embed(gd.ring, big), gd.gamma), prod));
    }
}

TEST_CASE("the specialization square commutes") {
    AdditiveCharacter psi = make_additive_character(f3());
    RingPtr p = make_poly_ext(qq(), "T");
    TameRep rep = poly_family_rep(p);
    GammaResult g = gamma_family(rep, psi, epsilon0_semisimple(rep, psi));
    for (long t = 0; t <= 3; ++t) {
        Hom ev = Hom::extend_poly(p, Hom::identity(qq()), ring_from_int(qq(), t));
        // specialize the family gamma
        HomExtension ext = extend_hom_cyclotomic(ev, g.ring->kind == RingKind::PolyExt ? 1 : 1);
        SFraction lhs = frac_specialize(ev, g.gamma); // gamma ring is Q[T] here
        // base-change then recompute
        Matrix phi = mat_specialize(ev, rep.phi);
        TameRep fiber = mk_tame(qq(), f3(), phi, mat_identity(qq(), 1));
        GammaResult gf = gamma_family(fiber, psi, epsilon0_semisimple(fiber, psi));
        CHECK(frac_equal_joined(lhs, gf.gamma));
    }
}

TEST_CASE("descent of enlarged coefficients") {
    RingPtr c24 = make_cyclotomic(24);
    RingPtr c8 = make_cyclotomic(8);
    Value v = into_ring(root_of_unity(c8, 8), c24);
    auto d = try_descend(v, c8);
    REQUIRE(d.has_value());
    CHECK(*d == root_of_unity(c8, 8));
    // a primitive 24th root does not descend
    CHECK(!try_descend(root_of_unity(c24, 24), c8).has_value());
}
