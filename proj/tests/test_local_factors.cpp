#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weilgamma/elements.hpp"
#include "weilgamma/errors.hpp"
#include "weilgamma/generators.hpp"
#include "weilgamma/local_factors.hpp"

using namespace weilgamma;

namespace {

RingPtr qq() { return make_rationals(); }
LocalField f3() { return make_local_field(3, 1, 7); }

TameRep unram_char(const Rat& alpha, const LocalField& f) {
    return mk_tame(qq(), f, mat_from(qq(), 1, 1, {ring_from_rat(qq(), alpha)}),
                   mat_identity(qq(), 1));
}

TameRep quad_char(const Rat& u, const LocalField& f) {
    return mk_tame(qq(), f, mat_from(qq(), 1, 1, {ring_from_rat(qq(), u)}),
                   mat_from(qq(), 1, 1, {ring_from_int(qq(), -1)}));
}

RingPtr cyclo_join(const RingPtr& a, const RingPtr& b) {
    long mb = b->kind == RingKind::Cyclotomic ? b->m : 1;
    return adjoin_roots(a, std::max(mb, 1L)).ring;
}

Value join_values_check_equal(const Value& x, const Value& y) {
    RingPtr big = cyclo_join(x.ring(), y.ring());
    Value xx = into_ring(x, big);
    Value yy = into_ring(y, big);
    CHECK(xx == yy);
    return xx;
}

bool frac_equal_joined(const SFraction& a, const SFraction& b) {
    RingPtr big = cyclo_join(a.num.ring, b.num.ring);
    return frac_equal(frac_specialize(canonical_embed(a.num.ring, big), a),
                      frac_specialize(canonical_embed(b.num.ring, big), b));
}

// absolute trace of a finite-field element
long abs_trace(const Value& x, long p, long fd) {
    Value acc = x;
    Value y = x;
    for (long i = 1; i < fd; ++i) {
        y = ring_pow(y, p);
        acc = ring_add(acc, y);
    }
    const auto& c = value_int_coeffs(acc);
    return c.empty() ? 0 : c[0].get_si();
}

} // namespace

TEST_CASE("gauss sums") {
    SUBCASE("the trivial character gives -1") {
        ScalarResult g = gauss_sum(3, 1, 0);
        CHECK(g.value == ring_from_int(g.ring, -1));
    }
    SUBCASE("the quadratic character at q = 3") {
        ScalarResult g = gauss_sum(3, 1, 1);
        Value z3 = root_of_unity(g.ring, 3);
        CHECK(g.value == ring_sub(z3, ring_mul(z3, z3)));
        // its square is -3
        CHECK(ring_mul(g.value, g.value) == ring_from_int(g.ring, -3));
    }
    SUBCASE("norm |g|^2 = q^d for nontrivial characters") {
        for (auto [p, fd] : std::vector<std::pair<long, long>>{{3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
            long m1 = 1;
            for (long i = 0; i < fd; ++i) m1 *= p;
            m1 -= 1;
            for (long j = 1; j < m1; ++j) {
                ScalarResult g = gauss_sum(p, fd, j);
                Value zeta = root_of_unity(g.ring, g.ring->m);
                Hom conj = Hom::cyclo_to(g.ring, g.ring, ring_pow(zeta, g.ring->m - 1));
                Value norm = ring_mul(g.value, conj(g.value));
                CHECK(norm == ring_from_int(g.ring, m1 + 1));
            }
        }
    }
    SUBCASE("brute-force double sum agrees") {
        long p = 3, fd = 2, j = 3;
        long q = 9, m1 = q - 1;
        RingPtr F = make_finite_field(p, fd);
        Value g = ff_generator(F);
        ScalarResult gs = gauss_sum(p, fd, j);
        Value zeta_m = root_of_unity(gs.ring, m1);
        Value zeta_p = root_of_unity(gs.ring, p);
        // g * conj(g) = sum over x,y of chibar^-1(x) chibar(y) psibar(x - y)
        Value total = ring_zero(gs.ring);
        std::vector<Value> pow_g;
        Value cur = ring_one(F);
        for (long k = 0; k < m1; ++k) {
            pow_g.push_back(cur);
            cur = ring_mul(cur, g);
        }
        for (long k = 0; k < m1; ++k)
            for (long l = 0; l < m1; ++l) {
                long t = abs_trace(ring_sub(pow_g[k], pow_g[l]), p, fd);
                Value term = ring_mul(ring_pow(zeta_m, mod_floor(-j * k + j * l, m1)),
                                      ring_pow(zeta_p, t));
                total = ring_add(total, term);
            }
        Hom conj = Hom::cyclo_to(gs.ring, gs.ring, ring_pow(root_of_unity(gs.ring, gs.ring->m), gs.ring->m - 1));
        CHECK(total == ring_mul(gs.value, conj(gs.value)));
        CHECK(total == ring_from_int(gs.ring, q));
    }
}

TEST_CASE("epsilon of characters") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("unramified characters have epsilon 1") {
        TameCharacter chi = make_tame_character(qq(), f3(), 1, ring_from_int(qq(), 5), 0);
        ScalarResult e = epsilon_character(chi, psi);
        CHECK(is_one(e.value));
    }
    SUBCASE("the quadratic character gives the Gauss sum") {
        TameCharacter chi = make_tame_character(qq(), f3(), 1, ring_one(qq()), 1);
        ScalarResult e = epsilon_character(chi, psi);
        Value z3 = root_of_unity(e.ring, 3);
        CHECK(e.value == ring_sub(z3, ring_mul(z3, z3)));
    }
    SUBCASE("the Frobenius value scales out") {
        TameCharacter chi = make_tame_character(qq(), f3(), 1, ring_from_int(qq(), 5), 1);
        ScalarResult e = epsilon_character(chi, psi);
        Value z3 = root_of_unity(e.ring, 3);
        CHECK(e.value == ring_mul(ring_from_int(e.ring, 5), ring_sub(z3, ring_mul(z3, z3))));
    }
    SUBCASE("nonzero level is rejected") {
        TameCharacter chi = make_tame_character(qq(), f3(), 1, ring_one(qq()), 1);
        AdditiveCharacter psi1 = make_additive_character(f3(), 1);
        try {
            epsilon_character(chi, psi1);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::LevelUnsupported);
        }
    }
}

TEST_CASE("spectral data") {
    SUBCASE("trivial inertia is one orbit") {
        TameRep rep = unram_char(Rat(5), f3());
        SpectralData sd = tame_spectral_data(rep);
        REQUIRE(sd.orbits.size() == 1);
        CHECK(sd.orbits[0].rep_exponent == 0);
        CHECK(sd.orbits[0].rank == 1);
        CHECK(sd.orbits[0].d == 1);
    }
    SUBCASE("the induced example has one ramified orbit with Phi^2 acting by w") {
        RingPtr c8 = make_cyclotomic(8);
        Value w = ring_from_int(c8, 5);
        TameRep ind = induct_unramified(character_rep(make_tame_character(c8, f3(), 2, w, 1)));
        SpectralData sd = tame_spectral_data(ind);
        REQUIRE(sd.orbits.size() == 1);
        CHECK(sd.orbits[0].d == 2);
        CHECK(sd.orbits[0].rank == 1);
        CHECK(sd.orbits[0].zeta_order == 8);
        REQUIRE(sd.orbits[0].restricted.rows == 1);
        CHECK(sd.orbits[0].restricted.at(0, 0) == into_ring(w, sd.ring));
    }
    SUBCASE("direct sums report both orbits") {
        RingPtr c8 = make_cyclotomic(8);
        Value w = ring_from_int(c8, 5);
        TameRep ind = induct_unramified(character_rep(make_tame_character(c8, f3(), 2, w, 1)));
        TameRep un = mk_tame(c8, f3(), mat_from(c8, 1, 1, {ring_from_int(c8, 2)}),
                             mat_identity(c8, 1));
        TameRep sum = direct_sum(ind, un);
        SpectralData sd = tame_spectral_data(sum);
        REQUIRE(sd.orbits.size() == 2);
        long total = 0;
        for (const auto& o : sd.orbits) total += o.d * o.rank;
        CHECK(total == 3);
    }
}

TEST_CASE("epsilon0 over fields") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("unramified character") {
        ScalarResult e = epsilon0_field(unram_char(Rat(5), f3()), psi);
        CHECK(e.value == ring_from_int(e.ring, -5));
    }
    SUBCASE("tame ramified character matches epsilon_character") {
        ScalarResult e0 = epsilon0_field(quad_char(Rat(1), f3()), psi);
        TameCharacter chi = make_tame_character(qq(), f3(), 1, ring_one(qq()), 1);
        ScalarResult e = epsilon_character(chi, psi);
        join_values_check_equal(e0.value, e.value);
    }
    SUBCASE("multiplicative over direct sums") {
        RepGen gen(61);
        for (int t = 0; t < 6; ++t) {
            TameRep a = gen.tame_semisimple(f3(), 3, 2);
            TameRep b = gen.tame_semisimple(f3(), 3, 2);
            RingPtr big = cyclo_join(a.ring, b.ring);
            Hom ea = canonical_embed(a.ring, big);
            Hom eb = canonical_embed(b.ring, big);
            TameRep a2 = mk_tame(big, f3(), mat_specialize(ea, a.phi), mat_specialize(ea, a.sigma));
            TameRep b2 = mk_tame(big, f3(), mat_specialize(eb, b.phi), mat_specialize(eb, b.sigma));
            ScalarResult es = epsilon0_field(direct_sum(a2, b2), psi);
            ScalarResult e1 = epsilon0_field(a2, psi);
            ScalarResult e2 = epsilon0_field(b2, psi);
            RingPtr common = cyclo_join(cyclo_join(es.ring, e1.ring), e2.ring);
            CHECK(into_ring(es.value, common) ==
                  ring_mul(into_ring(e1.value, common), into_ring(e2.value, common)));
        }
    }
}

TEST_CASE("L factors") {
    SUBCASE("unramified character") {
        SFraction l = l_factor(unram_char(Rat(5), f3()));
        CHECK(frac_equal(l, parse_fraction(qq(), "1/(1 - 5*X)")));
    }
    SUBCASE("ramified character has trivial L") {
        SFraction l = l_factor(quad_char(Rat(2), f3()));
        CHECK(frac_equal(l, frac_one(qq())));
    }
    SUBCASE("the special representation") {
        SFraction l = l_factor(sp(2, qq(), f3()));
        CHECK(frac_equal(l, parse_fraction(qq(), "1/(1 - X/3)")));
    }
}

TEST_CASE("epsilon monomials") {
    AdditiveCharacter psi0 = make_additive_character(f3());
    SUBCASE("unramified character") {
        TameRep rep = unram_char(Rat(5), f3());
        MonomialResult e = epsilon_monomial(rep, psi0);
        CHECK(is_one(e.constant));
        CHECK(e.exponent == 0);
        MonomialResult e0 = epsilon0_monomial(rep, psi0);
        CHECK(e0.constant == ring_from_int(e0.ring, -5));
        CHECK(e0.exponent == 1);
    }
    SUBCASE("tame ramified character") {
        TameRep rep = quad_char(Rat(1), f3());
        CHECK(epsilon_monomial(rep, psi0).exponent == 1);
        CHECK(epsilon0_monomial(rep, psi0).exponent == 1);
    }
    SUBCASE("the induced example at level one") {
        RingPtr c8 = make_cyclotomic(8);
        TameRep ind = induct_unramified(character_rep(make_tame_character(c8, f3(), 2, ring_from_int(c8, 5), 1)));
        AdditiveCharacter psi1 = make_additive_character(f3(), 1);
        CHECK(epsilon_monomial(ind, psi1).exponent == 4);  // a + dim n(psi) = 2 + 2
        CHECK(epsilon0_monomial(ind, psi1).exponent == 4); // Sw + dim (n(psi)+1) = 0 + 4
    }
}

TEST_CASE("gamma over fields") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("the unramified closed form") {
        FractionResult g = gamma_field(unram_char(Rat(2), f3()), psi);
        SFraction expected = parse_fraction(g.ring, "(-6*X*(1 - 2*X))/(1 - 6*X)");
        CHECK(frac_equal(g.value, expected));
    }
    SUBCASE("tame ramified characters give epsilon times X") {
        FractionResult g = gamma_field(quad_char(Rat(1), f3()), psi);
        SFraction expected = parse_fraction(g.ring, "(z3 - z3^2)*X");
        CHECK(frac_equal(g.value, expected));
    }
    SUBCASE("gamma ignores the monodromy operator") {
        WDRep s = twist_unramified(sp(2, qq(), f3()), ring_from_int(qq(), 5));
        FractionResult with_n = gamma_field(s, psi);
        FractionResult without_n = gamma_field(s.rep, psi);
        CHECK(frac_equal_joined(with_n.value, without_n.value));
    }
    SUBCASE("gamma is invariant under Frobenius semisimplification") {
        RepGen gen(71);
        for (int t = 0; t < 4; ++t) {
            TameRep rep = gen.tame_with_coupling(f3(), 4, 2);
            FractionResult a = gamma_field(rep, psi);
            FractionResult b = gamma_field(frobenius_semisimplify(rep), psi);
            CHECK(frac_equal_joined(a.value, b.value));
        }
    }
    SUBCASE("gamma is multiplicative over direct sums") {
        RepGen gen(73);
        for (int t = 0; t < 4; ++t) {
            TameRep a = gen.tame_semisimple(f3(), 3, 2);
            TameRep b = gen.tame_semisimple(f3(), 3, 2);
            RingPtr big = cyclo_join(a.ring, b.ring);
            Hom ea = canonical_embed(a.ring, big);
            Hom eb = canonical_embed(b.ring, big);
            TameRep a2 = mk_tame(big, f3(), mat_specialize(ea, a.phi), mat_specialize(ea, a.sigma));
            TameRep b2 = mk_tame(big, f3(), mat_specialize(eb, b.phi), mat_specialize(eb, b.sigma));
            FractionResult gs = gamma_field(direct_sum(a2, b2), psi);
            FractionResult g1 = gamma_field(a2, psi);
            FractionResult g2 = gamma_field(b2, psi);
            RingPtr common = cyclo_join(cyclo_join(gs.ring, g1.ring), g2.ring);
            SFraction lhs = frac_specialize(canonical_embed(gs.ring, common), gs.value);
            SFraction rhs = frac_mul(frac_specialize(canonical_embed(g1.ring, common), g1.value),
                                     frac_specialize(canonical_embed(g2.ring, common), g2.value));
            CHECK(frac_equal(lhs, rhs));
        }
    }
    SUBCASE("gamma of a block-triangular representation equals the diagonal part") {
        RepGen gen(79);
        for (int t = 0; t < 4; ++t) {
            TameRep a = gen.tame_semisimple(f3(), 2, 2);
            TameRep b = gen.tame_semisimple(f3(), 2, 2);
            if (!ring_equal(a.ring, b.ring)) continue;
            TameRep joined = gen.triangular_join(a, b);
            FractionResult g1 = gamma_field(joined, psi);
            FractionResult g2 = gamma_field(direct_sum(a, b), psi);
            CHECK(frac_equal_joined(g1.value, g2.value));
        }
    }
}

TEST_CASE("degree-zero inductivity") {
    AdditiveCharacter psi = make_additive_character(f3());
    RepGen gen(83);
    for (long d = 2; d <= 4; ++d) {
        for (int t = 0; t < 3; ++t) {
            long m = 1;
            for (long i = 0; i < d; ++i) m *= 3;
            m -= 1;
            long j = gen.pick(1, m - 1);
            RingPtr ring = make_cyclotomic(m);
            Value u = ring_from_rat(ring, gen.unit_rational());
            TameCharacter xi = make_tame_character(ring, f3(), d, u, j);
            TameCharacter one_e = make_tame_character(ring, f3(), d, ring_one(ring), 0);

            TameRep ind_xi = induct_unramified(character_rep(xi));
            TameRep ind_one = induct_unramified(character_rep(one_e));

            // epsilon ratio
            MonomialResult e_ind_xi = epsilon_monomial(ind_xi, psi);
            MonomialResult e_ind_one = epsilon_monomial(ind_one, psi);
            ScalarResult e_xi = epsilon_character(xi, psi);
            TameCharacter one_chi = make_tame_character(ring, f3(), d, ring_one(ring), 0);
            ScalarResult e_one = epsilon_character(one_chi, psi);
            RingPtr common = cyclo_join(cyclo_join(e_ind_xi.ring, e_xi.ring),
                                        cyclo_join(e_ind_one.ring, e_one.ring));
            Value lhs = ring_mul(into_ring(e_ind_xi.constant, common),
                                 inverse(into_ring(e_ind_one.constant, common)));
            Value rhs = ring_mul(into_ring(e_xi.value, common), inverse(into_ring(e_one.value, common)));
            CHECK(lhs == rhs);
            CHECK(e_ind_xi.exponent - e_ind_one.exponent == d * 1);

            // gamma ratio, with X -> X^d on the extension side
            FractionResult g_ind_xi = gamma_field(ind_xi, psi);
            FractionResult g_ind_one = gamma_field(ind_one, psi);
            FractionResult g_xi = gamma_field(character_rep(xi), psi);
            FractionResult g_one = gamma_field(character_rep(one_chi), psi);
            RingPtr c2 = cyclo_join(cyclo_join(g_ind_xi.ring, g_xi.ring),
                                    cyclo_join(g_ind_one.ring, g_one.ring));
            SFraction lhs_g =
                frac_mul(frac_specialize(canonical_embed(g_ind_xi.ring, c2), g_ind_xi.value),
                         frac_invert(frac_specialize(canonical_embed(g_ind_one.ring, c2), g_ind_one.value)));
            SFraction exi = frac_specialize(canonical_embed(g_xi.ring, c2), g_xi.value);
            SFraction eone = frac_specialize(canonical_embed(g_one.ring, c2), g_one.value);
            SFraction ratio = frac_mul(exi, frac_invert(eone));
            SFraction rhs_g = mk_fraction(lp_subst_power(ratio.num, d), lp_subst_power(ratio.den, d));
            CHECK(frac_equal(lhs_g, rhs_g));
        }
    }
}

TEST_CASE("the determinant identity of the duality lemma") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("zero monodromy") {
        RepGen gen(89);
        for (int t = 0; t < 5; ++t) {
            TameRep rep = gen.tame_semisimple(f3(), 4, 2);
            CHECK(lemma45_check(wd_from_tame(rep)));
        }
    }
    SUBCASE("special representations") {
        CHECK(lemma45_check(sp(2, qq(), f3())));
        WDRep s3 = twist_unramified(sp(3, qq(), f3()), ring_from_int(qq(), 5));
        CHECK(lemma45_check(s3));
    }
    SUBCASE("random Weil-Deligne inputs") {
        RepGen gen(97);
        for (int t = 0; t < 6; ++t) {
            WDRep w = gen.wd_rep(f3(), 5);
            CHECK(lemma45_check(frobenius_semisimplify(w)));
        }
    }
    (void)psi;
}

TEST_CASE("local factors cross-check") {
    AdditiveCharacter psi = make_additive_character(f3());
    RepGen gen(101);
    for (int t = 0; t < 4; ++t) {
        WDRep w = gen.wd_rep(f3(), 4);
        LocalFactorsResult lf = compute_local_factors(w, psi);
        CHECK(!lp_is_zero(lf.gamma.value.num));
    }
}

TEST_CASE("epsilon0 reduction mod ell") {
    AdditiveCharacter psi = make_additive_character(f3());
    SUBCASE("unramified character reduces coefficientwise") {
        TameRep rep = unram_char(Rat(4), f3());
        Hom red = Hom::rationals_to(make_finite_field(7, 1));
        ReductionResult r = epsilon0_reduce_mod_ell(rep, psi, red);
        CHECK(r.value == ring_from_int(r.ring, 3)); // -4 mod 7
    }
    SUBCASE("the quadratic character lands on 5 in F_7") {
        TameRep rep = quad_char(Rat(1), f3());
        Hom red = Hom::rationals_to(make_finite_field(7, 1));
        ReductionResult r = epsilon0_reduce_mod_ell(rep, psi, red);
        // zeta3 -> 2, so zeta3 - zeta3^2 -> 2 - 4 = -2 = 5
        CHECK(ring_equal(r.ring, make_finite_field(7, 1)));
        CHECK(r.value == ring_from_int(r.ring, 5));
    }
    SUBCASE("reduction is multiplicative over direct sums") {
        TameRep a = unram_char(Rat(4), f3());
        TameRep b = quad_char(Rat(2), f3());
        TameRep s = direct_sum(a, b);
        Hom red = Hom::rationals_to(make_finite_field(7, 1));
        ReductionResult rs = epsilon0_reduce_mod_ell(s, psi, red);
        ReductionResult ra = epsilon0_reduce_mod_ell(a, psi, red);
        ReductionResult rb = epsilon0_reduce_mod_ell(b, psi, red);
        REQUIRE(ring_equal(rs.ring, ra.ring));
        REQUIRE(ring_equal(rs.ring, rb.ring));
        CHECK(rs.value == ring_mul(ra.value, rb.value));
    }
    SUBCASE("a denominator at the prime is rejected") {
        TameRep rep = unram_char(Rat(1, 7), f3());
        Hom red = Hom::rationals_to(make_finite_field(7, 1));
        try {
            epsilon0_reduce_mod_ell(rep, psi, red);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::BadPrimeChoice);
        }
    }
}
