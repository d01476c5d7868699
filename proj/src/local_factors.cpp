#include "weilgamma/local_factors.hpp"

#include "weilgamma/errors.hpp"
#include "weilgamma/vpoly.hpp"

#include <map>
#include <mutex>

namespace weilgamma {

namespace {

long power_long(long b, long e) {
    long v = 1;
    for (long i = 0; i < e; ++i) v *= b;
    return v;
}

// distinguished zeta_m inside Q(zeta_M) as a signed monomial sign * zeta_M^e
std::pair<long, long> root_monomial(long M, long m) {
    if (m == 1) return {1, 0};
    if (m == 2) return {-1, 0};
    if (M % m == 0) return {1, M / m};
    if (m % 2 == 0 && (m / 2) % 2 == 1 && M % (m / 2) == 0) {
        long k = m / 2;
        return {-1, mod_floor((M / k) * ((k + 1) / 2), M)};
    }
    fail(ErrorKind::RootsUnavailable, "zeta_" + std::to_string(m) + " not in Q(zeta_" + std::to_string(M) + ")");
}

} // namespace

const std::vector<long>& residue_character_table(long p, long fd) {
    static std::mutex mtx;
    static std::map<std::pair<long, long>, std::vector<long>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, fd);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    RingPtr F = make_finite_field(p, fd);
    Value g = ff_generator(F);
    long Q = power_long(p, fd);
    std::vector<long> table;
    table.reserve(static_cast<size_t>(Q - 1));
    Value x = ring_one(F);
    for (long k = 0; k < Q - 1; ++k) {
        // absolute trace of x
        Value acc = x;
        Value y = x;
        for (long i = 1; i < fd; ++i) {
            y = ring_pow(y, p);
            acc = ring_add(acc, y);
        }
        const auto& c = value_int_coeffs(acc);
        if (c.size() > 1) fail(ErrorKind::UnsupportedRing, "trace did not land in the prime field");
        table.push_back(c.empty() ? 0 : c[0].get_si());
        x = ring_mul(x, g);
    }
    // fibers of the trace all have size Q/p; this certifies nontriviality
    std::vector<long> freq(static_cast<size_t>(p), 0);
    freq[0] = 1; // the zero element
    for (long t : table) ++freq[static_cast<size_t>(t)];
    for (long t = 0; t < p; ++t)
        if (freq[static_cast<size_t>(t)] != Q / p)
            fail(ErrorKind::UnsupportedRing, "residue character is degenerate");
    auto [pos, inserted] = cache.emplace(key, std::move(table));
    (void)inserted;
    return pos->second;
}

AdditiveCharacter make_additive_character(const LocalField& field, long level) {
    (void)residue_character_table(field.p, field.f);
    return {field, level};
}

ScalarResult gauss_sum(long p, long fd, long chi_exponent) {
    static std::mutex mtx;
    static std::map<std::tuple<long, long, long>, ScalarResult> cache;
    long m1 = power_long(p, fd) - 1;
    long j = mod_floor(chi_exponent, m1);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({p, fd, j});
        if (it != cache.end()) return it->second;
    }

    RingPtr ring = make_cyclotomic(p * m1);
    long M = ring->m;
    auto [sa, ea] = root_monomial(M, m1);
    auto [sb, eb] = root_monomial(M, p); // p odd prime: sb = 1
    const auto& trace = residue_character_table(p, fd);

    // counts of signed monomials zeta_M^e
    std::vector<long> cnt(static_cast<size_t>(M), 0);
    for (long k = 0; k < m1; ++k) {
        long t1 = mod_floor(-j * k, m1); // chibar^{-1}(g^k) = zeta_{m1}^{t1}
        long t2 = trace[static_cast<size_t>(k)];
        long e = mod_floor(ea * t1 + eb * t2, M);
        long sign = 1;
        if (sa < 0 && t1 % 2 == 1) sign = -sign;
        if (sb < 0 && t2 % 2 == 1) sign = -sign;
        cnt[static_cast<size_t>(e)] += sign;
    }
    Value zeta = root_of_unity(ring, M);
    Value zpow = ring_one(ring);
    Value sum = ring_zero(ring);
    for (long e = 0; e < M; ++e) {
        if (cnt[static_cast<size_t>(e)] != 0)
            sum = ring_add(sum, ring_mul(ring_from_int(ring, cnt[static_cast<size_t>(e)]), zpow));
        zpow = ring_mul(zpow, zeta);
    }
    ScalarResult out{ring, sum};
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(std::make_tuple(p, fd, j), out);
    return out;
}

ScalarResult epsilon_character(const TameCharacter& chi, const AdditiveCharacter& psi) {
    if (psi.level != 0)
        fail(ErrorKind::LevelUnsupported, "epsilon of a character is implemented at level 0 only");
    if (chi.zeta_exponent == 0) return {chi.ring, ring_one(chi.ring)};
    ScalarResult g = gauss_sum(chi.field.p, chi.field.f * chi.d, chi.zeta_exponent);
    Enlargement en = adjoin_roots(chi.ring, g.ring->m);
    Value u = en.embed(chi.frob_value);
    Value gv = into_ring(g.value, en.ring);
    return {en.ring, ring_mul(u, gv)};
}

// --- spectral data ------------------------------------------------------------------

SpectralData tame_spectral_data(const TameRep& a) {
    if (!is_char_zero(a.ring) || !is_integral_domain_shape(a.ring))
        fail(ErrorKind::UnsupportedRing,
             "spectral decomposition needs a characteristic-zero domain, got " + a.ring->signature);
    long N = a.sigma_order;
    Enlargement en = adjoin_roots(a.ring, N);
    SpectralData sd{en.ring, en.embed, mat_specialize(en.embed, a.phi),
                    mat_specialize(en.embed, a.sigma), N, {}};
    const RingPtr& R = en.ring;
    long n = a.dim();
    bool field = is_field(R);

    Value zeta = root_of_unity(R, N);
    std::vector<Value> zpow(static_cast<size_t>(N));
    zpow[0] = ring_one(R);
    for (long k = 1; k < N; ++k) zpow[static_cast<size_t>(k)] = ring_mul(zpow[static_cast<size_t>(k - 1)], zeta);

    VPoly cp = charpoly_monic(sd.sigma);
    std::vector<long> eigen;
    for (long k = 0; k < N; ++k)
        if (is_zero(vp_eval(R, cp, zpow[static_cast<size_t>(k)]))) eigen.push_back(k);
    if (eigen.empty()) fail(ErrorKind::UnsupportedRing, "no eigenvalues found for Sigma");

    // the distinct-eigenvalue product must kill Sigma
    Matrix id = mat_identity(R, n);
    Matrix kill = id;
    for (long k : eigen)
        kill = mat_mul(kill, mat_sub(sd.sigma, mat_scalar(R, n, zpow[static_cast<size_t>(k)])));
    if (!mat_is_zero(kill))
        fail(ErrorKind::UnsupportedRing, "Sigma is not split semisimple over the base domain");

    long q_eff = a.rel_q();
    std::vector<bool> seen(static_cast<size_t>(N), false);
    long total = 0;
    for (long k : eigen) {
        if (seen[static_cast<size_t>(k)]) continue;
        // orbit of k under multiplication by q
        std::vector<long> orbit;
        long cur = k;
        do {
            orbit.push_back(cur);
            seen[static_cast<size_t>(cur)] = true;
            cur = mod_floor(cur * q_eff, N);
        } while (cur != k);
        for (long o : orbit) {
            bool present = false;
            for (long e : eigen) present = present || e == o;
            if (!present)
                fail(ErrorKind::RelationViolated, "Sigma eigenvalues are not stable under the q-power map");
        }

        SpectralOrbit so;
        so.rep_exponent = k;
        so.zeta_order = k == 0 ? 1 : N / gcd_long(N, k);
        so.d = static_cast<long>(orbit.size());
        so.orbit_exponents = orbit;

        // Lagrange projector onto the representative eigenspace
        Matrix proj = id;
        for (long t : eigen) {
            if (t == k) continue;
            Value denom = ring_sub(zpow[static_cast<size_t>(k)], zpow[static_cast<size_t>(t)]);
            Matrix factor = mat_sub(sd.sigma, mat_scalar(R, n, zpow[static_cast<size_t>(t)]));
            proj = mat_mul(proj, mat_scale(factor, inverse(denom)));
        }
        so.projector = proj;
        so.rank = rank_of_idempotent(proj);
        total += so.rank * so.d;

        if (field) {
            // greedily pick independent columns of the projector as a basis
            Matrix acc = mat_zero(R, n, 0);
            long col = 0;
            for (long j2 = 0; j2 < n && col < so.rank; ++j2) {
                Matrix cand = mat_zero(R, n, col + 1);
                for (long i = 0; i < n; ++i) {
                    for (long c2 = 0; c2 < col; ++c2) cand.at(i, c2) = acc.at(i, c2);
                    cand.at(i, col) = proj.at(i, j2);
                }
                if (field_rank(cand) == col + 1) {
                    acc = std::move(cand);
                    ++col;
                }
            }
            so.basis = acc;
            Matrix phid = mat_pow(sd.phi, so.d);
            so.restricted = acc.cols > 0 ? field_restrict(phid, acc) : mat_zero(R, 0, 0);
        }
        sd.orbits.push_back(std::move(so));
    }
    if (total != n) fail(ErrorKind::RelationViolated, "eigenspace ranks do not fill the space");
    return sd;
}

// --- epsilon_0 -----------------------------------------------------------------------

ScalarResult epsilon0_semisimple(const TameRep& a, const AdditiveCharacter& psi) {
    SpectralData sd = tame_spectral_data(a);
    const RingPtr& R0 = sd.ring;
    long q_eff = a.rel_q();
    long feff = a.field.f * a.ext_degree;
    long n = a.dim();

    // cyclotomic orders needed for the Gauss sums
    long extra = 1;
    for (const auto& o : sd.orbits) {
        if (o.rep_exponent == 0) continue;
        long m1 = power_long(q_eff, o.d) - 1;
        extra = lcm_long(extra, a.field.p * m1);
    }
    Enlargement big = adjoin_roots(R0, extra);
    const RingPtr& R = big.ring;

    Value result = ring_one(R);
    Matrix id = mat_identity(R0, n);
    for (const auto& o : sd.orbits) {
        if (o.rank == 0) continue;
        if (o.rep_exponent == 0) {
            // unramified block: det(-Phi | V_1)
            Matrix A = mat_add(mat_mul(mat_neg(sd.phi), o.projector), mat_sub(id, o.projector));
            result = ring_mul(result, big.embed(mat_det(A)));
        } else {
            // det(Phi^d | V_zeta) * g(chibar_zeta, psibar_d)^rank
            Matrix phid = mat_pow(sd.phi, o.d);
            Matrix A = mat_add(mat_mul(phid, o.projector), mat_sub(id, o.projector));
            Value det_block = big.embed(mat_det(A));
            long m1 = power_long(q_eff, o.d) - 1;
            long e = o.zeta_order;
            long t = o.rep_exponent * e / sd.sigma_order; // zeta = zeta_e^t
            long j = mod_floor(t * (m1 / e), m1);
            ScalarResult g = gauss_sum(a.field.p, feff * o.d, j);
            Value gv = into_ring(g.value, R);
            result = ring_mul(result, ring_mul(det_block, ring_pow(gv, o.rank)));
        }
    }

    if (psi.level != 0) {
        // transformation to level n: multiply by det(Phi)^-n q^(n dim)
        Value det_phi = big.embed(mat_det(sd.phi));
        Value twist = ring_mul(ring_pow(det_phi, -psi.level),
                               ring_pow(ring_from_int(R, q_eff), psi.level * n));
        result = ring_mul(result, twist);
    }
    return {R, result};
}

ScalarResult epsilon0_field(const TameRep& a, const AdditiveCharacter& psi) {
    if (!is_field(a.ring) || !is_char_zero(a.ring))
        fail(ErrorKind::RingNotField, "epsilon0_field needs characteristic-zero field coefficients");
    if (psi.level != 0) fail(ErrorKind::LevelUnsupported, "epsilon0_field is defined at level 0");
    return epsilon0_semisimple(a, psi);
}

// --- L factors -----------------------------------------------------------------------

namespace {

void require_field_not_p(const TameRep& a, const char* what) {
    if (!is_field(a.ring)) fail(ErrorKind::RingNotField, std::string(what) + " needs field coefficients");
    if (a.ring->kind == RingKind::FiniteField && a.ring->ell == a.field.p)
        fail(ErrorKind::UnsupportedRing, "coefficient characteristic equals p");
}

// basis of ker(Sigma - I), optionally intersected with ker N
Matrix invariants_basis(const TameRep& a, const Matrix* n_op) {
    Matrix m = mat_sub(a.sigma, mat_identity(a.ring, a.dim()));
    if (n_op) {
        Matrix stack = mat_zero(a.ring, 2 * a.dim(), a.dim());
        for (long i = 0; i < a.dim(); ++i)
            for (long j = 0; j < a.dim(); ++j) {
                stack.at(i, j) = m.at(i, j);
                stack.at(a.dim() + i, j) = n_op->at(i, j);
            }
        return field_kernel_basis(stack);
    }
    return field_kernel_basis(m);
}

LaurentPoly invariants_char_rev(const TameRep& a, const Matrix* n_op) {
    Matrix basis = invariants_basis(a, n_op);
    if (basis.cols == 0) return lp_const(ring_one(a.ring));
    Matrix c = field_restrict(a.phi, basis);
    return char_rev(c);
}

Value restricted_det(const TameRep& a, const Matrix* n_op, long* out_dim) {
    Matrix basis = invariants_basis(a, n_op);
    if (out_dim) *out_dim = basis.cols;
    if (basis.cols == 0) return ring_one(a.ring);
    Matrix c = field_restrict(a.phi, basis);
    return mat_det(c);
}

} // namespace

SFraction l_factor(const TameRep& a) {
    require_field_not_p(a, "L factor");
    return mk_fraction(lp_const(ring_one(a.ring)), invariants_char_rev(a, nullptr));
}

SFraction l_factor(const WDRep& a) {
    require_field_not_p(a.rep, "L factor");
    return mk_fraction(lp_const(ring_one(a.rep.ring)), invariants_char_rev(a.rep, &a.n));
}

// --- epsilon monomials ------------------------------------------------------------

MonomialResult epsilon_monomial(const TameRep& a, const AdditiveCharacter& psi) {
    require_field_not_p(a, "epsilon");
    if (!is_char_zero(a.ring))
        fail(ErrorKind::RingNotField, "epsilon constants live in characteristic zero");
    ScalarResult e0 = epsilon0_semisimple(a, psi);
    long i1 = 0;
    Value det_inv = restricted_det(a, nullptr, &i1);
    // det(-Phi | r^I) = (-1)^i1 det(Phi | r^I)
    Value d = into_ring(i1 % 2 == 0 ? det_inv : ring_neg(det_inv), e0.ring);
    Value constant = ring_mul(e0.value, inverse(d));
    long artin = a.dim() - i1; // tame input: Swan = 0
    return {e0.ring, constant, artin + a.dim() * psi.level};
}

MonomialResult epsilon_monomial(const WDRep& a, const AdditiveCharacter& psi) {
    MonomialResult base = epsilon_monomial(a.rep, psi);
    long i1 = 0, i2 = 0;
    Value d1 = restricted_det(a.rep, nullptr, &i1);
    Value d2 = restricted_det(a.rep, &a.n, &i2);
    long delta = i1 - i2;
    // det(-Phi X | r^I / r_N^I) contributes (-1)^delta det1/det2 X^delta
    Value quot = ring_mul(d1, inverse(d2));
    if (delta % 2 != 0) quot = ring_neg(quot);
    return {base.ring, ring_mul(base.constant, into_ring(quot, base.ring)), base.exponent + delta};
}

MonomialResult epsilon0_monomial(const TameRep& a, const AdditiveCharacter& psi) {
    require_field_not_p(a, "epsilon0");
    if (!is_char_zero(a.ring))
        fail(ErrorKind::RingNotField, "use the reduction path for characteristic-ell coefficients");
    ScalarResult e0 = epsilon0_semisimple(a, psi);
    return {e0.ring, e0.value, a.dim() * (psi.level + 1)}; // Swan = 0 for tame input
}

// --- gamma -------------------------------------------------------------------------

FractionResult gamma_field(const WDRep& a, const AdditiveCharacter& psi) {
    MonomialResult em = epsilon_monomial(a, psi);
    Hom lift = canonical_embed(a.rep.ring, em.ring);
    LaurentPoly p1 = lp_specialize(lift, invariants_char_rev(a.rep, &a.n));
    WDRep dual_rep = dual(a);
    LaurentPoly p2 = lp_specialize(lift, invariants_char_rev(dual_rep.rep, &dual_rep.n));
    Value q = ring_from_int(em.ring, a.rep.rel_q());
    LaurentPoly den = lp_subst_inv_scale(p2, q);
    LaurentPoly num = lp_scale(lp_shift(p1, em.exponent), em.constant);
    return {em.ring, mk_fraction(std::move(num), std::move(den))};
}

FractionResult gamma_field(const TameRep& a, const AdditiveCharacter& psi) {
    return gamma_field(wd_from_tame(a), psi);
}

bool lemma45_check(const WDRep& a) {
    const RingPtr& R = a.rep.ring;
    require_field_not_p(a.rep, "lemma45");
    long i1 = 0, i2 = 0;
    Value d1 = restricted_det(a.rep, nullptr, &i1);
    Value d2 = restricted_det(a.rep, &a.n, &i2);
    long delta = i1 - i2;
    Value c = ring_mul(d1, inverse(d2));
    if (delta % 2 != 0) c = ring_neg(c);
    SFraction lhs = frac_from_laurent(lp_monomial(c, delta));

    WDRep dv = dual(a);
    Value q = ring_from_int(R, a.rep.rel_q());
    LaurentPoly p_full = invariants_char_rev(a.rep, nullptr);
    LaurentPoly p_full_dual = invariants_char_rev(dv.rep, nullptr);
    LaurentPoly p_n = invariants_char_rev(a.rep, &a.n);
    LaurentPoly p_n_dual = invariants_char_rev(dv.rep, &dv.n);
    // L(r,X) = 1/p_full, L(r_dual, 1/qX) = 1/p_full_dual(1/qX), etc.
    SFraction rhs = mk_fraction(lp_mul(p_full, lp_subst_inv_scale(p_n_dual, q)),
                                lp_mul(lp_subst_inv_scale(p_full_dual, q), p_n));
    return frac_equal(lhs, rhs);
}

LocalFactorsResult compute_local_factors(const WDRep& a, const AdditiveCharacter& psi) {
    LocalFactorsResult out;
    out.l = l_factor(a);
    out.eps = epsilon_monomial(a, psi);
    out.eps0 = epsilon0_monomial(a.rep, psi);
    out.gamma = gamma_field(a, psi);
    out.ring = out.gamma.ring;

    // cross-check: gamma = epsilon0(rho,X,psi) det(-Fr X | rho^I)^-1 L(dual,1/qX)/L,
    // where rho^I for the ell-adic representation attached to (r,N) is r_N^I
    Hom lift = canonical_embed(a.rep.ring, out.ring);
    long i1 = 0;
    Value d1 = restricted_det(a.rep, &a.n, &i1);
    Value c = i1 % 2 == 0 ? d1 : ring_neg(d1);
    LaurentPoly det_mono = lp_monomial(into_ring(c, out.ring), i1);
    WDRep dv = dual(a);
    Value q = ring_from_int(out.ring, a.rep.rel_q());
    LaurentPoly p1 = lp_specialize(lift, invariants_char_rev(a.rep, &a.n));
    LaurentPoly p2 = lp_specialize(lift, invariants_char_rev(dv.rep, &dv.n));
    Value eps0c = into_ring(out.eps0.constant, out.ring);
    SFraction via_eps0 = mk_fraction(lp_scale(lp_shift(p1, out.eps0.exponent), eps0c),
                                     lp_mul(det_mono, lp_subst_inv_scale(p2, q)));
    if (!frac_equal(out.gamma.value, via_eps0))
        fail(ErrorKind::RelationViolated, "gamma cross-check against the epsilon0 route failed");
    return out;
}

// --- reduction mod ell ---------------------------------------------------------------

ReductionResult epsilon0_reduce_mod_ell(const TameRep& a, const AdditiveCharacter& psi,
                                        const Hom& reduction) {
    if (!ring_equal(reduction.source(), a.ring))
        fail(ErrorKind::BadPrimeChoice, "reduction does not start at the coefficient ring");
    if (a.ring->kind != RingKind::Rationals && a.ring->kind != RingKind::Cyclotomic)
        fail(ErrorKind::UnsupportedRing, "reduction path expects a cyclotomic-integers layer");
    auto target_chars = residue_characteristics(reduction.target());
    if (target_chars.empty())
        fail(ErrorKind::BadPrimeChoice, "reduction target must have positive characteristic");
    for (long ell : target_chars)
        if (ell == a.field.p) fail(ErrorKind::BadPrimeChoice, "residue characteristic equals p");

    ScalarResult e0 = epsilon0_semisimple(a, psi);
    long M = e0.ring->kind == RingKind::Cyclotomic ? e0.ring->m : 1;
    HomExtension ext = extend_hom_cyclotomic(reduction, M);
    if (!ring_equal(ext.extended.source(), e0.ring))
        fail(ErrorKind::BadPrimeChoice, "enlargement mismatch between epsilon0 and the reduction");
    try {
        Value v = ext.extended(e0.value);
        return {ext.extended.target(), ext.extended, v};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotAUnit)
            fail(ErrorKind::BadPrimeChoice,
                 std::string("epsilon0 is not integral at the chosen prime: ") + e.what());
        throw;
    }
}

} // namespace weilgamma
