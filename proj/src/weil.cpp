#include "weilgamma/weil.hpp"

#include "weilgamma/errors.hpp"
#include "weilgamma/vpoly.hpp"

#include <cstdlib>

namespace weilgamma {

LocalField make_local_field(long p, long f, long ell) {
    if (!is_prime_long(p)) fail(ErrorKind::CompositeModulusPrime, "p = " + std::to_string(p) + " is not prime");
    if (!is_prime_long(ell)) fail(ErrorKind::CompositeModulusPrime, "ell = " + std::to_string(ell) + " is not prime");
    if (ell == p) fail(ErrorKind::UnsupportedRing, "ell must differ from p");
    if (f <= 0) fail(ErrorKind::UnsupportedRing, "residue degree must be positive");
    LocalField F{p, f, ell, 1};
    for (long i = 0; i < f; ++i) F.q *= p;
    return F;
}

long TameRep::rel_q() const {
    long v = 1;
    for (long i = 0; i < ext_degree; ++i) v *= field.q;
    return v;
}

long sigma_order_search_bound() {
    static long bound = [] {
        const char* env = std::getenv("WEILGAMMA_ORDER_BOUND");
        if (env) {
            long v = std::atol(env);
            if (v > 0) return v;
        }
        return 1000000L;
    }();
    return bound;
}

TameRep mk_tame(RingPtr ring, LocalField field, Matrix phi, Matrix sigma, long ext_degree) {
    if (phi.rows != phi.cols || sigma.rows != sigma.cols || phi.rows != sigma.rows)
        fail(ErrorKind::DescriptorMismatch, "Phi and Sigma must be square of equal size");
    if (!ring_equal(phi.ring, ring) || !ring_equal(sigma.ring, ring))
        fail(ErrorKind::DescriptorMismatch, "matrices not over the stated ring");
    if (ext_degree < 1) fail(ErrorKind::DescriptorMismatch, "ext_degree must be positive");

    TameRep rep{std::move(ring), field, ext_degree, std::move(phi), std::move(sigma), 1};

    // Phi Sigma = Sigma^(q^d) Phi
    long qd = rep.rel_q();
    Matrix lhs = mat_mul(rep.phi, rep.sigma);
    Matrix rhs = mat_mul(mat_pow(rep.sigma, qd), rep.phi);
    if (!mat_eq(lhs, rhs))
        fail(ErrorKind::RelationViolated, "Phi Sigma Phi^-1 != Sigma^q");

    // Sigma has finite order found by bounded powering
    long bound = sigma_order_search_bound();
    Matrix id = mat_identity(rep.ring, rep.dim());
    Matrix s = rep.sigma;
    long order = 1;
    while (!mat_eq(s, id)) {
        s = mat_mul(s, rep.sigma);
        ++order;
        if (order > bound) fail(ErrorKind::NotFiniteOrder, "Sigma order exceeds search bound");
    }
    if (order % field.p == 0)
        fail(ErrorKind::OrderDivisibleByP, "Sigma has order divisible by p");
    rep.sigma_order = order;

    // Phi must be invertible (a regular determinant is accepted over provable
    // domains; localizing at it is harmless there)
    Value d = mat_det(rep.phi);
    if (!is_unit(d) && !(is_integral_domain_shape(rep.ring) && !is_zero(d)))
        fail(ErrorKind::NotAUnit, "det(Phi) = " + to_string(d) + " is not invertible");
    return rep;
}

WDRep mk_wd(TameRep rep, Matrix n) {
    if (n.rows != rep.dim() || n.cols != rep.dim() || !ring_equal(n.ring, rep.ring))
        fail(ErrorKind::DescriptorMismatch, "N must be square over the representation ring");
    Value q = ring_from_int(rep.ring, rep.rel_q());
    if (!is_unit(q)) fail(ErrorKind::QNotInvertible, "q is not invertible in the coefficient ring");
    Value qinv = inverse(q);
    if (!mat_eq(mat_mul(rep.sigma, n), mat_mul(n, rep.sigma)))
        fail(ErrorKind::RelationViolated, "Sigma N Sigma^-1 != N");
    if (!mat_eq(mat_mul(rep.phi, n), mat_scale(mat_mul(n, rep.phi), qinv)))
        fail(ErrorKind::RelationViolated, "Phi N Phi^-1 != q^-1 N");
    if (!mat_is_zero(mat_pow(n, rep.dim())))
        fail(ErrorKind::RelationViolated, "N is not nilpotent");
    return WDRep{std::move(rep), std::move(n)};
}

WDRep wd_from_tame(TameRep rep) {
    Matrix n = mat_zero(rep.ring, rep.dim(), rep.dim());
    return WDRep{std::move(rep), std::move(n)};
}

TameCharacter make_tame_character(RingPtr ring, LocalField field, long d, Value frob_value,
                                  long zeta_exponent) {
    if (d < 1) fail(ErrorKind::DescriptorMismatch, "extension degree must be positive");
    long qd = 1;
    for (long i = 0; i < d; ++i) qd *= field.q;
    long m = qd - 1;
    zeta_exponent = mod_floor(zeta_exponent, m);
    // zeta = zeta_{q^d-1}^j has exact order m/gcd(m, j); only those roots are needed
    long ord = zeta_exponent == 0 ? 1 : m / gcd_long(m, zeta_exponent);
    if (!has_root_of_unity(ring, ord))
        fail(ErrorKind::RootsUnavailable,
             "coefficient ring lacks the " + std::to_string(ord) + "-th roots of unity; enlarge it first");
    Value zeta = ring_pow(root_of_unity(ring, ord), zeta_exponent * ord / m);
    if (!is_unit(frob_value)) fail(ErrorKind::NotAUnit, "character value on Frobenius must be a unit");
    if (!is_one(ring_pow(zeta, m))) fail(ErrorKind::RelationViolated, "zeta^(q^d-1) != 1");
    return TameCharacter{std::move(ring), field, d, std::move(frob_value), zeta_exponent, std::move(zeta)};
}

TameRep character_rep(const TameCharacter& chi) {
    Matrix phi = mat_from(chi.ring, 1, 1, {chi.frob_value});
    Matrix sigma = mat_from(chi.ring, 1, 1, {chi.zeta});
    return mk_tame(chi.ring, chi.field, phi, sigma, chi.d);
}

TameRep direct_sum(const TameRep& a, const TameRep& b) {
    if (!ring_equal(a.ring, b.ring) || a.field.q != b.field.q || a.field.p != b.field.p ||
        a.ext_degree != b.ext_degree)
        fail(ErrorKind::DescriptorMismatch, "direct sum of representations over different data");
    return mk_tame(a.ring, a.field, mat_block_diag(a.phi, b.phi), mat_block_diag(a.sigma, b.sigma),
                   a.ext_degree);
}

WDRep direct_sum(const WDRep& a, const WDRep& b) {
    TameRep r = direct_sum(a.rep, b.rep);
    return mk_wd(std::move(r), mat_block_diag(a.n, b.n));
}

TameRep twist_unramified(const TameRep& a, const Value& u) {
    if (!is_unit(u) && !(is_integral_domain_shape(a.ring) && !is_zero(u)))
        fail(ErrorKind::NotAUnit, "twist requires an invertible scalar");
    return mk_tame(a.ring, a.field, mat_scale(a.phi, u), a.sigma, a.ext_degree);
}

WDRep twist_unramified(const WDRep& a, const Value& u) {
    return mk_wd(twist_unramified(a.rep, u), a.n);
}

TameRep dual(const TameRep& a) {
    Matrix phi_dual = mat_transpose(mat_inverse(a.phi));
    Matrix sigma_dual = mat_transpose(mat_inverse(a.sigma));
    return mk_tame(a.ring, a.field, std::move(phi_dual), std::move(sigma_dual), a.ext_degree);
}

WDRep dual(const WDRep& a) {
    return mk_wd(dual(a.rep), mat_neg(mat_transpose(a.n)));
}

WDRep sp(long n, const RingPtr& ring, const LocalField& field) {
    if (n < 1) fail(ErrorKind::DescriptorMismatch, "Sp(n) needs n >= 1");
    Value q = ring_from_int(ring, field.q);
    if (!is_unit(q)) fail(ErrorKind::QNotInvertible, "q is not invertible in the coefficient ring");
    Value qinv = inverse(q);
    Matrix phi = mat_zero(ring, n, n);
    Value cur = ring_one(ring);
    for (long i = 0; i < n; ++i) {
        phi.at(i, i) = cur;
        cur = ring_mul(cur, qinv);
    }
    Matrix sigma = mat_identity(ring, n);
    Matrix nil = mat_zero(ring, n, n);
    for (long i = 0; i + 1 < n; ++i) nil.at(i + 1, i) = ring_one(ring);
    return mk_wd(mk_tame(ring, field, std::move(phi), std::move(sigma)), std::move(nil));
}

TameRep induct_unramified(const TameRep& rep_over_ext) {
    const TameRep& e = rep_over_ext;
    long d = e.ext_degree;
    if (d == 1) return e;
    long n = e.dim();
    long q = e.field.q;
    const RingPtr& R = e.ring;

    // Sigma = blockdiag(Sigma_E, Sigma_E^q, ..., Sigma_E^(q^(d-1)))
    Matrix sigma = mat_zero(R, n * d, n * d);
    Matrix pow = e.sigma;
    for (long b = 0; b < d; ++b) {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) sigma.at(b * n + i, b * n + j) = pow.at(i, j);
        if (b + 1 < d) pow = mat_pow(pow, q);
    }

    Matrix phi = mat_zero(R, n * d, n * d);
    auto put_block = [&](long bi, long bj, const Matrix& blk) {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) phi.at(bi * n + i, bj * n + j) = blk.at(i, j);
    };
    Matrix id = mat_identity(R, n);
    if (n == 1) {
        // character shape of Lemma 6.2: Phi_E sits above the diagonal
        put_block(0, 1, e.phi);
        for (long b = 2; b < d; ++b) put_block(b - 1, b, id);
        put_block(d - 1, 0, id);
    } else {
        for (long b = 1; b < d; ++b) put_block(b - 1, b, id);
        put_block(d - 1, 0, e.phi);
    }
    return mk_tame(R, e.field, std::move(phi), std::move(sigma), 1);
}

InertiaInvariants inertia_invariants(const TameRep& a) {
    if (!is_field(a.ring))
        fail(ErrorKind::RingNotField, "inertia invariants need field coefficients");
    Matrix m = mat_sub(a.sigma, mat_identity(a.ring, a.dim()));
    Matrix basis = field_kernel_basis(m);
    if (basis.cols > 0) {
        // Phi stabilizes the invariants; solving checks membership
        (void)field_restrict(a.phi, basis);
    }
    return {basis, basis.cols};
}

namespace {

// additive Jordan--Chevalley semisimple part via the standard Newton iteration
Matrix semisimple_part(const Matrix& m) {
    const RingPtr& r = m.ring;
    VPoly f = charpoly_monic(m);
    VPoly fp = vp_derivative(r, f);
    VPoly g0 = vp_gcd(r, f, fp);
    if (g0.size() <= 1) return m; // squarefree characteristic polynomial
    VPoly g, rem;
    vp_divmod(r, f, g0, g, rem);
    if (!rem.empty()) fail(ErrorKind::UnsupportedRing, "charpoly squarefree division failed");
    VPoly gp = vp_derivative(r, g);
    Matrix a = m;
    long steps = 1;
    for (long k = m.rows; k > 0; k >>= 1) ++steps;
    for (long it = 0; it <= steps; ++it) {
        Matrix ga = vp_eval_matrix(g, a);
        if (mat_is_zero(ga)) return a;
        Matrix gpa_inv = mat_inverse(vp_eval_matrix(gp, a));
        a = mat_sub(a, mat_mul(ga, gpa_inv));
    }
    if (!mat_is_zero(vp_eval_matrix(g, a)))
        fail(ErrorKind::UnsupportedRing, "Jordan-Chevalley iteration did not converge");
    return a;
}

} // namespace

TameRep frobenius_semisimplify(const TameRep& a) {
    if (!is_field(a.ring) || !is_char_zero(a.ring))
        fail(ErrorKind::RingNotField, "semisimplification needs a characteristic-zero field");
    Matrix s = semisimple_part(a.phi);
    return mk_tame(a.ring, a.field, std::move(s), a.sigma, a.ext_degree);
}

WDRep frobenius_semisimplify(const WDRep& a) {
    return mk_wd(frobenius_semisimplify(a.rep), a.n);
}

long rank_of_idempotent(const Matrix& e) {
    if (e.rows != e.cols) fail(ErrorKind::DescriptorMismatch, "idempotent must be square");
    if (!mat_eq(mat_mul(e, e), e)) fail(ErrorKind::RelationViolated, "matrix is not idempotent");
    if (is_field(e.ring)) return field_rank(e);
    Value tr = mat_trace(e);
    long found = -1;
    for (long r = 0; r <= e.rows; ++r) {
        if (tr == ring_from_int(e.ring, r)) {
            if (found >= 0)
                fail(ErrorKind::NonIntegerTrace,
                     "trace matches several integer ranks; spectrum is disconnected");
            found = r;
        }
    }
    if (found < 0) fail(ErrorKind::NonIntegerTrace, "trace of idempotent is not an integer rank");
    return found;
}

IsotypicDecomposition isotypic_decompose(const TameRep& a, const Matrix& h) {
    if (!ring_equal(h.ring, a.ring) || h.rows != h.cols || h.rows != a.dim())
        fail(ErrorKind::DescriptorMismatch, "h must act on the representation space");
    // order of h
    long bound = sigma_order_search_bound();
    Matrix id = mat_identity(a.ring, a.dim());
    Matrix s = h;
    long m = 1;
    while (!mat_eq(s, id)) {
        s = mat_mul(s, h);
        ++m;
        if (m > bound) fail(ErrorKind::NotFiniteOrder, "h order exceeds search bound");
    }
    if (m % a.field.p == 0 || m % a.field.ell == 0)
        fail(ErrorKind::UnsupportedRing, "subgroup order must be prime to p and ell");
    if (!is_unit(ring_from_int(a.ring, m)))
        fail(ErrorKind::NotAUnit, "group order is not invertible in the coefficient ring");

    Enlargement en = adjoin_roots(a.ring, m);
    Matrix hh = mat_specialize(en.embed, h);
    Value zeta = root_of_unity(en.ring, m);
    Value minv = inverse(ring_from_int(en.ring, m));

    // powers of h
    std::vector<Matrix> hp;
    hp.push_back(mat_identity(en.ring, a.dim()));
    for (long i = 1; i < m; ++i) hp.push_back(mat_mul(hp.back(), hh));

    IsotypicDecomposition out{en.ring, en.embed, m, {}};
    Matrix sum = mat_zero(en.ring, a.dim(), a.dim());
    for (long j = 0; j < m; ++j) {
        Matrix acc = mat_zero(en.ring, a.dim(), a.dim());
        for (long i = 0; i < m; ++i) {
            Value w = ring_pow(zeta, mod_floor(-i * j, m));
            acc = mat_add(acc, mat_scale(hp[static_cast<size_t>(i)], w));
        }
        Matrix proj = mat_scale(acc, minv);
        long rank = rank_of_idempotent(proj);
        sum = mat_add(sum, proj);
        out.components.push_back({j, std::move(proj), rank});
    }
    if (!mat_eq(sum, mat_identity(en.ring, a.dim())))
        fail(ErrorKind::RelationViolated, "isotypic projectors do not sum to the identity");
    return out;
}

// --- break decomposition and conductors -------------------------------------------

namespace {

bool matrix_in_set(const Matrix& m, const std::vector<Matrix>& set) {
    for (const Matrix& g : set)
        if (mat_eq(g, m)) return true;
    return false;
}

void validate_group(const std::vector<Matrix>& g, const RingPtr& ring, long dim) {
    if (g.empty()) fail(ErrorKind::DescriptorMismatch, "filtration group is empty");
    for (const Matrix& x : g) {
        if (!ring_equal(x.ring, ring) || x.rows != dim || x.cols != dim)
            fail(ErrorKind::DescriptorMismatch, "filtration group matrix shape mismatch");
    }
    Matrix id = mat_identity(ring, dim);
    for (const Matrix& x : g) {
        bool has_inverse = false;
        for (const Matrix& y : g) {
            Matrix xy = mat_mul(x, y);
            if (!matrix_in_set(xy, g))
                fail(ErrorKind::DescriptorMismatch, "filtration set is not closed under multiplication");
            if (mat_eq(xy, id)) has_inverse = true;
        }
        if (!has_inverse)
            fail(ErrorKind::DescriptorMismatch, "filtration set is not closed under inversion");
    }
}

Matrix averaging_idempotent(const std::vector<Matrix>& g, const RingPtr& ring, long dim) {
    Value size = ring_from_int(ring, static_cast<long>(g.size()));
    if (!is_unit(size))
        fail(ErrorKind::NotAUnit, "group order " + std::to_string(g.size()) + " is not invertible");
    Matrix sum = mat_zero(ring, dim, dim);
    for (const Matrix& x : g) sum = mat_add(sum, x);
    return mat_scale(sum, inverse(size));
}

} // namespace

std::vector<BreakPart> break_decomposition(const RingPtr& ring, long dim, const Filtration& filt) {
    const auto& jumps = filt.jumps;
    for (size_t i = 0; i < jumps.size(); ++i) {
        if (jumps[i].v <= 0) fail(ErrorKind::DescriptorMismatch, "break values must be positive");
        if (i + 1 < jumps.size() && !(jumps[i].v < jumps[i + 1].v))
            fail(ErrorKind::DescriptorMismatch, "break values must be strictly increasing");
        validate_group(jumps[i].group, ring, dim);
    }
    // chain containment G_1 >= G_2 >= ...
    for (size_t i = 0; i + 1 < jumps.size(); ++i)
        for (const Matrix& g : jumps[i + 1].group)
            if (!matrix_in_set(g, jumps[i].group))
                fail(ErrorKind::DescriptorMismatch, "filtration groups are not nested");

    std::vector<BreakPart> parts;
    // e_i = averaging idempotent of G_i; e_{k+1} = I; rank at break v_i is
    // rank(e_{i+1}) - rank(e_i)
    std::vector<long> ranks;
    for (const auto& j : jumps)
        ranks.push_back(rank_of_idempotent(averaging_idempotent(j.group, ring, dim)));
    ranks.push_back(dim); // the identity idempotent
    for (size_t i = 0; i < jumps.size(); ++i) {
        long rk = ranks[i + 1] - ranks[i];
        if (rk < 0) fail(ErrorKind::NegativeBreakRank, "negative break rank");
        parts.push_back({jumps[i].v, rk});
    }
    return parts;
}

long swan_conductor(const RingPtr& ring, long dim, const Filtration& filt) {
    auto parts = break_decomposition(ring, dim, filt);
    Rat swan(0);
    for (const auto& p : parts) swan += p.v * Rat(p.rank);
    if (swan < 0) fail(ErrorKind::NegativeBreakRank, "negative Swan conductor");
    if (swan.get_den() != 1)
        fail(ErrorKind::NonIntegralSwan, "Swan conductor " + swan.get_str() + " is not an integer");
    return static_cast<long>(swan.get_num().get_si());
}

long artin_conductor(const TameRep& a, long wild_swan) {
    if (wild_swan < 0) fail(ErrorKind::DescriptorMismatch, "wild Swan part must be nonnegative");
    InertiaInvariants inv = inertia_invariants(a);
    return wild_swan + a.dim() - inv.dim;
}

} // namespace weilgamma
