#include "weilgamma/generators.hpp"

#include "weilgamma/errors.hpp"
#include "weilgamma/hom.hpp"

namespace weilgamma {

namespace {

long power_long(long b, long e) {
    long v = 1;
    for (long i = 0; i < e; ++i) v *= b;
    return v;
}

long orbit_size(long j, long q, long m) {
    long d = 1;
    long cur = mod_floor(j * q, m);
    while (cur != j) {
        cur = mod_floor(cur * q, m);
        ++d;
    }
    return d;
}

} // namespace

Rat RepGen::unit_rational() {
    static const long nums[] = {1, -1, 2, -2, 3, -3, 5, 1, -1, 2};
    static const long dens[] = {1, 1, 1, 1, 1, 1, 1, 2, 2, 3};
    long i = pick(0, 9);
    return make_rat(Int(nums[i]), Int(dens[i]));
}

std::vector<RepGen::BlockSpec> RepGen::blocks(const LocalField& field, long dim_max, long d_max) {
    long q = field.q;
    // keep the root-of-unity orders at desk scale
    std::vector<long> allowed_d;
    for (long d = 1; d <= d_max; ++d)
        if (power_long(q, d) - 1 <= 120) allowed_d.push_back(d);
    if (allowed_d.empty()) allowed_d.push_back(1);

    long dim = pick(1, dim_max);
    std::vector<BlockSpec> out;
    long remaining = dim;
    while (remaining > 0) {
        long d = allowed_d[static_cast<size_t>(pick(0, static_cast<long>(allowed_d.size()) - 1))];
        if (d > remaining) d = 1;
        long m = power_long(q, d) - 1;
        BlockSpec b;
        b.d = d;
        b.u = unit_rational();
        if (d == 1) {
            b.j = pick(0, m - 1);
        } else {
            // exponent whose Frobenius orbit has exact size d
            long j = 0;
            for (int tries = 0; tries < 64; ++tries) {
                long cand = pick(1, m - 1);
                if (orbit_size(cand, q, m) == d) {
                    j = cand;
                    break;
                }
            }
            if (j == 0) {
                d = 1;
                b.d = 1;
                long m1 = q - 1;
                b.j = pick(0, m1 - 1);
            } else {
                b.j = j;
            }
        }
        out.push_back(b);
        remaining -= b.d;
    }
    return out;
}

RingPtr RepGen::block_ring(const LocalField& field, const std::vector<BlockSpec>& specs) {
    long m_total = 1;
    for (const auto& b : specs) {
        long m = power_long(field.q, b.d) - 1;
        long ord = b.j == 0 ? 1 : m / gcd_long(m, b.j);
        m_total = lcm_long(m_total, ord);
    }
    return make_cyclotomic(std::max(m_total, 1L));
}

TameRep RepGen::realize(const LocalField& field, const std::vector<BlockSpec>& specs) {
    RingPtr ring = block_ring(field, specs);
    bool first = true;
    TameRep acc;
    for (const auto& b : specs) {
        TameCharacter chi =
            make_tame_character(ring, field, b.d, ring_from_rat(ring, b.u), b.j);
        TameRep block = induct_unramified(character_rep(chi));
        acc = first ? block : direct_sum(acc, block);
        first = false;
    }
    return acc;
}

TameRep RepGen::tame_semisimple(const LocalField& field, long dim_max, long d_max) {
    return realize(field, blocks(field, dim_max, d_max));
}

TameRep RepGen::tame_with_coupling(const LocalField& field, long dim_max, long d_max) {
    TameRep base = tame_semisimple(field, std::max(dim_max - 2, 1L), d_max);
    const RingPtr& R = base.ring;
    // two characters sharing the same zeta admit arbitrary coupling
    long m = field.q - 1;
    long j = pick(0, m - 1);
    TameCharacter c1 = make_tame_character(R, field, 1, ring_from_rat(R, unit_rational()), j);
    TameCharacter c2 = make_tame_character(R, field, 1, ring_from_rat(R, unit_rational()), j);
    long n = base.dim();
    Matrix phi = mat_zero(R, n + 2, n + 2);
    Matrix sigma = mat_zero(R, n + 2, n + 2);
    for (long i = 0; i < n; ++i)
        for (long k = 0; k < n; ++k) {
            phi.at(i, k) = base.phi.at(i, k);
            sigma.at(i, k) = base.sigma.at(i, k);
        }
    phi.at(n, n) = c1.frob_value;
    phi.at(n + 1, n + 1) = c2.frob_value;
    phi.at(n, n + 1) = ring_from_rat(R, unit_rational());
    sigma.at(n, n) = c1.zeta;
    sigma.at(n + 1, n + 1) = c2.zeta;
    return mk_tame(R, field, std::move(phi), std::move(sigma));
}

TameRep RepGen::triangular_join(const TameRep& top, const TameRep& bottom) {
    if (!ring_equal(top.ring, bottom.ring))
        fail(ErrorKind::DescriptorMismatch, "triangular join needs a common coefficient ring");
    const RingPtr& R = top.ring;
    long n1 = top.dim(), n2 = bottom.dim();
    long qd = top.rel_q();
    Matrix sigma = mat_block_diag(top.sigma, bottom.sigma);
    Matrix phi = mat_block_diag(top.phi, bottom.phi);
    // coupling entries are admissible where sigma_bottom(b) = sigma_top(a)^q;
    // both sigmas are diagonal for generated representations
    for (long a = 0; a < n1; ++a)
        for (long b = 0; b < n2; ++b) {
            Value lhs = ring_pow(top.sigma.at(a, a), qd);
            if (lhs == bottom.sigma.at(b, b) && pick(0, 2) == 0)
                phi.at(a, n1 + b) = ring_from_rat(R, unit_rational());
        }
    return mk_tame(R, top.field, std::move(phi), std::move(sigma), top.ext_degree);
}

WDRep RepGen::wd_rep(const LocalField& field, long dim_max) {
    long budget = pick(1, dim_max);
    long tame_dim = pick(0, budget);
    WDRep acc;
    bool first = true;
    RingPtr ring = make_rationals();
    if (tame_dim > 0) {
        TameRep t = tame_semisimple(field, tame_dim, 2);
        ring = t.ring;
        budget -= t.dim();
        acc = wd_from_tame(std::move(t));
        first = false;
    }
    while (budget > 0) {
        long k = pick(1, std::min(budget, 4L));
        WDRep piece = twist_unramified(sp(k, ring, field), ring_from_rat(ring, unit_rational()));
        acc = first ? piece : direct_sum(acc, piece);
        budget -= k;
        first = false;
    }
    return acc;
}

} // namespace weilgamma
