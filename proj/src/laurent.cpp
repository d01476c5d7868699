#include "weilgamma/laurent.hpp"

#include "weilgamma/errors.hpp"

namespace weilgamma {

namespace {

void lp_trim(LaurentPoly& a) {
    size_t lead = 0;
    while (lead < a.coeffs.size() && is_zero(a.coeffs[lead])) ++lead;
    if (lead == a.coeffs.size()) {
        a.coeffs.clear();
        a.min_exp = 0;
        return;
    }
    size_t tail = a.coeffs.size();
    while (tail > lead && is_zero(a.coeffs[tail - 1])) --tail;
    if (lead > 0 || tail < a.coeffs.size()) {
        std::vector<Value> kept(a.coeffs.begin() + static_cast<long>(lead),
                                a.coeffs.begin() + static_cast<long>(tail));
        a.coeffs = std::move(kept);
        a.min_exp += static_cast<long>(lead);
    }
}

void require_same_ring(const LaurentPoly& a, const LaurentPoly& b, const char* op) {
    if (!ring_equal(a.ring, b.ring))
        fail(ErrorKind::DescriptorMismatch, std::string(op) + " over distinct rings");
}

// denominator admissibility; see the SFraction comment in the header
void require_in_S(const LaurentPoly& a, ErrorKind err, const char* what) {
    if (lp_is_zero(a)) fail(err, std::string(what) + " is zero");
    bool relaxed = is_integral_domain_shape(a.ring);
    if (!relaxed) {
        if (!is_unit(lp_lowest(a)))
            fail(err, std::string(what) + ": lowest coefficient " + to_string(lp_lowest(a)) + " is not a unit");
        if (!is_unit(lp_highest(a)))
            fail(err, std::string(what) + ": highest coefficient " + to_string(lp_highest(a)) + " is not a unit");
    }
    // trimming already guarantees nonzero extremes in the relaxed case
}

} // namespace

LaurentPoly lp_zero(const RingPtr& r) { return {r, 0, {}}; }

LaurentPoly lp_const(const Value& v) {
    LaurentPoly p{v.ring(), 0, {v}};
    lp_trim(p);
    return p;
}

LaurentPoly lp_monomial(const Value& v, long e) {
    LaurentPoly p{v.ring(), e, {v}};
    lp_trim(p);
    return p;
}

LaurentPoly lp_x(const RingPtr& r) { return lp_monomial(ring_one(r), 1); }

LaurentPoly lp_from_coeffs(const RingPtr& r, long min_exp, std::vector<Value> coeffs) {
    LaurentPoly p{r, min_exp, std::move(coeffs)};
    lp_trim(p);
    return p;
}

bool lp_is_zero(const LaurentPoly& a) { return a.coeffs.empty(); }

bool lp_is_one(const LaurentPoly& a) {
    return a.coeffs.size() == 1 && a.min_exp == 0 && is_one(a.coeffs[0]);
}

bool lp_eq(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_ring(a, b, "lp_eq");
    if (a.min_exp != b.min_exp || a.coeffs.size() != b.coeffs.size()) return false;
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (!(a.coeffs[i] == b.coeffs[i])) return false;
    return true;
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_ring(a, b, "lp_add");
    if (lp_is_zero(a)) return b;
    if (lp_is_zero(b)) return a;
    long lo = std::min(a.min_exp, b.min_exp);
    long hi = std::max(a.max_exp(), b.max_exp());
    std::vector<Value> c(static_cast<size_t>(hi - lo + 1), ring_zero(a.ring));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        c[static_cast<size_t>(a.min_exp - lo) + i] = a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) {
        size_t k = static_cast<size_t>(b.min_exp - lo) + i;
        c[k] = ring_add(c[k], b.coeffs[i]);
    }
    return lp_from_coeffs(a.ring, lo, std::move(c));
}

LaurentPoly lp_neg(const LaurentPoly& a) {
    LaurentPoly p = a;
    for (Value& v : p.coeffs) v = ring_neg(v);
    return p;
}

LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b) { return lp_add(a, lp_neg(b)); }

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_ring(a, b, "lp_mul");
    if (lp_is_zero(a) || lp_is_zero(b)) return lp_zero(a.ring);
    std::vector<Value> c(a.coeffs.size() + b.coeffs.size() - 1, ring_zero(a.ring));
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (is_zero(a.coeffs[i])) continue;
        for (size_t j = 0; j < b.coeffs.size(); ++j) {
            if (is_zero(b.coeffs[j])) continue;
            c[i + j] = ring_add(c[i + j], ring_mul(a.coeffs[i], b.coeffs[j]));
        }
    }
    return lp_from_coeffs(a.ring, a.min_exp + b.min_exp, std::move(c));
}

LaurentPoly lp_scale(const LaurentPoly& a, const Value& c) { return lp_mul(a, lp_const(c)); }

LaurentPoly lp_shift(const LaurentPoly& a, long e) {
    LaurentPoly p = a;
    if (!lp_is_zero(p)) p.min_exp += e;
    return p;
}

LaurentPoly lp_subst_power(const LaurentPoly& a, long d) {
    if (d < 1) fail(ErrorKind::UnsupportedRing, "lp_subst_power requires d >= 1");
    if (lp_is_zero(a)) return a;
    std::vector<Value> c(static_cast<size_t>((a.coeffs.size() - 1) * static_cast<size_t>(d) + 1),
                         ring_zero(a.ring));
    for (size_t i = 0; i < a.coeffs.size(); ++i) c[i * static_cast<size_t>(d)] = a.coeffs[i];
    return lp_from_coeffs(a.ring, a.min_exp * d, std::move(c));
}

LaurentPoly lp_subst_scale(const LaurentPoly& a, const Value& s) {
    LaurentPoly p = a;
    for (size_t i = 0; i < p.coeffs.size(); ++i) {
        long e = p.min_exp + static_cast<long>(i);
        p.coeffs[i] = ring_mul(p.coeffs[i], ring_pow(s, e));
    }
    lp_trim(p);
    return p;
}

LaurentPoly lp_subst_inv_scale(const LaurentPoly& a, const Value& q) {
    if (lp_is_zero(a)) return a;
    Value qinv = inverse(q);
    std::vector<Value> c(a.coeffs.size(), ring_zero(a.ring));
    // coefficient of X^e goes to q^-e X^-e
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        long e = a.min_exp + static_cast<long>(i);
        c[a.coeffs.size() - 1 - i] = ring_mul(a.coeffs[i], ring_pow(qinv, e));
    }
    return lp_from_coeffs(a.ring, -a.max_exp(), std::move(c));
}

LaurentPoly lp_specialize(const Hom& f, const LaurentPoly& a) {
    std::vector<Value> c;
    c.reserve(a.coeffs.size());
    for (const Value& v : a.coeffs) c.push_back(f(v));
    return lp_from_coeffs(f.target(), a.min_exp, std::move(c));
}

const Value& lp_lowest(const LaurentPoly& a) {
    if (lp_is_zero(a)) fail(ErrorKind::UnsupportedRing, "lowest coefficient of zero");
    return a.coeffs.front();
}

const Value& lp_highest(const LaurentPoly& a) {
    if (lp_is_zero(a)) fail(ErrorKind::UnsupportedRing, "highest coefficient of zero");
    return a.coeffs.back();
}

// --- fractions -------------------------------------------------------------------

SFraction mk_fraction(LaurentPoly num, LaurentPoly den) {
    require_same_ring(num, den, "mk_fraction");
    require_in_S(den, ErrorKind::DenominatorNotInS, "denominator");
    return {std::move(num), std::move(den)};
}

SFraction frac_one(const RingPtr& r) { return {lp_const(ring_one(r)), lp_const(ring_one(r))}; }
SFraction frac_zero(const RingPtr& r) { return {lp_zero(r), lp_const(ring_one(r))}; }

SFraction frac_from_laurent(LaurentPoly p) {
    RingPtr r = p.ring;
    return {std::move(p), lp_const(ring_one(r))};
}

SFraction frac_from_value(const Value& v) { return frac_from_laurent(lp_const(v)); }

bool frac_equal(const SFraction& a, const SFraction& b) {
    return lp_eq(lp_mul(a.num, b.den), lp_mul(b.num, a.den));
}

SFraction frac_add(const SFraction& a, const SFraction& b) {
    return mk_fraction(lp_add(lp_mul(a.num, b.den), lp_mul(b.num, a.den)), lp_mul(a.den, b.den));
}

SFraction frac_sub(const SFraction& a, const SFraction& b) { return frac_add(a, frac_neg(b)); }

SFraction frac_mul(const SFraction& a, const SFraction& b) {
    return mk_fraction(lp_mul(a.num, b.num), lp_mul(a.den, b.den));
}

SFraction frac_neg(const SFraction& a) { return {lp_neg(a.num), a.den}; }

SFraction frac_invert(const SFraction& a) {
    require_in_S(a.num, ErrorKind::NumeratorNotInS, "numerator");
    return {a.den, a.num};
}

SFraction frac_specialize(const Hom& f, const SFraction& a) {
    LaurentPoly num = lp_specialize(f, a.num);
    LaurentPoly den = lp_specialize(f, a.den);
    return mk_fraction(std::move(num), std::move(den));
}

// --- printing --------------------------------------------------------------------

std::string lp_to_string(const LaurentPoly& a) {
    if (lp_is_zero(a)) return "0";
    std::string out;
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (is_zero(a.coeffs[i])) continue;
        long e = a.min_exp + static_cast<long>(i);
        std::string c = to_string(a.coeffs[i]);
        std::string term;
        if (e == 0) {
            term = c.find(' ') != std::string::npos ? "(" + c + ")" : c;
        } else {
            std::string mono = e == 1 ? "X" : "X^" + std::to_string(e);
            if (c == "1")
                term = mono;
            else if (c == "-1")
                term = "-" + mono;
            else
                term = (c.find(' ') != std::string::npos ? "(" + c + ")" : c) + "*" + mono;
        }
        if (out.empty())
            out = term;
        else if (!term.empty() && term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

std::string frac_to_string(const SFraction& a) {
    if (lp_is_one(a.den)) return lp_to_string(a.num);
    return "(" + lp_to_string(a.num) + ") / (" + lp_to_string(a.den) + ")";
}

namespace {

struct LaurentOps {
    RingPtr ring;
    LaurentPoly zero() const { return lp_zero(ring); }
    LaurentPoly one() const { return lp_const(ring_one(ring)); }
    LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) const { return lp_add(a, b); }
    LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b) const { return lp_sub(a, b); }
    LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) const { return lp_mul(a, b); }
    bool is_zero(const LaurentPoly& a) const { return lp_is_zero(a); }
};

} // namespace

LaurentPoly char_rev(const Matrix& m) {
    if (m.rows != m.cols) fail(ErrorKind::DescriptorMismatch, "char_rev of non-square matrix");
    LaurentOps ops{m.ring};
    return det_generic<LaurentPoly>(
        m.rows,
        [&](long i, long j) {
            LaurentPoly e = lp_monomial(ring_neg(m.at(i, j)), 1);
            if (i == j) e = lp_add(e, lp_const(ring_one(m.ring)));
            return e;
        },
        ops);
}

} // namespace weilgamma
