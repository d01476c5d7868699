#pragma once

#include "weilgamma/hom.hpp"
#include "weilgamma/matrix.hpp"
#include "weilgamma/ring.hpp"

namespace weilgamma {

// A Laurent polynomial over a ring of the tower, kept trimmed: the lowest and
// highest stored coefficients are nonzero, and zero is the empty polynomial.
struct LaurentPoly {
    RingPtr ring;
    long min_exp = 0;
    std::vector<Value> coeffs; // coeffs[k] multiplies X^(min_exp + k)

    long max_exp() const { return min_exp + static_cast<long>(coeffs.size()) - 1; }
};

LaurentPoly lp_zero(const RingPtr& r);
LaurentPoly lp_const(const Value& v);
LaurentPoly lp_monomial(const Value& v, long e);
LaurentPoly lp_x(const RingPtr& r);
LaurentPoly lp_from_coeffs(const RingPtr& r, long min_exp, std::vector<Value> coeffs);

bool lp_is_zero(const LaurentPoly& a);
bool lp_is_one(const LaurentPoly& a);
bool lp_eq(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_neg(const LaurentPoly& a);
LaurentPoly lp_scale(const LaurentPoly& a, const Value& c);
LaurentPoly lp_shift(const LaurentPoly& a, long e);      // multiply by X^e
LaurentPoly lp_subst_power(const LaurentPoly& a, long d); // X -> X^d, d >= 1
LaurentPoly lp_subst_scale(const LaurentPoly& a, const Value& s); // X -> sX
LaurentPoly lp_subst_inv_scale(const LaurentPoly& a, const Value& q); // X -> 1/(qX)
LaurentPoly lp_specialize(const Hom& f, const LaurentPoly& a);

const Value& lp_lowest(const LaurentPoly& a);
const Value& lp_highest(const LaurentPoly& a);

// An element of the localization of R[X, X^-1] at the multiplicative set S of
// Laurent polynomials whose extreme coefficients are units. Kept unreduced;
// equality is by cross-multiplication, a congruence because S consists of
// regular elements. Over rings whose descriptor proves them integral domains,
// denominators with nonzero (not necessarily unit) extreme coefficients are
// also accepted; those are regular for the same reason.
struct SFraction {
    LaurentPoly num;
    LaurentPoly den;
};

SFraction mk_fraction(LaurentPoly num, LaurentPoly den); // checks den
SFraction frac_one(const RingPtr& r);
SFraction frac_zero(const RingPtr& r);
SFraction frac_from_laurent(LaurentPoly p);
SFraction frac_from_value(const Value& v);

bool frac_equal(const SFraction& a, const SFraction& b);
SFraction frac_add(const SFraction& a, const SFraction& b);
SFraction frac_sub(const SFraction& a, const SFraction& b);
SFraction frac_mul(const SFraction& a, const SFraction& b);
SFraction frac_neg(const SFraction& a);
SFraction frac_invert(const SFraction& a); // numerator must be in S
SFraction frac_specialize(const Hom& f, const SFraction& a);

std::string lp_to_string(const LaurentPoly& a);
std::string frac_to_string(const SFraction& a);

// The reversed characteristic polynomial det(I - M X), a polynomial of degree
// at most n with constant term 1.
LaurentPoly char_rev(const Matrix& m);

} // namespace weilgamma
