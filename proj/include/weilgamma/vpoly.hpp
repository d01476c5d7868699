#pragma once

#include "weilgamma/matrix.hpp"
#include "weilgamma/ring.hpp"

namespace weilgamma {

// Dense univariate polynomials with Value coefficients (constant first),
// trimmed. Used for characteristic polynomials and Jordan--Chevalley work
// over field coefficient rings.
using VPoly = std::vector<Value>;

void vp_trim(VPoly& p);
VPoly vp_add(const RingPtr& r, const VPoly& a, const VPoly& b);
VPoly vp_sub(const RingPtr& r, const VPoly& a, const VPoly& b);
VPoly vp_mul(const RingPtr& r, const VPoly& a, const VPoly& b);
VPoly vp_scale(const VPoly& a, const Value& c);
VPoly vp_derivative(const RingPtr& r, const VPoly& a);
// division with remainder; the divisor's leading coefficient must be a unit
void vp_divmod(const RingPtr& r, const VPoly& a, const VPoly& b, VPoly& quot, VPoly& rem);
// monic gcd over a field coefficient ring
VPoly vp_gcd(const RingPtr& r, VPoly a, VPoly b);
Value vp_eval(const RingPtr& r, const VPoly& p, const Value& x);
Matrix vp_eval_matrix(const VPoly& p, const Matrix& x);

// monic characteristic polynomial det(lambda*I - M), constant first
VPoly charpoly_monic(const Matrix& m);

} // namespace weilgamma
