#pragma once

#include "weilgamma/local_factors.hpp"

#include <optional>

namespace weilgamma {

// T = I + Sigma + ... + Sigma^(q-1)
Matrix t_operator(const TameRep& a);

// det(T); a unit for every valid tame input, and equal to q^(dim rho^I) over
// characteristic-zero fields (asserted there).
Value det_t(const TameRep& a);

// gamma over the base ring assembled from the closed formula
//   eps0 * X^(Sw + dim (n(psi)+1)) * det(T) char_rev(Phi) / char_rev(T Phi).
struct GammaResult {
    RingPtr ring;      // the coefficient ring of gamma (possibly an enlargement)
    SFraction gamma;
    Value eps0;
    long swan = 0;
    long exponent = 0;
    Value det_t;
    bool enlarged = false;   // ring differs from the input ring
    bool descended = false;  // gamma's coefficients were checked to lie in the input ring
};

// eps0_value must live over `a.ring` or a cyclotomic enlargement of it; an
// optional precomputed wild epsilon0 monomial is multiplied in.
GammaResult gamma_family(const TameRep& a, const AdditiveCharacter& psi,
                         const ScalarResult& eps0_value,
                         const MonomialResult* wild_eps0 = nullptr);

// A family over the tower presented by a single characteristic-zero chart:
// a representation over the base domain R0 plus a specialization into R.
struct FamilyPresentation {
    TameRep rep; // over R0
    Hom f;       // R0 -> R
};

FamilyPresentation make_family(TameRep rep_over_base, Hom f);

// epsilon0 of the family member over (an enlargement of) the target ring,
// computed over the base domain and pushed through f.
ScalarResult epsilon0_family(const FamilyPresentation& pres, const AdditiveCharacter& psi);

// gamma of the family member over (an enlargement of) the target ring
GammaResult gamma_family_at_target(const FamilyPresentation& pres, const AdditiveCharacter& psi);

// Specialization checks: for each fiber hom from the target ring into a field
// of the tower, compare f(gamma_R) against the independently computed gamma of
// the fiber (classical path in characteristic zero, reduction path in
// characteristic ell; the latter requires the fiber in the factored form
// compose(leaf reduction, characteristic-zero point)).
struct FiberReport {
    std::string fiber;
    bool pass = false;
    std::string lhs;
    std::string rhs;
};
struct InterpolationReport {
    bool all_pass = true;
    GammaResult gamma;
    std::vector<FiberReport> fibers;
};
InterpolationReport verify_interpolation(const FamilyPresentation& pres,
                                         const AdditiveCharacter& psi,
                                         const std::vector<Hom>& fibers);

// the two identities of the determinant theorem, over char-0 fields
bool thm61_det_identity(const TameRep& a);
bool thm61_ratio_identity(const TameRep& a);

// Membership of a value in the canonically embedded subring (cyclotomic leaf
// descent); nullopt when the value does not descend.
std::optional<Value> try_descend(const Value& v, const RingPtr& small);

} // namespace weilgamma
