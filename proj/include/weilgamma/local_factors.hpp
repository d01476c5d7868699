#pragma once

#include "weilgamma/laurent.hpp"
#include "weilgamma/weil.hpp"

namespace weilgamma {

// The additive character psi of F. Level 0 is the canonical character whose
// residue incarnation is x -> zeta_p^(Tr(x)); level n stands for
// x -> psi_0(varpi^-n x).
struct AdditiveCharacter {
    LocalField field;
    long level = 0;
};

AdditiveCharacter make_additive_character(const LocalField& field, long level = 0);

// Trace exponents t[k] = Tr_{F_{p^fd}/F_p}(g^k) for the distinguished generator
// g; construction verifies the residue character is nontrivial.
const std::vector<long>& residue_character_table(long p, long fd);

// results over a possibly enlarged coefficient ring; the embedding of the
// original ring is canonical (canonical_embed)
struct ScalarResult {
    RingPtr ring;
    Value value;
};
struct MonomialResult {
    RingPtr ring;
    Value constant;
    long exponent = 0;
};
struct FractionResult {
    RingPtr ring;
    SFraction value;
};

// Gauss sum over F_{p^fd}: sum of chibar^{-1}(x) psibar(x), where chibar sends
// the distinguished generator to zeta_{p^fd - 1}^chi_exponent. Lives in the
// cyclotomic field of order p (p^fd - 1); cached.
ScalarResult gauss_sum(long p, long fd, long chi_exponent);

// epsilon of a tame character of the degree-d unramified extension against
// psi ∘ Tr; requires n(psi) = 0.
ScalarResult epsilon_character(const TameCharacter& chi, const AdditiveCharacter& psi);

// Eigenvalue orbit data of Sigma under zeta -> zeta^q. Works over any
// characteristic-zero coefficient ring of integral-domain shape.
struct SpectralOrbit {
    long rep_exponent = 0;   // representative eigenvalue = zeta_N^rep_exponent
    long zeta_order = 1;     // exact order of the representative eigenvalue
    long d = 1;              // orbit size
    std::vector<long> orbit_exponents;
    Matrix projector;        // eigen-projector of the representative
    long rank = 0;
    Matrix basis;            // field coefficients only: columns span V_zeta
    Matrix restricted;       // field coefficients only: Phi^d on V_zeta
};

struct SpectralData {
    RingPtr ring; // enlarged to contain zeta_{N_Sigma}
    Hom embed;
    Matrix phi;
    Matrix sigma;
    long sigma_order = 1;
    std::vector<SpectralOrbit> orbits;
};

SpectralData tame_spectral_data(const TameRep& a);

// The modified epsilon constant computed blockwise from the spectral data;
// valid over characteristic-zero fields and over family base domains.
ScalarResult epsilon0_semisimple(const TameRep& a, const AdditiveCharacter& psi);
// field-coefficient entry point
ScalarResult epsilon0_field(const TameRep& a, const AdditiveCharacter& psi);

// L(r, X) = det(I - Phi X | invariants)^-1 as a fraction; for Weil-Deligne
// input the invariants are further cut by ker N
SFraction l_factor(const TameRep& a);
SFraction l_factor(const WDRep& a);

MonomialResult epsilon_monomial(const TameRep& a, const AdditiveCharacter& psi);
MonomialResult epsilon_monomial(const WDRep& a, const AdditiveCharacter& psi);
MonomialResult epsilon0_monomial(const TameRep& a, const AdditiveCharacter& psi);

FractionResult gamma_field(const TameRep& a, const AdditiveCharacter& psi);
FractionResult gamma_field(const WDRep& a, const AdditiveCharacter& psi);

// det(-Fr X | r^I / r_N^I) = L(r^v, 1/qX)/L(r, X) * L((r,N), X)/L((r^v,N^v), 1/qX)
bool lemma45_check(const WDRep& a);

struct LocalFactorsResult {
    RingPtr ring;
    SFraction l;
    MonomialResult eps;
    MonomialResult eps0;
    FractionResult gamma;
};
// all four factors with the defining identity cross-checked
LocalFactorsResult compute_local_factors(const WDRep& a, const AdditiveCharacter& psi);

// epsilon_0 over a characteristic-ell field by reduction from characteristic
// zero along the given leaf reduction (the chosen prime above ell).
struct ReductionResult {
    RingPtr ring;  // the (possibly extended) finite field
    Hom extended;  // extension of `reduction` to the enlarged source
    Value value;
};
ReductionResult epsilon0_reduce_mod_ell(const TameRep& a, const AdditiveCharacter& psi,
                                        const Hom& reduction);

} // namespace weilgamma
