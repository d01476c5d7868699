#pragma once

#include "weilgamma/hom.hpp"
#include "weilgamma/matrix.hpp"

namespace weilgamma {

// The ambient local field data: residue characteristic p, residue degree f,
// q = p^f, and the coefficient characteristic of interest ell != p.
struct LocalField {
    long p = 0;
    long f = 1;
    long ell = 0;
    long q = 0;
};

LocalField make_local_field(long p, long f, long ell);

// A tamely ramified representation given by the matrix pair (Phi, Sigma) with
// Phi Sigma Phi^-1 = Sigma^(q^ext_degree) and Sigma of finite order prime to p.
// ext_degree d > 1 means the representation lives over the degree-d unramified
// extension (the subgroup generated by inertia and Fr^d).
struct TameRep {
    RingPtr ring;
    LocalField field;
    long ext_degree = 1;
    Matrix phi;
    Matrix sigma;
    long sigma_order = 1;

    long dim() const { return phi.rows; }
    long rel_q() const; // q^ext_degree
};

// Weil--Deligne representation: a TameRep plus nilpotent N with
// Sigma N Sigma^-1 = N and Phi N Phi^-1 = q^-1 N.
struct WDRep {
    TameRep rep;
    Matrix n;

    long dim() const { return rep.dim(); }
};

// A tame character of the degree-d unramified extension: u is the value on
// the geometric Frobenius (equivalently a uniformizer), zeta = value on the
// tame generator, a root of unity of order dividing q^d - 1 given by its
// exponent against the distinguished zeta_{q^d-1}.
struct TameCharacter {
    RingPtr ring;
    LocalField field;
    long d = 1;
    Value frob_value;
    long zeta_exponent = 0;
    Value zeta;
};

long sigma_order_search_bound();

TameRep mk_tame(RingPtr ring, LocalField field, Matrix phi, Matrix sigma, long ext_degree = 1);
WDRep mk_wd(TameRep rep, Matrix n);
WDRep wd_from_tame(TameRep rep); // N = 0

TameCharacter make_tame_character(RingPtr ring, LocalField field, long d, Value frob_value,
                                  long zeta_exponent);
// the 1-dimensional TameRep with ext_degree = d attached to a character
TameRep character_rep(const TameCharacter& chi);

TameRep direct_sum(const TameRep& a, const TameRep& b);
WDRep direct_sum(const WDRep& a, const WDRep& b);
TameRep twist_unramified(const TameRep& a, const Value& u);
WDRep twist_unramified(const WDRep& a, const Value& u);
TameRep dual(const TameRep& a);
WDRep dual(const WDRep& a);

// the special representation Sp(n): Sigma = I, Phi = diag(1, q^-1, ..., q^-(n-1)),
// N the lower shift
WDRep sp(long n, const RingPtr& ring, const LocalField& field);

// unramified induction from the degree-d extension down to the base field;
// the input must have ext_degree = d
TameRep induct_unramified(const TameRep& rep_over_ext);

struct InertiaInvariants {
    Matrix basis; // n x k, columns span ker(Sigma - I)
    long dim = 0;
};
InertiaInvariants inertia_invariants(const TameRep& a);

TameRep frobenius_semisimplify(const TameRep& a);
WDRep frobenius_semisimplify(const WDRep& a);

struct IsotypicComponent {
    long j = 0; // character index mod m
    Matrix projector;
    long rank = 0;
};
struct IsotypicDecomposition {
    RingPtr ring; // possibly enlarged by the needed roots of unity
    Hom embed;
    long order = 1;
    std::vector<IsotypicComponent> components;
};
IsotypicDecomposition isotypic_decompose(const TameRep& a, const Matrix& h);

long rank_of_idempotent(const Matrix& e);

// upper-numbering break data: pairs (v, image of G^v) with v ascending and the
// groups descending, each given as an explicit finite matrix group
struct BreakJump {
    Rat v;
    std::vector<Matrix> group;
};
struct Filtration {
    std::vector<BreakJump> jumps;
};
struct BreakPart {
    Rat v;
    long rank = 0;
};

std::vector<BreakPart> break_decomposition(const RingPtr& ring, long dim, const Filtration& filt);
long swan_conductor(const RingPtr& ring, long dim, const Filtration& filt);
long artin_conductor(const TameRep& a, long wild_swan = 0);

} // namespace weilgamma
