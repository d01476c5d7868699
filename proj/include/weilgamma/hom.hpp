#pragma once

#include "weilgamma/ring.hpp"

#include <optional>

namespace weilgamma {

// A ring homomorphism between two rings of the tower. Construction checks
// that the images of the source generators satisfy the defining relations.
class Hom {
public:
    Hom() = default;

    // canonical inclusion of a ring as the constants of a tower built over it;
    // with target == source this is the identity
    static Hom const_lift(RingPtr source, RingPtr target);
    static Hom identity(RingPtr ring);

    // leaf maps
    static Hom rationals_to(RingPtr target);
    static Hom cyclo_to(RingPtr source, RingPtr target, Value zeta_image);
    static Hom finite_field_to(RingPtr source, RingPtr target, Value gen_image);
    static Hom mod_cyclo_to(RingPtr source, RingPtr target, Value zeta_image);

    // evaluation of the outermost variable of a PolyExt source
    static Hom extend_poly(RingPtr source, Hom coeff_hom, Value var_image);
    // evaluation of the generator of a Quotient source; checks the modulus dies
    static Hom extend_quotient(RingPtr source, Hom coeff_hom, Value var_image);

    static Hom project(RingPtr product_source, size_t index);
    static Hom compose(Hom second, Hom first); // second after first

    bool valid() const { return node_ != nullptr; }
    const RingPtr& source() const;
    const RingPtr& target() const;

    // composition introspection (for fibers given as reduction ∘ char-0 point)
    bool is_compose() const;
    Hom compose_first() const;
    Hom compose_second() const;

    Value operator()(const Value& v) const;
    std::string describe() const;

    struct Node;
    explicit Hom(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const std::shared_ptr<const Node>& node() const { return node_; }

private:
    std::shared_ptr<const Node> node_;
};

// Enlargement of a ring by roots of unity, with its canonical embedding.
struct Enlargement {
    RingPtr ring;
    Hom embed;
};

// Returns a ring containing primitive m-th roots of unity together with the
// canonical embedding; the identity when the roots are already present.
// Throws RootsUnavailable when m shares a factor with a residue characteristic.
Enlargement adjoin_roots(const RingPtr& ring, long m);

// Embedding F_{ell^r} -> F_{ell^r'} (r | r'), deterministic generator image.
Hom ff_embed(const RingPtr& small_field, const RingPtr& big_field);

// The canonical embedding small -> big for big a cyclotomic enlargement of
// small (same tower shape, distinguished roots to distinguished roots).
Hom canonical_embed(const RingPtr& small, const RingPtr& big);
// convenience: push a value along the canonical embedding
Value into_ring(const Value& v, const RingPtr& big);

// Reduction of a characteristic-zero leaf (Rationals or Cyclotomic) into a
// finite field, picking the smallest compatible primitive root image when no
// explicit image is supplied.
Hom cyclo_reduction(const RingPtr& source, const RingPtr& ff_target,
                    std::optional<Value> zeta_image = std::nullopt);

// Extension of a hom along cyclotomic enlargement of its source: given
// f : R0 -> R and M, produces f_M with f_M ∘ (source embed) = (target embed) ∘ f.
// The target is enlarged as needed (cyclotomically in characteristic zero, by
// a field extension in characteristic ell). Compatible root images are chosen
// deterministically; throws BadPrimeChoice when none exists.
struct HomExtension {
    Hom extended;
    Hom source_embed;
    Hom target_embed;
};
HomExtension extend_hom_cyclotomic(const Hom& f, long m);

// Maximum cyclotomic order the library will adjoin, overridable through the
// WEILGAMMA_ROOT_BOUND environment variable.
long root_adjunction_bound();

} // namespace weilgamma
