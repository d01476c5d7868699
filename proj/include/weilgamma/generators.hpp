#pragma once

#include "weilgamma/weil.hpp"

#include <random>

namespace weilgamma {

// Seeded construction of valid random representations. Inputs are built by
// construction (character blocks first, then inductions and couplings that
// respect the commutation relation) rather than by rejection sampling.
class RepGen {
public:
    explicit RepGen(uint64_t seed) : rng_(seed) {}

    long pick(long lo, long hi) {
        return lo + static_cast<long>(rng_() % static_cast<uint64_t>(hi - lo + 1));
    }

    Rat unit_rational();

    struct BlockSpec {
        long d = 1;  // orbit degree
        long j = 0;  // character exponent against zeta_{q^d-1}
        Rat u;       // value on Frobenius
    };

    std::vector<BlockSpec> blocks(const LocalField& field, long dim_max, long d_max);
    // the minimal cyclotomic field holding all block characters
    RingPtr block_ring(const LocalField& field, const std::vector<BlockSpec>& blocks);
    TameRep realize(const LocalField& field, const std::vector<BlockSpec>& blocks);

    // direct sum of induced character blocks (semisimple by construction)
    TameRep tame_semisimple(const LocalField& field, long dim_max, long d_max);
    // a semisimple representation plus a duplicated character block coupled by
    // an upper-triangular entry (not Frobenius-semisimple)
    TameRep tame_with_coupling(const LocalField& field, long dim_max, long d_max);
    // block-upper-triangular join of two representations with a random
    // admissible coupling block
    TameRep triangular_join(const TameRep& top, const TameRep& bottom);
    // direct sums of twisted Sp(k) pieces and tame parts
    WDRep wd_rep(const LocalField& field, long dim_max);

private:
    std::mt19937_64 rng_;
};

} // namespace weilgamma
