#pragma once

#include "weilgamma/family.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace weilgamma {

// A representation document: local field data, coefficient ring, additive
// character, the matrices of the representation, and optional monodromy,
// filtration, wild epsilon0 and fiber blocks. Ring elements are strings in
// the element syntax; matrices are row-major arrays of such strings.
struct RepDocument {
    LocalField field;
    RingPtr ring;
    AdditiveCharacter psi;
    TameRep rep;
    std::optional<WDRep> wd;
    Filtration filtration;
    std::optional<MonomialResult> wild_eps0;

    struct FiberSpec {
        std::string name;
        nlohmann::json raw;
    };
    std::vector<FiberSpec> fibers;
};

RingPtr parse_ring_json(const nlohmann::json& j);
nlohmann::json ring_to_json(const RingPtr& ring);
Matrix parse_matrix_json(const RingPtr& ring, const nlohmann::json& rows);

RepDocument parse_document(const std::string& json_text);
RepDocument load_document(const std::string& path);

// Builds the fiber hom described by a spec object:
//   {"vars": {"T": "2"}, "reduce": {"ell": 7, "r": 1, "zeta": "2"}}
// Variables of outer PolyExt/Quotient layers are evaluated into the leaf;
// the optional reduction lands in F_{ell^r}. With a reduction present the
// result is the factored composite reduction ∘ point.
Hom build_fiber(const RingPtr& ring, const nlohmann::json& spec);
// Accepts a fiber name from the document or an inline JSON object.
Hom resolve_fiber(const RepDocument& doc, const std::string& name_or_json);

} // namespace weilgamma
