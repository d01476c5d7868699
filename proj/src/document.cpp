#include "weilgamma/document.hpp"

#include "weilgamma/elements.hpp"
#include "weilgamma/errors.hpp"

#include <fstream>
#include <sstream>

namespace weilgamma {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { fail(ErrorKind::ParseError, msg); }

long get_long(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        parse_fail(std::string("missing integer field '") + key + "'");
    return j[key].get<long>();
}

std::string get_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        parse_fail(std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

} // namespace

RingPtr parse_ring_json(const json& j) {
    if (!j.is_object()) parse_fail("ring descriptor must be an object");
    std::string type = get_string(j, "type");
    if (type == "rationals") return make_rationals();
    if (type == "cyclotomic") return make_cyclotomic(get_long(j, "m"));
    if (type == "finite_field") return make_finite_field(get_long(j, "ell"), get_long(j, "r"));
    if (type == "modular_cyclotomic")
        return make_modular_cyclotomic(get_long(j, "m"), get_long(j, "ell"), get_long(j, "n"));
    if (type == "poly") {
        if (!j.contains("base")) parse_fail("poly ring needs a base");
        return make_poly_ext(parse_ring_json(j["base"]), get_string(j, "var"));
    }
    if (type == "quotient") {
        if (!j.contains("base")) parse_fail("quotient ring needs a base");
        RingPtr base = parse_ring_json(j["base"]);
        Value modulus = parse_element(base, get_string(j, "modulus"));
        return make_quotient(base, modulus);
    }
    if (type == "product") {
        if (!j.contains("components") || !j["components"].is_array())
            parse_fail("product ring needs components");
        std::vector<RingPtr> comps;
        for (const auto& c : j["components"]) comps.push_back(parse_ring_json(c));
        return make_product(std::move(comps));
    }
    parse_fail("unknown ring type '" + type + "'");
}

json ring_to_json(const RingPtr& ring) {
    json j;
    switch (ring->kind) {
    case RingKind::Rationals:
        j["type"] = "rationals";
        break;
    case RingKind::Cyclotomic:
        j["type"] = "cyclotomic";
        j["m"] = ring->m;
        break;
    case RingKind::FiniteField:
        j["type"] = "finite_field";
        j["ell"] = ring->ell;
        j["r"] = ring->r_deg;
        break;
    case RingKind::ModularCyclotomic:
        j["type"] = "modular_cyclotomic";
        j["m"] = ring->m;
        j["ell"] = ring->ell;
        j["n"] = ring->n_exp;
        break;
    case RingKind::PolyExt:
        j["type"] = "poly";
        j["base"] = ring_to_json(ring->base);
        j["var"] = ring->var;
        break;
    case RingKind::Quotient: {
        j["type"] = "quotient";
        j["base"] = ring_to_json(ring->base);
        Value modulus = value_from_coeffs(ring->base, ring->quot_modulus);
        j["modulus"] = to_string(modulus);
        break;
    }
    case RingKind::Product: {
        j["type"] = "product";
        json comps = json::array();
        for (const auto& c : ring->components) comps.push_back(ring_to_json(c));
        j["components"] = comps;
        break;
    }
    }
    return j;
}

Matrix parse_matrix_json(const RingPtr& ring, const json& rows) {
    if (!rows.is_array() || rows.empty()) parse_fail("matrix must be a nonempty array of rows");
    long n_rows = static_cast<long>(rows.size());
    long n_cols = -1;
    std::vector<Value> entries;
    for (const auto& row : rows) {
        if (!row.is_array()) parse_fail("matrix rows must be arrays");
        if (n_cols < 0) n_cols = static_cast<long>(row.size());
        if (static_cast<long>(row.size()) != n_cols) parse_fail("ragged matrix");
        for (const auto& e : row) {
            if (!e.is_string()) parse_fail("matrix entries must be element-syntax strings");
            entries.push_back(parse_element(ring, e.get<std::string>()));
        }
    }
    return mat_from(ring, n_rows, n_cols, std::move(entries));
}

RepDocument parse_document(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) parse_fail("document must be a JSON object");
    if (!j.contains("field")) parse_fail("document needs a field block");
    const json& fj = j["field"];
    LocalField field = make_local_field(get_long(fj, "p"), get_long(fj, "f"), get_long(fj, "ell"));
    if (!j.contains("ring")) parse_fail("document needs a ring block");
    RingPtr ring = parse_ring_json(j["ring"]);
    long level = 0;
    if (j.contains("psi")) level = get_long(j["psi"], "level");
    AdditiveCharacter psi = make_additive_character(field, level);

    if (!j.contains("rep")) parse_fail("document needs a rep block");
    const json& rj = j["rep"];
    if (!rj.contains("phi") || !rj.contains("sigma")) parse_fail("rep needs phi and sigma");
    Matrix phi = parse_matrix_json(ring, rj["phi"]);
    Matrix sigma = parse_matrix_json(ring, rj["sigma"]);
    long ext_degree = rj.contains("ext_degree") ? get_long(rj, "ext_degree") : 1;
    if (phi.rows != phi.cols || sigma.rows != sigma.cols || phi.rows != sigma.rows)
        parse_fail("phi and sigma must be square matrices of equal size");

    RepDocument doc{field, ring, psi, mk_tame(ring, field, phi, sigma, ext_degree), {}, {}, {}, {}};

    if (rj.contains("wd_n")) {
        Matrix n = parse_matrix_json(ring, rj["wd_n"]);
        doc.wd = mk_wd(doc.rep, n);
    }
    if (rj.contains("filtration")) {
        for (const auto& jump : rj["filtration"]) {
            BreakJump bj;
            std::string v = get_string(jump, "v");
            // parse a rational break value
            Value val = parse_element(make_rationals(), v);
            bj.v = value_rat(val);
            if (!jump.contains("generators") || !jump["generators"].is_array())
                parse_fail("filtration jump needs generators");
            // close the generating set under multiplication
            std::vector<Matrix> gens;
            for (const auto& g : jump["generators"]) gens.push_back(parse_matrix_json(ring, g));
            std::vector<Matrix> group{mat_identity(ring, doc.rep.dim())};
            bool grew = true;
            size_t guard = 0;
            while (grew) {
                grew = false;
                if (++guard > 64) parse_fail("filtration group closure did not stabilize");
                std::vector<Matrix> next = group;
                for (const Matrix& a : group)
                    for (const Matrix& g : gens) {
                        Matrix prod = mat_mul(a, g);
                        bool found = false;
                        for (const Matrix& b : next) found = found || mat_eq(b, prod);
                        if (!found) {
                            next.push_back(prod);
                            grew = true;
                        }
                    }
                group = std::move(next);
                if (group.size() > 4096) parse_fail("filtration group too large");
            }
            bj.group = std::move(group);
            doc.filtration.jumps.push_back(std::move(bj));
        }
    }
    if (j.contains("wild_epsilon0")) {
        const json& w = j["wild_epsilon0"];
        MonomialResult m;
        m.ring = ring;
        m.constant = parse_element(ring, get_string(w, "constant"));
        m.exponent = get_long(w, "exponent");
        doc.wild_eps0 = std::move(m);
    }
    if (j.contains("family") && j["family"].contains("fibers")) {
        for (const auto& f : j["family"]["fibers"]) {
            RepDocument::FiberSpec spec;
            spec.name = f.contains("name") ? f["name"].get<std::string>() : "";
            spec.raw = f;
            doc.fibers.push_back(std::move(spec));
        }
    }
    return doc;
}

RepDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

Hom build_fiber(const RingPtr& ring, const json& spec) {
    if (!spec.is_object()) parse_fail("fiber spec must be a JSON object");
    // the characteristic-zero point: evaluate tower variables into the leaf
    RingPtr leaf = ring;
    std::vector<RingPtr> layers;
    while (leaf->kind == RingKind::PolyExt || leaf->kind == RingKind::Quotient) {
        layers.push_back(leaf);
        leaf = leaf->kind == RingKind::PolyExt ? leaf->base : leaf->base->base;
    }
    Hom point = Hom::identity(leaf);
    // build from the innermost layer outwards
    for (size_t i = layers.size(); i-- > 0;) {
        const RingPtr& layer = layers[i];
        std::string var = layer->kind == RingKind::PolyExt ? layer->var : layer->base->var;
        if (!spec.contains("vars") || !spec["vars"].contains(var))
            parse_fail("fiber spec lacks an image for variable '" + var + "'");
        Value img = parse_element(leaf, spec["vars"][var].get<std::string>());
        if (layer->kind == RingKind::PolyExt)
            point = Hom::extend_poly(layer, point, img);
        else
            point = Hom::extend_quotient(layer, point, img);
    }
    // `point` so far maps the outermost processed layer; when there were no
    // layers it is the identity of the leaf
    Hom result = layers.empty() ? Hom::identity(ring) : point;

    if (spec.contains("reduce")) {
        const json& r = spec["reduce"];
        long ell = get_long(r, "ell");
        long rr = 1;
        if (r.contains("r")) {
            rr = get_long(r, "r");
        } else if (leaf->kind == RingKind::Cyclotomic) {
            long m0 = leaf->m;
            while (m0 % ell == 0) m0 /= ell;
            rr = m0 == 1 ? 1 : mul_order(mod_floor(ell, m0), m0);
        }
        RingPtr ff = make_finite_field(ell, rr);
        std::optional<Value> zeta_img;
        if (r.contains("zeta")) zeta_img = parse_element(ff, r["zeta"].get<std::string>());
        Hom red = cyclo_reduction(leaf, ff, zeta_img);
        result = Hom::compose(red, result);
    }
    return result;
}

Hom resolve_fiber(const RepDocument& doc, const std::string& name_or_json) {
    if (!name_or_json.empty() && name_or_json.front() == '{') {
        json spec;
        try {
            spec = json::parse(name_or_json);
        } catch (const json::exception& e) {
            parse_fail(std::string("invalid fiber JSON: ") + e.what());
        }
        return build_fiber(doc.ring, spec);
    }
    for (const auto& f : doc.fibers)
        if (f.name == name_or_json) return build_fiber(doc.ring, f.raw);
    parse_fail("no fiber named '" + name_or_json + "' in the document");
}

} // namespace weilgamma
