#include "weilgamma/ring.hpp"

#include "weilgamma/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace weilgamma {

namespace {

void trim_rat(std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}
void trim_int(std::vector<Int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}
void trim_val(std::vector<Value>& v) {
    while (!v.empty() && is_zero(v.back())) v.pop_back();
}

// reduce a rational polynomial modulo a monic rational polynomial
void ratpoly_reduce(std::vector<Rat>& a, const std::vector<Rat>& f) {
    size_t deg = f.size() - 1;
    while (a.size() > deg) {
        Rat c = a.back();
        size_t top = a.size() - 1;
        a.pop_back();
        if (c == 0) continue;
        for (size_t j = 0; j < deg; ++j) a[top - deg + j] -= c * f[j];
    }
}

// reduce an integer polynomial modulo a monic integer polynomial, coefficients mod M
void intpoly_reduce(std::vector<Int>& a, const std::vector<Int>& f, const Int& M) {
    size_t deg = f.size() - 1;
    while (a.size() > deg) {
        Int c = a.back();
        size_t top = a.size() - 1;
        a.pop_back();
        if (c == 0) continue;
        for (size_t j = 0; j < deg; ++j) {
            a[top - deg + j] -= c * f[j];
            mpz_mod(a[top - deg + j].get_mpz_t(), a[top - deg + j].get_mpz_t(), M.get_mpz_t());
        }
    }
    for (Int& c : a) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
}

std::string payload_signature(const Value& v);

std::string rat_str(const Rat& r) { return r.get_str(); }

std::string payload_signature(const Value& v) {
    std::ostringstream os;
    struct Visitor {
        std::ostringstream& os;
        void operator()(const Rat& r) const { os << r.get_str(); }
        void operator()(const std::vector<Rat>& c) const {
            os << '[';
            for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i].get_str();
            os << ']';
        }
        void operator()(const std::vector<Int>& c) const {
            os << '[';
            for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i].get_str();
            os << ']';
        }
        void operator()(const std::vector<Value>& c) const {
            os << '[';
            for (size_t i = 0; i < c.size(); ++i) {
                if (i) os << ',';
                os << payload_signature(c[i]);
            }
            os << ']';
        }
    };
    std::visit(Visitor{os}, v.payload());
    return os.str();
}

void require_same_ring(const Value& a, const Value& b, const char* op) {
    if (!a.ring() || !b.ring()) fail(ErrorKind::DescriptorMismatch, std::string("null ring in ") + op);
    if (a.ring() == b.ring()) return;
    if (a.ring()->signature == b.ring()->signature) return;
    fail(ErrorKind::DescriptorMismatch,
         std::string(op) + " over distinct rings " + a.ring()->signature + " and " + b.ring()->signature);
}

Int mod_pos(const Int& a, const Int& M) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t());
    return r;
}

// canonical constructors per kind ------------------------------------------

Value make_rat_value(const RingPtr& r, Rat v) {
    v.canonicalize();
    return Value(r, std::move(v));
}

Value make_cyclo_value(const RingPtr& r, std::vector<Rat> coeffs) {
    ratpoly_reduce(coeffs, r->phi_rat);
    trim_rat(coeffs);
    return Value(r, std::move(coeffs));
}

Value make_ff_value(const RingPtr& r, std::vector<Int> coeffs) {
    Int ell(r->ell);
    std::vector<Int> f(r->ff_poly.begin(), r->ff_poly.end());
    intpoly_reduce(coeffs, f, ell);
    trim_int(coeffs);
    return Value(r, std::move(coeffs));
}

Value make_mc_value(const RingPtr& r, std::vector<Int> coeffs) {
    intpoly_reduce(coeffs, r->phi_mod, r->residue_modulus);
    trim_int(coeffs);
    return Value(r, std::move(coeffs));
}

Value make_polyext_value(const RingPtr& r, std::vector<Value> coeffs) {
    trim_val(coeffs);
    return Value(r, std::move(coeffs));
}

void vpoly_reduce(std::vector<Value>& a, const std::vector<Value>& f, const RingPtr& inner) {
    size_t deg = f.size() - 1;
    while (a.size() > deg) {
        Value c = a.back();
        size_t top = a.size() - 1;
        a.pop_back();
        if (is_zero(c)) continue;
        for (size_t j = 0; j < deg; ++j) a[top - deg + j] = ring_sub(a[top - deg + j], ring_mul(c, f[j]));
    }
    (void)inner;
}

Value make_quotient_value(const RingPtr& r, std::vector<Value> coeffs) {
    vpoly_reduce(coeffs, r->quot_modulus, r->base->base);
    trim_val(coeffs);
    return Value(r, std::move(coeffs));
}

const std::vector<Rat>& rat_coeffs(const Value& v) { return std::get<std::vector<Rat>>(v.payload()); }
const std::vector<Int>& int_coeffs(const Value& v) { return std::get<std::vector<Int>>(v.payload()); }
const std::vector<Value>& val_coeffs(const Value& v) { return std::get<std::vector<Value>>(v.payload()); }

// --- extended gcd helpers ---------------------------------------------------

struct RatXgcd {
    std::vector<Rat> g; // gcd
    std::vector<Rat> s; // s*a = g mod f
};

RatXgcd ratpoly_xgcd(std::vector<Rat> a, std::vector<Rat> f) {
    trim_rat(a);
    trim_rat(f);
    std::vector<Rat> r0 = f, r1 = a;
    std::vector<Rat> s0 = {}, s1 = {Rat(1)};
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<Rat> q;
        std::vector<Rat> rem = r0;
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, Rat(0));
            Rat lead_inv = 1 / r1.back();
            for (size_t i = rem.size(); i-- > r1.size() - 1;) {
                Rat c = rem[i] * lead_inv;
                if (c == 0) continue;
                q[i - (r1.size() - 1)] = c;
                for (size_t j = 0; j < r1.size(); ++j) rem[i - (r1.size() - 1) + j] -= c * r1[j];
            }
            trim_rat(rem);
        }
        // s2 = s0 - q*s1
        std::vector<Rat> qs(q.empty() || s1.empty() ? 0 : q.size() + s1.size(), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        trim_rat(qs);
        std::vector<Rat> s2(std::max(s0.size(), qs.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        trim_rat(s2);
        r0 = std::move(rem);
        std::swap(r0, r1);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {r0, s0};
}

struct IntXgcd {
    std::vector<Int> g;
    std::vector<Int> s;
};

// extended gcd of integer polynomials modulo a prime ell
IntXgcd intpoly_xgcd_mod(std::vector<Int> a, std::vector<Int> f, const Int& ell) {
    auto reduce_all = [&](std::vector<Int>& v) {
        for (Int& c : v) c = mod_pos(c, ell);
        trim_int(v);
    };
    reduce_all(a);
    reduce_all(f);
    std::vector<Int> r0 = f, r1 = a;
    std::vector<Int> s0 = {}, s1 = {Int(1)};
    while (!r1.empty()) {
        std::vector<Int> q;
        std::vector<Int> rem = r0;
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, Int(0));
            Int lead_inv;
            if (mpz_invert(lead_inv.get_mpz_t(), r1.back().get_mpz_t(), ell.get_mpz_t()) == 0)
                fail(ErrorKind::NotAUnit, "non-invertible leading coefficient mod ell");
            for (size_t i = rem.size(); i-- > r1.size() - 1;) {
                if (i + 1 < r1.size()) break;
                Int c = mod_pos(rem[i] * lead_inv, ell);
                if (c == 0) continue;
                q[i - (r1.size() - 1)] = c;
                for (size_t j = 0; j < r1.size(); ++j)
                    rem[i - (r1.size() - 1) + j] = mod_pos(rem[i - (r1.size() - 1) + j] - c * r1[j], ell);
            }
            trim_int(rem);
        }
        std::vector<Int> qs(q.size() + s1.size(), Int(0));
        if (!q.empty() && !s1.empty())
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j) qs[i + j] = mod_pos(qs[i + j] + q[i] * s1[j], ell);
        trim_int(qs);
        std::vector<Int> s2(std::max(s0.size(), qs.size()), Int(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = mod_pos(s2[i] - qs[i], ell);
        trim_int(s2);
        r0 = std::move(rem);
        std::swap(r0, r1);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {r0, s0};
}

struct ValXgcd {
    std::vector<Value> g;
    std::vector<Value> s;
};

// extended gcd of value polynomials; divisions happen only by leading
// coefficients, which must be invertible in the coefficient ring
ValXgcd vpoly_xgcd(std::vector<Value> a, std::vector<Value> f, const RingPtr& inner) {
    trim_val(a);
    trim_val(f);
    std::vector<Value> r0 = f, r1 = a;
    std::vector<Value> s0 = {}, s1 = {ring_one(inner)};
    while (!r1.empty()) {
        std::vector<Value> q;
        std::vector<Value> rem = r0;
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, ring_zero(inner));
            Value lead_inv = inverse(r1.back());
            for (size_t i = rem.size(); i-- > r1.size() - 1;) {
                if (i + 1 < r1.size()) break;
                Value c = ring_mul(rem[i], lead_inv);
                if (is_zero(c)) continue;
                q[i - (r1.size() - 1)] = c;
                for (size_t j = 0; j < r1.size(); ++j)
                    rem[i - (r1.size() - 1) + j] = ring_sub(rem[i - (r1.size() - 1) + j], ring_mul(c, r1[j]));
            }
            trim_val(rem);
        }
        std::vector<Value> qs(q.empty() || s1.empty() ? 0 : q.size() + s1.size(), ring_zero(inner));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] = ring_add(qs[i + j], ring_mul(q[i], s1[j]));
        trim_val(qs);
        std::vector<Value> s2(std::max(s0.size(), qs.size()), ring_zero(inner));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = ring_sub(s2[i], qs[i]);
        trim_val(s2);
        r0 = std::move(rem);
        std::swap(r0, r1);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {r0, s0};
}

long nilpotency_bound(const RingPtr& r) {
    switch (r->kind) {
    case RingKind::Rationals:
    case RingKind::Cyclotomic:
    case RingKind::FiniteField:
        return 1;
    case RingKind::ModularCyclotomic:
        return r->n_exp * (static_cast<long>(r->phi_mod.size()) + 1);
    case RingKind::PolyExt:
        return nilpotency_bound(r->base);
    case RingKind::Quotient:
        return static_cast<long>(r->quot_modulus.size()) * nilpotency_bound(r->base->base);
    case RingKind::Product: {
        long b = 1;
        for (const auto& c : r->components) b = std::max(b, nilpotency_bound(c));
        return b;
    }
    }
    return 1;
}

} // namespace

// --- descriptor constructors -------------------------------------------------

RingPtr make_rationals() {
    static RingPtr q = [] {
        auto r = std::make_shared<Ring>();
        r->kind = RingKind::Rationals;
        r->signature = "Q";
        return r;
    }();
    return q;
}

RingPtr make_cyclotomic(long m) {
    if (m <= 0) fail(ErrorKind::UnsupportedRing, "cyclotomic order must be positive");
    if (m % 4 == 2) m /= 2; // Q(zeta_{2k}) = Q(zeta_k) for odd k
    if (m <= 2) return make_rationals();
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::Cyclotomic;
    r->m = m;
    r->phi_mod = cyclotomic_poly(m);
    r->phi_rat.reserve(r->phi_mod.size());
    for (const Int& c : r->phi_mod) r->phi_rat.emplace_back(c);
    r->signature = "C" + std::to_string(m);
    return r;
}

RingPtr make_finite_field(long ell, long r_deg) {
    if (!is_prime_long(ell)) fail(ErrorKind::CompositeModulusPrime, "ell = " + std::to_string(ell) + " is not prime");
    if (r_deg <= 0) fail(ErrorKind::UnsupportedRing, "extension degree must be positive");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::FiniteField;
    r->ell = ell;
    r->r_deg = r_deg;
    r->ff_poly = ff_defining_poly(ell, r_deg);
    r->signature = "F" + std::to_string(ell) + "_" + std::to_string(r_deg);
    return r;
}

RingPtr make_modular_cyclotomic(long m, long ell, long n) {
    if (!is_prime_long(ell)) fail(ErrorKind::CompositeModulusPrime, "ell = " + std::to_string(ell) + " is not prime");
    if (m <= 0 || n <= 0) fail(ErrorKind::UnsupportedRing, "modular cyclotomic parameters must be positive");
    if (m % 4 == 2) m /= 2;
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::ModularCyclotomic;
    r->m = m;
    r->ell = ell;
    r->n_exp = n;
    Int mod = 1;
    for (long i = 0; i < n; ++i) mod *= ell;
    r->residue_modulus = mod;
    r->phi_mod = cyclotomic_poly(m);
    r->signature = "MC" + std::to_string(m) + "_" + std::to_string(ell) + "_" + std::to_string(n);
    return r;
}

RingPtr make_poly_ext(RingPtr base, const std::string& var) {
    if (var.empty() || var == "X" || var == "g" || (var[0] == 'z' && var.size() > 1 && std::isdigit(static_cast<unsigned char>(var[1]))))
        fail(ErrorKind::UnsupportedRing, "reserved variable name '" + var + "'");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::PolyExt;
    r->base = std::move(base);
    r->var = var;
    r->signature = "P[" + r->base->signature + ";" + var + "]";
    return r;
}

RingPtr make_quotient(RingPtr base, const Value& modulus) {
    if (base->kind != RingKind::PolyExt)
        fail(ErrorKind::UnsupportedRing, "quotient base must be a polynomial extension");
    if (!modulus.ring() || modulus.ring()->signature != base->signature)
        fail(ErrorKind::DescriptorMismatch, "quotient modulus not over the stated base");
    const auto& coeffs = val_coeffs(modulus);
    if (coeffs.size() < 2) fail(ErrorKind::NonMonicModulus, "quotient modulus must have positive degree");
    if (!is_one(coeffs.back())) fail(ErrorKind::NonMonicModulus, "quotient modulus must be monic");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::Quotient;
    r->base = std::move(base);
    r->quot_modulus = coeffs;
    r->signature = "QT[" + r->base->signature + ";" + payload_signature(modulus) + "]";
    return r;
}

RingPtr make_product(std::vector<RingPtr> components) {
    if (components.empty()) fail(ErrorKind::UnsupportedRing, "product needs at least one component");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::Product;
    r->components = std::move(components);
    std::string sig = "PR[";
    for (size_t i = 0; i < r->components.size(); ++i)
        sig += (i ? "," : "") + r->components[i]->signature;
    r->signature = sig + "]";
    return r;
}

bool ring_equal(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->signature == b->signature;
}

// --- predicates ----------------------------------------------------------------

bool is_field(const RingPtr& r) {
    return r->kind == RingKind::Rationals || r->kind == RingKind::Cyclotomic ||
           r->kind == RingKind::FiniteField;
}

bool is_char_zero(const RingPtr& r) {
    switch (r->kind) {
    case RingKind::Rationals:
    case RingKind::Cyclotomic:
        return true;
    case RingKind::FiniteField:
    case RingKind::ModularCyclotomic:
        return false;
    case RingKind::PolyExt:
        return is_char_zero(r->base);
    case RingKind::Quotient:
        return is_char_zero(r->base);
    case RingKind::Product:
        for (const auto& c : r->components)
            if (!is_char_zero(c)) return false;
        return true;
    }
    return false;
}

bool is_integral_domain_shape(const RingPtr& r) {
    switch (r->kind) {
    case RingKind::Rationals:
    case RingKind::Cyclotomic:
    case RingKind::FiniteField:
        return true;
    case RingKind::PolyExt:
        return is_integral_domain_shape(r->base);
    default:
        return false;
    }
}

std::vector<long> residue_characteristics(const RingPtr& r) {
    std::vector<long> out;
    switch (r->kind) {
    case RingKind::FiniteField:
    case RingKind::ModularCyclotomic:
        out.push_back(r->ell);
        break;
    case RingKind::PolyExt:
    case RingKind::Quotient:
        out = residue_characteristics(r->base);
        break;
    case RingKind::Product:
        for (const auto& c : r->components) {
            auto sub = residue_characteristics(c);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        break;
    default:
        break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_family_base(const RingPtr& r) {
    switch (r->kind) {
    case RingKind::Rationals:
    case RingKind::Cyclotomic:
        return true;
    case RingKind::PolyExt:
        return is_family_base(r->base);
    case RingKind::Quotient:
        // char-zero quotient of a polynomial ring over a field; squarefreeness
        // of the modulus was checked at construction time by callers that care
        return is_char_zero(r) && is_field(r->base->base);
    default:
        return false;
    }
}

// --- element construction ------------------------------------------------------

Value ring_zero(const RingPtr& r) {
    switch (r->kind) {
    case RingKind::Rationals: return Value(r, Rat(0));
    case RingKind::Cyclotomic: return Value(r, std::vector<Rat>{});
    case RingKind::FiniteField:
    case RingKind::ModularCyclotomic: return Value(r, std::vector<Int>{});
    case RingKind::PolyExt:
    case RingKind::Quotient: return Value(r, std::vector<Value>{});
    case RingKind::Product: {
        std::vector<Value> comps;
        comps.reserve(r->components.size());
        for (const auto& c : r->components) comps.push_back(ring_zero(c));
        return Value(r, std::move(comps));
    }
    }
    fail(ErrorKind::UnsupportedRing, "zero");
}

Value ring_one(const RingPtr& r) { return ring_from_int(r, 1); }

Value ring_from_int(const RingPtr& r, long v) { return ring_from_int(r, Int(v)); }

Value ring_from_int(const RingPtr& r, const Int& v) {
    switch (r->kind) {
    case RingKind::Rationals: return Value(r, Rat(v));
    case RingKind::Cyclotomic: {
        std::vector<Rat> c{Rat(v)};
        trim_rat(c);
        return Value(r, std::move(c));
    }
    case RingKind::FiniteField: {
        std::vector<Int> c{mod_pos(v, Int(r->ell))};
        trim_int(c);
        return Value(r, std::move(c));
    }
    case RingKind::ModularCyclotomic: {
        std::vector<Int> c{mod_pos(v, r->residue_modulus)};
        trim_int(c);
        return Value(r, std::move(c));
    }
    case RingKind::PolyExt:
    case RingKind::Quotient: {
        std::vector<Value> c{ring_from_int(r->kind == RingKind::PolyExt ? r->base : r->base->base, v)};
        trim_val(c);
        return Value(r, std::move(c));
    }
    case RingKind::Product: {
        std::vector<Value> comps;
        for (const auto& c : r->components) comps.push_back(ring_from_int(c, v));
        return Value(r, std::move(comps));
    }
    }
    fail(ErrorKind::UnsupportedRing, "from_int");
}

Value ring_from_rat(const RingPtr& r, const Rat& v) {
    if (r->kind == RingKind::Rationals) return make_rat_value(r, v);
    if (r->kind == RingKind::Cyclotomic) {
        std::vector<Rat> c{v};
        trim_rat(c);
        return Value(r, std::move(c));
    }
    Value num = ring_from_int(r, Int(v.get_num()));
    Value den = ring_from_int(r, Int(v.get_den()));
    return ring_mul(num, inverse(den));
}

namespace {

// coefficient ring of a PolyExt/Quotient element vector
RingPtr coeff_ring(const RingPtr& r) {
    return r->kind == RingKind::PolyExt ? r->base : r->base->base;
}

bool root_available(const RingPtr& r, long m, Value* out);

bool leaf_root(const RingPtr& r, long m, Value* out) {
    if (m == 1) {
        if (out) *out = ring_one(r);
        return true;
    }
    if (m == 2) {
        if (out) *out = ring_from_int(r, -1);
        return true;
    }
    switch (r->kind) {
    case RingKind::Rationals:
        return false;
    case RingKind::Cyclotomic: {
        if (r->m % m == 0) {
            if (out) {
                std::vector<Rat> x{Rat(0), Rat(1)};
                *out = ring_pow(make_cyclo_value(r, std::move(x)), r->m / m);
            }
            return true;
        }
        if (m % 2 == 0 && (m / 2) % 2 == 1 && r->m % (m / 2) == 0) {
            // zeta_{2k} = -zeta_k^{(k+1)/2} for odd k
            long k = m / 2;
            if (out) {
                Value zk;
                leaf_root(r, k, &zk);
                *out = ring_neg(ring_pow(zk, (k + 1) / 2));
            }
            return true;
        }
        return false;
    }
    case RingKind::FiniteField: {
        Int size = 1;
        for (long i = 0; i < r->r_deg; ++i) size *= r->ell;
        Int group = size - 1;
        if (!mpz_divisible_ui_p(group.get_mpz_t(), static_cast<unsigned long>(m))) return false;
        if (out) {
            Value g;
            if (r->r_deg == 1) {
                g = ring_from_int(r, smallest_primitive_root(r->ell));
            } else {
                g = make_ff_value(r, std::vector<Int>{Int(0), Int(1)});
            }
            Int e = group / m;
            Value acc = ring_one(r);
            Value base = g;
            Int k = e;
            while (k > 0) {
                if (mpz_odd_p(k.get_mpz_t())) acc = ring_mul(acc, base);
                base = ring_mul(base, base);
                k >>= 1;
            }
            *out = acc;
        }
        return true;
    }
    case RingKind::ModularCyclotomic: {
        if (r->m % m == 0) {
            if (out) {
                std::vector<Int> x{Int(0), Int(1)};
                *out = ring_pow(make_mc_value(r, std::move(x)), r->m / m);
            }
            return true;
        }
        if (m % 2 == 0 && (m / 2) % 2 == 1 && r->m % (m / 2) == 0) {
            long k = m / 2;
            if (out) {
                Value zk;
                leaf_root(r, k, &zk);
                *out = ring_neg(ring_pow(zk, (k + 1) / 2));
            }
            return true;
        }
        return false;
    }
    default:
        return false;
    }
}

bool root_available(const RingPtr& r, long m, Value* out) {
    switch (r->kind) {
    case RingKind::PolyExt:
    case RingKind::Quotient: {
        Value sub;
        if (!root_available(coeff_ring(r), m, out ? &sub : nullptr)) return false;
        if (out) {
            std::vector<Value> c{sub};
            trim_val(c);
            *out = Value(r, std::move(c));
        }
        return true;
    }
    case RingKind::Product: {
        std::vector<Value> comps;
        for (const auto& c : r->components) {
            Value sub;
            if (!root_available(c, m, out ? &sub : nullptr)) return false;
            if (out) comps.push_back(sub);
        }
        if (out) *out = Value(r, std::move(comps));
        return true;
    }
    default:
        return leaf_root(r, m, out);
    }
}

} // namespace

Value root_of_unity(const RingPtr& r, long m) {
    Value out;
    if (!root_available(r, m, &out))
        fail(ErrorKind::RootsUnavailable, "no primitive " + std::to_string(m) + "-th root of unity in " + r->signature);
    return out;
}

bool has_root_of_unity(const RingPtr& r, long m) { return root_available(r, m, nullptr); }

long max_cyclotomic_order(const RingPtr& r) {
    switch (r->kind) {
    case RingKind::Rationals: return 2;
    case RingKind::Cyclotomic:
    case RingKind::ModularCyclotomic: return (r->m % 2 == 0) ? r->m : 2 * r->m;
    case RingKind::FiniteField: {
        Int size = 1;
        for (long i = 0; i < r->r_deg; ++i) size *= r->ell;
        Int group = size - 1;
        if (!group.fits_slong_p()) fail(ErrorKind::UnsupportedRing, "field too large");
        return group.get_si();
    }
    case RingKind::PolyExt:
        return max_cyclotomic_order(r->base);
    case RingKind::Quotient:
        return max_cyclotomic_order(r->base->base);
    case RingKind::Product: {
        long g = 0;
        for (const auto& c : r->components) g = g == 0 ? max_cyclotomic_order(c) : gcd_long(g, max_cyclotomic_order(c));
        return g;
    }
    }
    return 1;
}

Value ring_variable(const RingPtr& r, const std::string& name) {
    switch (r->kind) {
    case RingKind::PolyExt: {
        if (r->var == name) {
            std::vector<Value> c{ring_zero(r->base), ring_one(r->base)};
            return make_polyext_value(r, std::move(c));
        }
        Value sub = ring_variable(r->base, name);
        std::vector<Value> c{sub};
        trim_val(c);
        return Value(r, std::move(c));
    }
    case RingKind::Quotient: {
        if (r->base->var == name) {
            std::vector<Value> c{ring_zero(r->base->base), ring_one(r->base->base)};
            return make_quotient_value(r, std::move(c));
        }
        Value sub = ring_variable(r->base->base, name);
        std::vector<Value> c{sub};
        trim_val(c);
        return Value(r, std::move(c));
    }
    default:
        fail(ErrorKind::ParseError, "unknown variable '" + name + "' in " + r->signature);
    }
}

Value ff_generator(const RingPtr& r) {
    if (r->kind != RingKind::FiniteField)
        fail(ErrorKind::UnsupportedRing, "ff_generator on " + r->signature);
    if (r->r_deg == 1) return ring_from_int(r, smallest_primitive_root(r->ell));
    return make_ff_value(r, std::vector<Int>{Int(0), Int(1)});
}

// --- arithmetic ------------------------------------------------------------------

Value ring_add(const Value& a, const Value& b) {
    require_same_ring(a, b, "add");
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals:
        return make_rat_value(r, std::get<Rat>(a.payload()) + std::get<Rat>(b.payload()));
    case RingKind::Cyclotomic: {
        const auto& x = rat_coeffs(a);
        const auto& y = rat_coeffs(b);
        std::vector<Rat> c(std::max(x.size(), y.size()), Rat(0));
        for (size_t i = 0; i < x.size(); ++i) c[i] += x[i];
        for (size_t i = 0; i < y.size(); ++i) c[i] += y[i];
        trim_rat(c);
        return Value(r, std::move(c));
    }
    case RingKind::FiniteField:
    case RingKind::ModularCyclotomic: {
        Int M = r->kind == RingKind::FiniteField ? Int(r->ell) : r->residue_modulus;
        const auto& x = int_coeffs(a);
        const auto& y = int_coeffs(b);
        std::vector<Int> c(std::max(x.size(), y.size()), Int(0));
        for (size_t i = 0; i < x.size(); ++i) c[i] += x[i];
        for (size_t i = 0; i < y.size(); ++i) c[i] = mod_pos(c[i] + y[i], M);
        for (Int& v : c) v = mod_pos(v, M);
        trim_int(c);
        return Value(r, std::move(c));
    }
    case RingKind::PolyExt:
    case RingKind::Quotient: {
        const auto& x = val_coeffs(a);
        const auto& y = val_coeffs(b);
        RingPtr inner = coeff_ring(r);
        std::vector<Value> c(std::max(x.size(), y.size()), ring_zero(inner));
        for (size_t i = 0; i < x.size(); ++i) c[i] = x[i];
        for (size_t i = 0; i < y.size(); ++i) c[i] = ring_add(c[i], y[i]);
        trim_val(c);
        return Value(r, std::move(c));
    }
    case RingKind::Product: {
        const auto& x = val_coeffs(a);
        const auto& y = val_coeffs(b);
        std::vector<Value> c;
        c.reserve(x.size());
        for (size_t i = 0; i < x.size(); ++i) c.push_back(ring_add(x[i], y[i]));
        return Value(r, std::move(c));
    }
    }
    fail(ErrorKind::UnsupportedRing, "add");
}

Value ring_neg(const Value& a) {
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals:
        return Value(r, -std::get<Rat>(a.payload()));
    case RingKind::Cyclotomic: {
        auto c = rat_coeffs(a);
        for (Rat& v : c) v = -v;
        return Value(r, std::move(c));
    }
    case RingKind::FiniteField:
    case RingKind::ModularCyclotomic: {
        Int M = r->kind == RingKind::FiniteField ? Int(r->ell) : r->residue_modulus;
        auto c = int_coeffs(a);
        for (Int& v : c) v = mod_pos(-v, M);
        trim_int(c);
        return Value(r, std::move(c));
    }
    case RingKind::PolyExt:
    case RingKind::Quotient: {
        auto c = val_coeffs(a);
        for (Value& v : c) v = ring_neg(v);
        return Value(r, std::move(c));
    }
    case RingKind::Product: {
        auto c = val_coeffs(a);
        for (Value& v : c) v = ring_neg(v);
        return Value(r, std::move(c));
    }
    }
    fail(ErrorKind::UnsupportedRing, "neg");
}

Value ring_sub(const Value& a, const Value& b) { return ring_add(a, ring_neg(b)); }

Value ring_mul(const Value& a, const Value& b) {
    require_same_ring(a, b, "mul");
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals:
        return make_rat_value(r, std::get<Rat>(a.payload()) * std::get<Rat>(b.payload()));
    case RingKind::Cyclotomic: {
        const auto& x = rat_coeffs(a);
        const auto& y = rat_coeffs(b);
        if (x.empty() || y.empty()) return ring_zero(r);
        std::vector<Rat> c(x.size() + y.size() - 1, Rat(0));
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < y.size(); ++j) {
                if (y[j] == 0) continue;
                c[i + j] += x[i] * y[j];
            }
        }
        return make_cyclo_value(r, std::move(c));
    }
    case RingKind::FiniteField:
    case RingKind::ModularCyclotomic: {
        Int M = r->kind == RingKind::FiniteField ? Int(r->ell) : r->residue_modulus;
        const auto& x = int_coeffs(a);
        const auto& y = int_coeffs(b);
        if (x.empty() || y.empty()) return ring_zero(r);
        std::vector<Int> c(x.size() + y.size() - 1, Int(0));
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < y.size(); ++j) c[i + j] = mod_pos(c[i + j] + x[i] * y[j], M);
        }
        if (r->kind == RingKind::FiniteField) return make_ff_value(r, std::move(c));
        return make_mc_value(r, std::move(c));
    }
    case RingKind::PolyExt:
    case RingKind::Quotient: {
        const auto& x = val_coeffs(a);
        const auto& y = val_coeffs(b);
        if (x.empty() || y.empty()) return ring_zero(r);
        RingPtr inner = coeff_ring(r);
        std::vector<Value> c(x.size() + y.size() - 1, ring_zero(inner));
        for (size_t i = 0; i < x.size(); ++i) {
            if (is_zero(x[i])) continue;
            for (size_t j = 0; j < y.size(); ++j) {
                if (is_zero(y[j])) continue;
                c[i + j] = ring_add(c[i + j], ring_mul(x[i], y[j]));
            }
        }
        if (r->kind == RingKind::PolyExt) return make_polyext_value(r, std::move(c));
        return make_quotient_value(r, std::move(c));
    }
    case RingKind::Product: {
        const auto& x = val_coeffs(a);
        const auto& y = val_coeffs(b);
        std::vector<Value> c;
        c.reserve(x.size());
        for (size_t i = 0; i < x.size(); ++i) c.push_back(ring_mul(x[i], y[i]));
        return Value(r, std::move(c));
    }
    }
    fail(ErrorKind::UnsupportedRing, "mul");
}

bool ring_eq(const Value& a, const Value& b) {
    require_same_ring(a, b, "eq");
    return a.payload() == b.payload();
}

bool is_zero(const Value& a) {
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals: return std::get<Rat>(a.payload()) == 0;
    case RingKind::Cyclotomic: return rat_coeffs(a).empty();
    case RingKind::FiniteField:
    case RingKind::ModularCyclotomic: return int_coeffs(a).empty();
    case RingKind::PolyExt:
    case RingKind::Quotient: return val_coeffs(a).empty();
    case RingKind::Product: {
        for (const Value& c : val_coeffs(a))
            if (!is_zero(c)) return false;
        return true;
    }
    }
    return false;
}

bool is_one(const Value& a) { return ring_eq(a, ring_one(a.ring())); }

Value ring_pow(const Value& a, long e) {
    if (e < 0) return ring_pow(inverse(a), -e);
    Value acc = ring_one(a.ring());
    Value base = a;
    long k = e;
    while (k > 0) {
        if (k & 1) acc = ring_mul(acc, base);
        base = ring_mul(base, base);
        k >>= 1;
    }
    return acc;
}

Value recanonicalize(const Value& a) {
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals: return make_rat_value(r, std::get<Rat>(a.payload()));
    case RingKind::Cyclotomic: return make_cyclo_value(r, rat_coeffs(a));
    case RingKind::FiniteField: return make_ff_value(r, int_coeffs(a));
    case RingKind::ModularCyclotomic: return make_mc_value(r, int_coeffs(a));
    case RingKind::PolyExt: {
        std::vector<Value> c;
        for (const Value& v : val_coeffs(a)) c.push_back(recanonicalize(v));
        return make_polyext_value(r, std::move(c));
    }
    case RingKind::Quotient: {
        std::vector<Value> c;
        for (const Value& v : val_coeffs(a)) c.push_back(recanonicalize(v));
        return make_quotient_value(r, std::move(c));
    }
    case RingKind::Product: {
        std::vector<Value> c;
        for (const Value& v : val_coeffs(a)) c.push_back(recanonicalize(v));
        return Value(r, std::move(c));
    }
    }
    return a;
}

// --- units / nilpotents -----------------------------------------------------------

bool is_nilpotent(const Value& a) {
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals:
    case RingKind::Cyclotomic:
    case RingKind::FiniteField:
        return is_zero(a);
    case RingKind::PolyExt: {
        for (const Value& c : val_coeffs(a))
            if (!is_nilpotent(c)) return false;
        return true;
    }
    case RingKind::Product: {
        for (const Value& c : val_coeffs(a))
            if (!is_nilpotent(c)) return false;
        return true;
    }
    case RingKind::ModularCyclotomic:
    case RingKind::Quotient: {
        long bound = nilpotency_bound(r);
        Value x = a;
        long reached = 1;
        while (true) {
            if (is_zero(x)) return true;
            if (reached >= bound) return false;
            x = ring_mul(x, x);
            reached *= 2;
        }
    }
    }
    return false;
}

bool is_unit(const Value& a) {
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals:
    case RingKind::Cyclotomic:
    case RingKind::FiniteField:
        return !is_zero(a);
    case RingKind::ModularCyclotomic: {
        auto g = intpoly_xgcd_mod(int_coeffs(a), r->phi_mod, Int(r->ell));
        return g.g.size() == 1;
    }
    case RingKind::PolyExt: {
        const auto& c = val_coeffs(a);
        if (c.empty()) return false;
        if (!is_unit(c[0])) return false;
        for (size_t i = 1; i < c.size(); ++i)
            if (!is_nilpotent(c[i])) return false;
        return true;
    }
    case RingKind::Quotient: {
        if (!is_field(r->base->base))
            fail(ErrorKind::UnsupportedRing,
                 "unit test in a quotient requires a field coefficient ring, got " + r->base->base->signature);
        if (is_zero(a)) return false;
        auto g = vpoly_xgcd(val_coeffs(a), r->quot_modulus, r->base->base);
        return g.g.size() == 1;
    }
    case RingKind::Product: {
        for (const Value& c : val_coeffs(a))
            if (!is_unit(c)) return false;
        return true;
    }
    }
    return false;
}

Value inverse(const Value& a) {
    const RingPtr& r = a.ring();
    if (!is_unit(a)) fail(ErrorKind::NotAUnit, "value " + to_string(a) + " is not a unit in " + r->signature);
    switch (r->kind) {
    case RingKind::Rationals:
        return Value(r, Rat(1) / std::get<Rat>(a.payload()));
    case RingKind::Cyclotomic: {
        auto x = ratpoly_xgcd(rat_coeffs(a), r->phi_rat);
        // g is a nonzero constant; scale s by its inverse
        Rat scale = 1 / x.g[0];
        std::vector<Rat> s = x.s;
        for (Rat& c : s) c *= scale;
        return make_cyclo_value(r, std::move(s));
    }
    case RingKind::FiniteField: {
        std::vector<Int> f(r->ff_poly.begin(), r->ff_poly.end());
        auto x = intpoly_xgcd_mod(int_coeffs(a), f, Int(r->ell));
        Int inv0;
        if (mpz_invert(inv0.get_mpz_t(), x.g[0].get_mpz_t(), Int(r->ell).get_mpz_t()) == 0)
            fail(ErrorKind::NotAUnit, "finite field inverse");
        std::vector<Int> s = x.s;
        for (Int& c : s) c = mod_pos(c * inv0, Int(r->ell));
        return make_ff_value(r, std::move(s));
    }
    case RingKind::ModularCyclotomic: {
        // invert mod ell, then Hensel-lift through ell^n
        auto x = intpoly_xgcd_mod(int_coeffs(a), r->phi_mod, Int(r->ell));
        Int inv0;
        if (mpz_invert(inv0.get_mpz_t(), x.g[0].get_mpz_t(), Int(r->ell).get_mpz_t()) == 0)
            fail(ErrorKind::NotAUnit, "modular cyclotomic inverse");
        std::vector<Int> s = x.s;
        for (Int& c : s) c = mod_pos(c * inv0, r->residue_modulus);
        Value b = make_mc_value(r, std::move(s));
        Value two = ring_from_int(r, 2);
        for (long it = 0; it < r->n_exp + 2; ++it) {
            Value ab = ring_mul(a, b);
            if (is_one(ab)) return b;
            b = ring_mul(b, ring_sub(two, ab));
        }
        if (!is_one(ring_mul(a, b))) fail(ErrorKind::NotAUnit, "Hensel lift did not converge");
        return b;
    }
    case RingKind::PolyExt: {
        const auto& c = val_coeffs(a);
        Value inv0 = inverse(c[0]);
        std::vector<Value> lift{inv0};
        trim_val(lift);
        Value inv0_lift(r, std::move(lift));
        // a = a0 (1 + u) with u nilpotent; invert the geometric series
        Value u = ring_sub(ring_mul(inv0_lift, a), ring_one(r));
        Value term = ring_one(r);
        Value sum = ring_one(r);
        for (long it = 0; it < 4096; ++it) {
            term = ring_mul(term, ring_neg(u));
            if (is_zero(term)) break;
            sum = ring_add(sum, term);
        }
        Value result = ring_mul(inv0_lift, sum);
        if (!is_one(ring_mul(a, result))) fail(ErrorKind::NotAUnit, "polynomial inverse did not terminate");
        return result;
    }
    case RingKind::Quotient: {
        auto x = vpoly_xgcd(val_coeffs(a), r->quot_modulus, r->base->base);
        Value scale = inverse(x.g[0]);
        std::vector<Value> s = x.s;
        for (Value& c : s) c = ring_mul(c, scale);
        return make_quotient_value(r, std::move(s));
    }
    case RingKind::Product: {
        std::vector<Value> comps;
        for (const Value& c : val_coeffs(a)) comps.push_back(inverse(c));
        return Value(r, std::move(comps));
    }
    }
    fail(ErrorKind::UnsupportedRing, "inverse");
}

// --- operators --------------------------------------------------------------------

Value Value::operator+(const Value& other) const { return ring_add(*this, other); }
Value Value::operator-(const Value& other) const { return ring_sub(*this, other); }
Value Value::operator*(const Value& other) const { return ring_mul(*this, other); }
Value Value::operator-() const { return ring_neg(*this); }
bool Value::operator==(const Value& other) const { return ring_eq(*this, other); }

// --- payload access -----------------------------------------------------------------

const Rat& value_rat(const Value& v) { return std::get<Rat>(v.payload()); }
const std::vector<Rat>& value_rat_coeffs(const Value& v) { return std::get<std::vector<Rat>>(v.payload()); }
const std::vector<Int>& value_int_coeffs(const Value& v) { return std::get<std::vector<Int>>(v.payload()); }
const std::vector<Value>& value_coeffs(const Value& v) { return std::get<std::vector<Value>>(v.payload()); }

Value value_from_coeffs(const RingPtr& r, std::vector<Value> coeffs) {
    switch (r->kind) {
    case RingKind::PolyExt:
        return make_polyext_value(r, std::move(coeffs));
    case RingKind::Quotient:
        return make_quotient_value(r, std::move(coeffs));
    case RingKind::Product:
        if (coeffs.size() != r->components.size())
            fail(ErrorKind::DescriptorMismatch, "product component count");
        return Value(r, std::move(coeffs));
    default:
        fail(ErrorKind::UnsupportedRing, "value_from_coeffs on leaf ring");
    }
}

// --- printing ---------------------------------------------------------------------

namespace {

bool needs_parens(const std::string& s) { return s.find(' ') != std::string::npos; }

std::string poly_print(const std::vector<std::string>& coeffs, const std::vector<bool>& negated,
                       const std::string& sym) {
    // coeffs[i] printed against sym^i; empty string means zero
    std::string out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].empty()) continue;
        std::string term;
        std::string c = coeffs[i];
        bool neg = negated[i];
        if (i == 0) {
            term = c;
        } else {
            std::string mono = sym + (i == 1 ? "" : "^" + std::to_string(i));
            if (c == "1")
                term = mono;
            else
                term = (needs_parens(c) ? "(" + c + ")" : c) + "*" + mono;
        }
        if (out.empty()) {
            out = (neg ? "-" : "") + term;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out.empty() ? "0" : out;
}

std::string print_value(const Value& a);

std::string print_rat_abs(const Rat& r) {
    Rat x = r < 0 ? Rat(-r) : r;
    return x.get_str();
}

std::string print_leaf_poly_rat(const std::vector<Rat>& c, const std::string& sym) {
    std::vector<std::string> parts(c.size());
    std::vector<bool> neg(c.size(), false);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        neg[i] = c[i] < 0;
        parts[i] = print_rat_abs(c[i]);
    }
    return poly_print(parts, neg, sym);
}

std::string print_leaf_poly_int(const std::vector<Int>& c, const std::string& sym) {
    std::vector<std::string> parts(c.size());
    std::vector<bool> neg(c.size(), false);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        parts[i] = c[i].get_str();
    }
    return poly_print(parts, neg, sym);
}

std::string print_value(const Value& a) {
    const RingPtr& r = a.ring();
    switch (r->kind) {
    case RingKind::Rationals:
        return std::get<Rat>(a.payload()).get_str();
    case RingKind::Cyclotomic:
        return print_leaf_poly_rat(rat_coeffs(a), "z" + std::to_string(r->m));
    case RingKind::FiniteField:
        if (r->r_deg == 1) {
            const auto& c = int_coeffs(a);
            return c.empty() ? "0" : c[0].get_str();
        }
        return print_leaf_poly_int(int_coeffs(a), "g");
    case RingKind::ModularCyclotomic:
        return print_leaf_poly_int(int_coeffs(a), "z" + std::to_string(r->m));
    case RingKind::PolyExt:
    case RingKind::Quotient: {
        const auto& c = val_coeffs(a);
        std::vector<std::string> parts(c.size());
        std::vector<bool> neg(c.size(), false);
        for (size_t i = 0; i < c.size(); ++i) {
            if (is_zero(c[i])) continue;
            parts[i] = print_value(c[i]);
        }
        const std::string& sym = r->kind == RingKind::PolyExt ? r->var : r->base->var;
        return poly_print(parts, neg, sym);
    }
    case RingKind::Product: {
        std::string out = "(";
        const auto& c = val_coeffs(a);
        for (size_t i = 0; i < c.size(); ++i) out += (i ? "; " : "") + print_value(c[i]);
        return out + ")";
    }
    }
    return "?";
}

} // namespace

std::string to_string(const Value& a) { return print_value(a); }

std::string ring_to_string(const RingPtr& r) { return r->signature; }

} // namespace weilgamma
