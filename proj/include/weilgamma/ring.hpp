#pragma once

#include "weilgamma/numutil.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace weilgamma {

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

enum class RingKind {
    Rationals,         // Q
    Cyclotomic,        // Q[x]/Phi_m(x)
    FiniteField,       // F_{ell^r}, fixed primitive defining polynomial
    ModularCyclotomic, // (Z[x]/Phi_m(x)) / ell^n
    PolyExt,           // base[var]
    Quotient,          // base[var]/(f), base a PolyExt, f monic in var
    Product,           // componentwise
};

// An element of a ring in the tower. Values are immutable and kept in
// canonical reduced form, so equality is coefficient-wise comparison.
class Value {
public:
    using Payload = std::variant<Rat,                 // Rationals
                                 std::vector<Rat>,    // Cyclotomic (power basis, trimmed)
                                 std::vector<Int>,    // FiniteField / ModularCyclotomic (residues, trimmed)
                                 std::vector<Value>>; // PolyExt / Quotient (coefficients, trimmed), Product (components)

    Value() = default;
    Value(RingPtr ring, Payload payload) : ring_(std::move(ring)), payload_(std::move(payload)) {}

    const RingPtr& ring() const { return ring_; }
    const Payload& payload() const { return payload_; }

    Value operator+(const Value& other) const;
    Value operator-(const Value& other) const;
    Value operator*(const Value& other) const;
    Value operator-() const;
    bool operator==(const Value& other) const;
    bool operator!=(const Value& other) const { return !(*this == other); }

private:
    RingPtr ring_;
    Payload payload_;
};

struct Ring {
    RingKind kind = RingKind::Rationals;

    // Cyclotomic / ModularCyclotomic
    long m = 0;

    // FiniteField / ModularCyclotomic
    long ell = 0;
    long n_exp = 0; // ModularCyclotomic exponent n
    long r_deg = 0; // FiniteField extension degree r
    Int residue_modulus; // ModularCyclotomic: ell^n

    // cached reduction data
    std::vector<Int> phi_mod;       // Cyclotomic/ModularCyclotomic: Phi_m (constant first)
    std::vector<Rat> phi_rat;       // Cyclotomic: Phi_m lifted to Q
    std::vector<long> ff_poly;      // FiniteField: defining polynomial mod ell

    // PolyExt / Quotient
    RingPtr base;
    std::string var;
    std::vector<Value> quot_modulus; // Quotient: monic modulus, coefficients over base->base

    // Product
    std::vector<RingPtr> components;

    // structural identity key; equal signatures mean equal descriptors
    std::string signature;
};

// --- descriptor constructors -------------------------------------------------

RingPtr make_rationals();
RingPtr make_cyclotomic(long m); // m normalized so that m != 2 mod 4
RingPtr make_finite_field(long ell, long r);
RingPtr make_modular_cyclotomic(long m, long ell, long n);
RingPtr make_poly_ext(RingPtr base, const std::string& var);
// base must be a PolyExt; modulus an element of base, monic in base->var
RingPtr make_quotient(RingPtr base, const Value& modulus);
RingPtr make_product(std::vector<RingPtr> components);

bool ring_equal(const RingPtr& a, const RingPtr& b);

// --- structural predicates ---------------------------------------------------

bool is_field(const RingPtr& r);          // Q, cyclotomic, finite field
bool is_char_zero(const RingPtr& r);
bool is_integral_domain_shape(const RingPtr& r); // provable from the descriptor alone
// residue characteristics of all leaves (0 excluded), sorted unique
std::vector<long> residue_characteristics(const RingPtr& r);
// characteristic-zero, ell-torsion-free, no nilpotents: valid family base
bool is_family_base(const RingPtr& r);

// --- element construction ----------------------------------------------------

Value ring_zero(const RingPtr& r);
Value ring_one(const RingPtr& r);
Value ring_from_int(const RingPtr& r, long v);
Value ring_from_int(const RingPtr& r, const Int& v);
Value ring_from_rat(const RingPtr& r, const Rat& v); // denominator must be a unit

// The distinguished primitive m-th root of unity of the ring, if present.
// Throws RootsUnavailable otherwise.
Value root_of_unity(const RingPtr& r, long m);
bool has_root_of_unity(const RingPtr& r, long m);

// Largest N such that the ring contains the distinguished mu_N; used to pick
// cyclotomic enlargements. (For finite fields this is ell^r - 1.)
long max_cyclotomic_order(const RingPtr& r);

// For PolyExt: the variable as a value. Throws if var unknown in the tower.
Value ring_variable(const RingPtr& r, const std::string& name);

// The distinguished generator of a finite field's multiplicative group
// (the class of x for r > 1, the smallest primitive root for r = 1).
Value ff_generator(const RingPtr& r);

// --- arithmetic --------------------------------------------------------------

Value ring_add(const Value& a, const Value& b);
Value ring_sub(const Value& a, const Value& b);
Value ring_mul(const Value& a, const Value& b);
Value ring_neg(const Value& a);
bool ring_eq(const Value& a, const Value& b);
bool is_zero(const Value& a);
bool is_one(const Value& a);
Value ring_pow(const Value& a, long e); // e < 0 uses inverse()

// Rebuilds the canonical form of a value from its raw payload (identity on
// well-formed values; exposed so the invariant can be tested).
Value recanonicalize(const Value& a);

// --- units and nilpotents ----------------------------------------------------

bool is_unit(const Value& a);
Value inverse(const Value& a); // throws NotAUnit
bool is_nilpotent(const Value& a);

// --- payload access ------------------------------------------------------------

const Rat& value_rat(const Value& v);                      // Rationals
const std::vector<Rat>& value_rat_coeffs(const Value& v);  // Cyclotomic
const std::vector<Int>& value_int_coeffs(const Value& v);  // FiniteField / ModularCyclotomic
const std::vector<Value>& value_coeffs(const Value& v);    // PolyExt / Quotient / Product

// Builds the canonical element of a PolyExt/Quotient/Product ring from raw
// coefficient (or component) data.
Value value_from_coeffs(const RingPtr& r, std::vector<Value> coeffs);

// --- printing ----------------------------------------------------------------

// Element syntax: integers, z<m>^<k>, the finite-field generator g, variable
// names, + - * / and parentheses.
std::string to_string(const Value& a);
std::string ring_to_string(const RingPtr& r);

} // namespace weilgamma
