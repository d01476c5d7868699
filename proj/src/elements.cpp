#include "weilgamma/elements.hpp"

#include "weilgamma/errors.hpp"

#include <cctype>

namespace weilgamma {

namespace {

struct Parser {
    const RingPtr& ring;
    const std::string& text;
    size_t pos = 0;
    bool allow_x;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            fail(ErrorKind::ParseError,
                 std::string("expected '") + c + "' at offset " + std::to_string(pos) + " in '" + text + "'");
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    long parse_signed_int() {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail(ErrorKind::ParseError, "expected integer exponent in '" + text + "'");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return neg ? -v : v;
    }

    SFraction parse_expr() {
        SFraction acc = parse_term();
        while (true) {
            if (accept('+'))
                acc = frac_add(acc, parse_term());
            else if (accept('-'))
                acc = frac_sub(acc, parse_term());
            else
                return acc;
        }
    }

    SFraction parse_term() {
        SFraction acc = parse_unary();
        while (true) {
            if (accept('*'))
                acc = frac_mul(acc, parse_unary());
            else if (accept('/'))
                acc = frac_mul(acc, frac_invert(parse_unary()));
            else
                return acc;
        }
    }

    SFraction parse_unary() {
        if (accept('-')) return frac_neg(parse_unary());
        return parse_power();
    }

    SFraction parse_power() {
        SFraction base = parse_atom();
        if (accept('^')) {
            long e = parse_signed_int();
            SFraction acc = frac_one(ring);
            SFraction b = e < 0 ? frac_invert(base) : base;
            long k = e < 0 ? -e : e;
            for (long i = 0; i < k; ++i) acc = frac_mul(acc, b);
            return acc;
        }
        return base;
    }

    SFraction parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail(ErrorKind::ParseError, "unexpected end of '" + text + "'");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            SFraction inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            Int v(text.substr(start, pos - start));
            return frac_from_value(ring_from_int(ring, v));
        }
        if (c == 'z' && pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
            ++pos;
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            long m = std::stol(text.substr(start, pos - start));
            return frac_from_value(root_of_unity(ring, m));
        }
        if (c == 'X') {
            if (!allow_x)
                fail(ErrorKind::ParseError, "X is reserved for Laurent polynomials ('" + text + "')");
            ++pos;
            return frac_from_laurent(lp_x(ring));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "g") {
                RingPtr leaf = ring;
                while (leaf->kind == RingKind::PolyExt || leaf->kind == RingKind::Quotient)
                    leaf = leaf->kind == RingKind::PolyExt ? leaf->base : leaf->base->base;
                if (leaf->kind != RingKind::FiniteField)
                    fail(ErrorKind::ParseError, "'g' requires a finite-field coefficient ring");
                Value gen = Hom::const_lift(leaf, ring)(ff_generator(leaf));
                return frac_from_value(gen);
            }
            return frac_from_value(ring_variable(ring, name));
        }
        fail(ErrorKind::ParseError,
             std::string("unexpected character '") + c + "' at offset " + std::to_string(pos) + " in '" + text + "'");
    }
};

SFraction parse_impl(const RingPtr& ring, const std::string& text, bool allow_x) {
    Parser p{ring, text, 0, allow_x};
    SFraction out = p.parse_expr();
    if (!p.at_end())
        fail(ErrorKind::ParseError,
             "trailing input at offset " + std::to_string(p.pos) + " in '" + text + "'");
    return out;
}

} // namespace

SFraction parse_fraction(const RingPtr& ring, const std::string& text) {
    return parse_impl(ring, text, true);
}

LaurentPoly parse_laurent(const RingPtr& ring, const std::string& text) {
    SFraction f = parse_impl(ring, text, true);
    if (f.den.coeffs.size() != 1 || f.den.min_exp != 0)
        fail(ErrorKind::ParseError, "expected a Laurent polynomial, got a genuine fraction: " + text);
    return lp_scale(f.num, inverse(f.den.coeffs[0]));
}

Value parse_element(const RingPtr& ring, const std::string& text) {
    SFraction f = parse_impl(ring, text, false);
    if (f.den.coeffs.size() != 1 || f.den.min_exp != 0)
        fail(ErrorKind::ParseError, "expected a ring element, got a fraction: " + text);
    Value deninv = inverse(f.den.coeffs[0]);
    if (lp_is_zero(f.num)) return ring_zero(ring);
    if (f.num.coeffs.size() != 1 || f.num.min_exp != 0)
        fail(ErrorKind::ParseError, "expected a ring element, got a polynomial in X: " + text);
    return ring_mul(f.num.coeffs[0], deninv);
}

} // namespace weilgamma
