#include "weilgamma/vpoly.hpp"

#include "weilgamma/errors.hpp"

namespace weilgamma {

void vp_trim(VPoly& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

VPoly vp_add(const RingPtr& r, const VPoly& a, const VPoly& b) {
    VPoly c(std::max(a.size(), b.size()), ring_zero(r));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = ring_add(c[i], b[i]);
    vp_trim(c);
    return c;
}

VPoly vp_sub(const RingPtr& r, const VPoly& a, const VPoly& b) {
    VPoly c(std::max(a.size(), b.size()), ring_zero(r));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = ring_sub(c[i], b[i]);
    vp_trim(c);
    return c;
}

VPoly vp_mul(const RingPtr& r, const VPoly& a, const VPoly& b) {
    if (a.empty() || b.empty()) return {};
    VPoly c(a.size() + b.size() - 1, ring_zero(r));
    for (size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (is_zero(b[j])) continue;
            c[i + j] = ring_add(c[i + j], ring_mul(a[i], b[j]));
        }
    }
    vp_trim(c);
    return c;
}

VPoly vp_scale(const VPoly& a, const Value& c) {
    VPoly out = a;
    for (Value& v : out) v = ring_mul(v, c);
    vp_trim(out);
    return out;
}

VPoly vp_derivative(const RingPtr& r, const VPoly& a) {
    if (a.size() <= 1) return {};
    VPoly d(a.size() - 1, ring_zero(r));
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = ring_mul(a[i], ring_from_int(r, static_cast<long>(i)));
    vp_trim(d);
    return d;
}

void vp_divmod(const RingPtr& r, const VPoly& a, const VPoly& b, VPoly& quot, VPoly& rem) {
    if (b.empty()) fail(ErrorKind::UnsupportedRing, "polynomial division by zero");
    rem = a;
    vp_trim(rem);
    quot.clear();
    if (rem.size() < b.size()) return;
    quot.assign(rem.size() - b.size() + 1, ring_zero(r));
    Value lead_inv = inverse(b.back());
    for (size_t i = rem.size(); i-- > b.size() - 1;) {
        Value c = ring_mul(rem[i], lead_inv);
        if (is_zero(c)) continue;
        quot[i - (b.size() - 1)] = c;
        for (size_t j = 0; j < b.size(); ++j)
            rem[i - (b.size() - 1) + j] = ring_sub(rem[i - (b.size() - 1) + j], ring_mul(c, b[j]));
    }
    vp_trim(rem);
}

VPoly vp_gcd(const RingPtr& r, VPoly a, VPoly b) {
    vp_trim(a);
    vp_trim(b);
    while (!b.empty()) {
        VPoly q, rem;
        vp_divmod(r, a, b, q, rem);
        a = std::move(b);
        b = std::move(rem);
    }
    if (!a.empty()) a = vp_scale(a, inverse(a.back()));
    return a;
}

Value vp_eval(const RingPtr& r, const VPoly& p, const Value& x) {
    Value acc = ring_zero(r);
    for (size_t i = p.size(); i-- > 0;) acc = ring_add(ring_mul(acc, x), p[i]);
    return acc;
}

Matrix vp_eval_matrix(const VPoly& p, const Matrix& x) {
    Matrix acc = mat_zero(x.ring, x.rows, x.cols);
    for (size_t i = p.size(); i-- > 0;)
        acc = mat_add(mat_mul(acc, x), mat_scalar(x.ring, x.rows, p[i]));
    return acc;
}

namespace {

// polynomials as scalars for the generic determinant
struct PolyOpsT {
    RingPtr ring;
    VPoly zero() const { return {}; }
    VPoly one() const { return {ring_one(ring)}; }
    VPoly add(const VPoly& a, const VPoly& b) const { return vp_add(ring, a, b); }
    VPoly sub(const VPoly& a, const VPoly& b) const { return vp_sub(ring, a, b); }
    VPoly mul(const VPoly& a, const VPoly& b) const { return vp_mul(ring, a, b); }
    bool is_zero(const VPoly& a) const { return a.empty(); }
};

} // namespace

VPoly charpoly_monic(const Matrix& m) {
    if (m.rows != m.cols) fail(ErrorKind::DescriptorMismatch, "charpoly of non-square matrix");
    PolyOpsT ops{m.ring};
    VPoly result = det_generic<VPoly>(
        m.rows,
        [&](long i, long j) -> VPoly {
            VPoly e;
            if (i == j) {
                e = {ring_neg(m.at(i, j)), ring_one(m.ring)};
                vp_trim(e);
            } else if (!is_zero(m.at(i, j))) {
                e = {ring_neg(m.at(i, j))};
            }
            return e;
        },
        ops);
    if (result.empty()) result = {};
    return result;
}

} // namespace weilgamma
