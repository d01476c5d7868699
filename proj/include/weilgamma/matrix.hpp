#pragma once

#include "weilgamma/hom.hpp"
#include "weilgamma/ring.hpp"

namespace weilgamma {

// Dense matrix over a ring of the tower. Determinants and adjugate inverses
// use only ring operations, so they work over every ring in the tower.
struct Matrix {
    RingPtr ring;
    long rows = 0;
    long cols = 0;
    std::vector<Value> a; // row-major

    const Value& at(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }
    Value& at(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
};

Matrix mat_zero(const RingPtr& r, long rows, long cols);
Matrix mat_identity(const RingPtr& r, long n);
Matrix mat_from(const RingPtr& r, long rows, long cols, std::vector<Value> entries);
Matrix mat_scalar(const RingPtr& r, long n, const Value& c);

Matrix mat_add(const Matrix& x, const Matrix& y);
Matrix mat_sub(const Matrix& x, const Matrix& y);
Matrix mat_mul(const Matrix& x, const Matrix& y);
Matrix mat_neg(const Matrix& x);
Matrix mat_scale(const Matrix& x, const Value& c);
Matrix mat_transpose(const Matrix& x);
Matrix mat_pow(const Matrix& x, long e); // e >= 0
bool mat_eq(const Matrix& x, const Matrix& y);
bool mat_is_zero(const Matrix& x);
bool mat_is_identity(const Matrix& x);

Value mat_trace(const Matrix& x);
Value mat_det(const Matrix& x);
Matrix mat_adjugate(const Matrix& x);
Matrix mat_inverse(const Matrix& x); // throws NotAUnit when det is not a unit
bool mat_is_invertible(const Matrix& x);

Matrix mat_block_diag(const Matrix& x, const Matrix& y);
Matrix mat_specialize(const Hom& f, const Matrix& x);

// --- linear algebra over fields ------------------------------------------------

// Columns form a basis of ker(M); requires a field coefficient ring.
Matrix field_kernel_basis(const Matrix& M);
long field_rank(const Matrix& M);
// Solves M * X = B exactly; throws RelationViolated when inconsistent.
Matrix field_solve(const Matrix& M, const Matrix& B);
// For B with full column rank and an operator A with A*colspace(B) inside
// colspace(B): the restricted operator C with A*B = B*C.
Matrix field_restrict(const Matrix& A, const Matrix& B);

// --- generic subset-DP determinant ----------------------------------------------

// Laplace expansion sharing minors across column subsets; O(2^n n) ring ops.
template <class T, class Ops, class EntryFn>
T det_generic(long n, EntryFn entry, const Ops& ops) {
    if (n == 0) return ops.one();
    if (n > 16) throw std::length_error("det_generic dimension too large");
    size_t full = (size_t(1) << n) - 1;
    std::vector<T> dp(full + 1, ops.zero());
    dp[0] = ops.one();
    for (size_t mask = 1; mask <= full; ++mask) {
        int row = __builtin_popcountll(mask) - 1;
        T acc = ops.zero();
        bool plus = row % 2 == 0; // expansion along the last row of the submatrix
        for (long j = 0; j < n; ++j) {
            if (!(mask & (size_t(1) << j))) continue;
            const T& sub = dp[mask ^ (size_t(1) << j)];
            if (!ops.is_zero(sub)) {
                T e = entry(row, j);
                if (!ops.is_zero(e)) {
                    T term = ops.mul(e, sub);
                    acc = plus ? ops.add(acc, term) : ops.sub(acc, term);
                }
            }
            plus = !plus;
        }
        dp[mask] = std::move(acc);
    }
    return dp[full];
}

struct ValueOps {
    RingPtr ring;
    Value zero() const { return ring_zero(ring); }
    Value one() const { return ring_one(ring); }
    Value add(const Value& a, const Value& b) const { return ring_add(a, b); }
    Value sub(const Value& a, const Value& b) const { return ring_sub(a, b); }
    Value mul(const Value& a, const Value& b) const { return ring_mul(a, b); }
    bool is_zero(const Value& a) const { return weilgamma::is_zero(a); }
};

} // namespace weilgamma
